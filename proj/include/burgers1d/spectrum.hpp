#pragma once

#include <functional>

#include "burgers1d/asymptotics.hpp"
#include "burgers1d/core.hpp"
#include "burgers1d/discretization.hpp"

namespace burgers1d {

// ---------------------------------------------------------------------------
// Linearization around the equilibrium U:
//   eps Phi'' - (U Phi)' + lambda Phi = 0,   Phi(+-1) = 0.
// The transformation phi = exp(-eps^{-1} int_0^x U) Phi gives
//   eps phi'' + U phi' + lambda phi = 0,
// which is self-adjoint with weight p(x) = exp(eps^{-1} int_0^x U):
//   -eps (p phi')' = lambda p phi.
// Discretized in flux form and symmetrized by diag(sqrt(p)), the eigenvalues
// are those of a symmetric tridiagonal matrix, solved by Sturm bisection.
// Eigenfunctions of the Phi-problem are recovered as Phi = p phi = sqrt(p) psi.
// ---------------------------------------------------------------------------

/// Below this eps the principal eigenvalue drowns in eigenvalue roundoff at
/// practical grid sizes; computations refuse unless explicitly overridden.
inline constexpr double kEpsPrecisionFloor = 0.05;

/// Weight from the closed-form antiderivative of the composite profile:
/// p(x) = [cosh(alpha k / 2) / cosh(theta(x))]^2, normalized so p = 1 where
/// the antiderivative is taken from (x = 0).
Field symmetrization_weight(const CompositeProfile& p, const Grid& g);

/// Weight from a sampled equilibrium (trapezoid antiderivative, normalized to
/// p = 1 at the node nearest x = 0). Used when linearizing about the Newton
/// steady state.
Field symmetrization_weight_from_state(const Field& u, double eps);

/// Weight exp(-x^2 / (2 eps)) of the turning-point comparison problem
/// eps phi'' - x phi' + lambda phi = 0.
Field turning_point_weight(double eps, const Grid& g);

/// Symmetric tridiagonal operator on the interior nodes (dimension n-2):
///   A_{i,i+-1} = -(eps/dx^2) p_{i+-1/2} / sqrt(p_i p_{i+-1})
///   A_{i,i}    =  (eps/dx^2) (p_{i-1/2} + p_{i+1/2}) / p_i
/// with half-node weights p_{i+1/2} = sqrt(p_i p_{i+1}).
TriDiag build_symmetric_operator(const Field& p_weight, double eps);

/// m smallest eigenvalues of a symmetric tridiagonal matrix, ascending,
/// by bisection on Sturm sequence sign counts.
std::vector<double> eigen_smallest(const TriDiag& A, int m);

struct EigenPairs {
    std::vector<double> values;                 // ascending
    std::vector<std::vector<double>> vectors;   // unit 2-norm, one per value
};

/// Eigenvalues by bisection plus eigenvectors by shifted inverse iteration.
EigenPairs eigen_smallest_pairs(const TriDiag& A, int m);

enum class EquilibriumSource {
    composite,      // closed-form profile (default)
    newton_steady,  // finite-difference steady solution on the same grid
};

struct SpectrumResult {
    std::vector<double> eigenvalues;   // ascending
    std::vector<Field> eigenfunctions; // Phi-problem eigenfunctions, unit l2_norm
    Field weight;                      // symmetrization weight p
    double eps = 0.0;
};

SpectrumResult linearized_spectrum(const CompositeProfile& p, const Grid& g, int m,
                                   EquilibriumSource source = EquilibriumSource::composite,
                                   bool allow_small_eps = false);

/// Eigenvalues of the turning-point model problem on g.
std::vector<double> turning_point_model(double eps, const Grid& g, int m,
                                        bool allow_small_eps = false);

struct SweepRow {
    double eps = 0.0;
    std::vector<double> lambdas;  // empty when status != "ok"
    std::string status = "ok";
};

struct SweepResult {
    std::vector<SweepRow> rows;
    LineFit fit;            // ln(lambda1) against 1/eps over the ok rows
    bool fit_valid = false;
    std::string note;       // "NotEnoughPoints" when the fit was skipped
};

/// Per-eps eigenvalues of the linearized problem; rows are independent and
/// may run on up to `jobs` threads. Results are merged in input order.
SweepResult metastability_sweep(double alpha, std::span<const double> eps_list, int m,
                                int jobs = 1, bool allow_small_eps = false,
                                const std::function<int(double)>& n_rule = {});

/// Sweep of the turning-point model with the same fit.
SweepResult turning_point_sweep(std::span<const double> eps_list, int m,
                                bool allow_small_eps = false,
                                const std::function<int(double)>& n_rule = {});

}  // namespace burgers1d
