#pragma once

#include "burgers1d/core.hpp"

namespace burgers1d {

// ---------------------------------------------------------------------------
// Second-order finite differences for the stationary equation
//   eps u'' - u u' = 0,  u(a) = alpha, u(b) = beta,
// solved by damped Newton with a tridiagonal direct solve per step.
// Boundary conditions are kept as algebraic identity rows so the Jacobian
// stays uniformly tridiagonal.
// ---------------------------------------------------------------------------

struct TriDiag {
    TriDiag() = default;
    explicit TriDiag(int n)
        : lower(static_cast<std::size_t>(n > 0 ? n - 1 : 0), 0.0),
          diag(static_cast<std::size_t>(n), 0.0),
          upper(static_cast<std::size_t>(n > 0 ? n - 1 : 0), 0.0) {}

    std::vector<double> lower;  // n-1
    std::vector<double> diag;   // n
    std::vector<double> upper;  // n-1

    int size() const { return static_cast<int>(diag.size()); }
};

/// Thomas elimination. No pivoting; throws SingularJacobian on a vanishing
/// pivot. Fine for the diagonally dominant systems built here.
std::vector<double> solve_tridiag(const TriDiag& A, std::vector<double> rhs);

/// Interior rows: eps (u_{i-1} - 2u_i + u_{i+1})/dx^2 - u_i (u_{i+1} - u_{i-1})/(2dx).
/// Boundary rows: u_0 - alpha, u_{n-1} - beta.
Field steady_residual(const Field& u, double eps, const BoundaryPair& bc);

/// Jacobian of steady_residual at u; boundary rows are identity.
TriDiag steady_jacobian(const Field& u, double eps);

struct SteadyResult {
    Field u;
    int iterations = 0;
    std::vector<double> residual_history;  // max-norm, starting from the initial guess
};

SteadyResult newton_solve_steady(double eps, const BoundaryPair& bc, const Field& u0,
                                 double tol = 1e-10, int max_iter = 25);

/// Default node count: max(401, ceil(16/eps) + 1), so that ~8 nodes span the
/// O(2 eps) layer width.
int default_resolution(double eps);

}  // namespace burgers1d
