#pragma once

#include <optional>

#include "burgers1d/asymptotics.hpp"
#include "burgers1d/core.hpp"
#include "burgers1d/discretization.hpp"

namespace burgers1d {

// ---------------------------------------------------------------------------
// Time integration of u_t + u u_x = eps u_xx with Dirichlet data, by the
// implicit trapezoidal rule with a per-step Newton solve. Unconditionally
// stable, second order; reuses the steady residual and Jacobian.
// ---------------------------------------------------------------------------

/// u0 = U + nu * phi. Requires |nu| <= 0.1 |alpha| (linear regime) and
/// phi(+-1) = 0, so the endpoint values are exactly the profile's.
Field perturbed_initial(const CompositeProfile& p, const Field& phi, double nu, const Grid& g);

/// One trapezoidal step of size dt. The Newton iteration solves the
/// dt-scaled update equation to tolerance max(1e-11 * dt, roundoff guard);
/// boundary rows are imposed exactly.
Field step_implicit(const Field& u, double dt, double eps, const BoundaryPair& bc);

struct Trajectory {
    std::vector<double> times;       // strictly ascending, starts at 0
    std::vector<double> deviations;  // ||u(t) - reference||_2 per sample
    double reference_norm = 0.0;     // ||reference||_2 (sets the fit noise floor)
    std::vector<double> snapshot_times;
    std::vector<Field> snapshots;    // present when requested
};

/// Thrown when a step fails mid-run; carries the samples collected so far.
class EvolveFailure : public NumericalError {
public:
    EvolveFailure(const std::string& what, Trajectory partial)
        : NumericalError(what), partial(std::move(partial)) {}
    Trajectory partial;
};

/// March u0 to t_end, sampling the deviation from `reference` every
/// sample_every steps (the final state is always sampled). When no reference
/// is given, the composite profile with alpha = bc.alpha, k = 0 is used.
Trajectory evolve(const Field& u0, double t_end, double dt, double eps, const BoundaryPair& bc,
                  int sample_every = 10, const std::optional<Field>& reference = std::nullopt,
                  bool keep_snapshots = false);

struct DecayFit {
    double lambda_est = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
};

/// Least-squares line on (t, ln deviation) over [0.2, 0.9] * t_end, using
/// only samples above the roundoff floor 1e3 * eps_machine * ||reference||.
DecayFit fit_decay(const Trajectory& tr);

struct BoundednessReport {
    bool passed = false;
    double max_norm_sq = 0.0;  // largest observed int u^2 dx over the snapshots
    double bound = 0.0;        // 8 alpha^2 + 2 M
};

/// Checks int u^2 dx < 8 alpha^2 + 2M for every snapshot.
BoundednessReport boundedness_check(const Trajectory& tr, const CompositeProfile& p, double nu,
                                    double M);

/// M = 4 nu^2 (sup |phi|)^2, the instantiated constant of the a-priori bound.
double bound_constant(const Field& phi, double nu);

}  // namespace burgers1d
