#include "burgers1d/evolution.hpp"

#include <cmath>
#include <limits>

namespace burgers1d {

Field perturbed_initial(const CompositeProfile& p, const Field& phi, double nu, const Grid& g) {
    if (phi.size() != g.n) throw ConfigError("perturbed_initial: phi lives on a different grid");
    if (std::abs(nu) > 0.1 * std::abs(p.alpha))
        throw ConfigError("perturbed_initial: |nu| exceeds the linear regime 0.1 |alpha|");
    if (phi[0] != 0.0 || phi[g.n - 1] != 0.0)
        throw ConfigError("perturbed_initial: perturbation must vanish at the endpoints");

    Field u0 = p.sample(g);
    for (int i = 0; i < g.n; ++i) u0[i] += nu * phi[i];
    return u0;
}

Field step_implicit(const Field& u, double dt, double eps, const BoundaryPair& bc) {
    if (!(dt > 0.0)) throw ConfigError("step_implicit: dt must be positive");
    const int n = u.size();
    const double dx = u.grid.dx;

    // residual of the dt-scaled trapezoidal update:
    //   G_i = (w_i - u_i) - (dt/2)(F_i(w) + F_i(u))   on the interior,
    //   G_0 = w_0 - alpha,  G_{n-1} = w_{n-1} - beta.
    const Field fu = steady_residual(u, eps, bc);

    // tolerance: the pinned 1e-11 (per unit time), floored by the evaluation
    // roundoff of the stiff term
    double uscale = std::max(1.0, max_abs(u.values));
    const double guard = 8.0 * std::numeric_limits<double>::epsilon() *
                         (uscale + dt * (eps / (dx * dx)) * uscale + dt * uscale * uscale / dx);
    const double tol = std::max(1e-11 * dt, guard);

    Field w = u;
    auto update_residual = [&](const Field& cand) {
        const Field fc = steady_residual(cand, eps, bc);
        std::vector<double> G(static_cast<std::size_t>(n));
        G[0] = cand[0] - bc.alpha;
        G[static_cast<std::size_t>(n - 1)] = cand[n - 1] - bc.beta;
        for (int i = 1; i < n - 1; ++i)
            G[static_cast<std::size_t>(i)] =
                (cand[i] - u[i]) - 0.5 * dt * (fc[i] + fu[i]);
        return G;
    };

    std::vector<double> G = update_residual(w);
    double nrm = max_abs(G);

    for (int it = 0; it < 30; ++it) {
        if (nrm <= tol) return w;

        // J_G = I - (dt/2) J_F on interior rows, identity on the boundary
        TriDiag J = steady_jacobian(w, eps);
        for (double& v : J.lower) v *= -0.5 * dt;
        for (double& v : J.upper) v *= -0.5 * dt;
        for (int i = 1; i < n - 1; ++i)
            J.diag[static_cast<std::size_t>(i)] = 1.0 - 0.5 * dt * J.diag[static_cast<std::size_t>(i)];
        J.diag[0] = 1.0;
        J.diag[static_cast<std::size_t>(n - 1)] = 1.0;
        J.lower[static_cast<std::size_t>(n - 2)] = 0.0;
        J.upper[0] = 0.0;

        std::vector<double> rhs = G;
        for (double& v : rhs) v = -v;
        const std::vector<double> delta = solve_tridiag(J, rhs);

        // halve on residual growth, same policy as the steady solver
        double step = 1.0;
        bool accepted = false;
        for (int halving = 0; halving <= 10; ++halving) {
            Field cand = w;
            for (int i = 0; i < n; ++i) cand[i] = w[i] + step * delta[static_cast<std::size_t>(i)];
            std::vector<double> Gc = update_residual(cand);
            const double nc = max_abs(Gc);
            if (nc <= tol || nc < nrm) {
                w = std::move(cand);
                G = std::move(Gc);
                nrm = nc;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted)
            throw StepNoConvergence("step_implicit: Newton stalled at residual " +
                                    std::to_string(nrm) + "; try a smaller dt");
    }
    if (nrm <= tol) return w;
    throw StepNoConvergence("step_implicit: no convergence (residual " + std::to_string(nrm) +
                            ", tol " + std::to_string(tol) + "); try a smaller dt");
}

Trajectory evolve(const Field& u0, double t_end, double dt, double eps, const BoundaryPair& bc,
                  int sample_every, const std::optional<Field>& reference, bool keep_snapshots) {
    if (!(t_end > 0.0)) throw ConfigError("evolve: t_end must be positive");
    if (!(dt > 0.0)) throw ConfigError("evolve: dt must be positive");
    if (sample_every < 1) throw ConfigError("evolve: sample_every must be >= 1");

    const Field ref = reference ? *reference
                                : composite(bc.alpha, 0.0, eps).sample(u0.grid);
    if (ref.size() != u0.size()) throw ConfigError("evolve: reference lives on a different grid");

    Trajectory tr;
    tr.reference_norm = l2_norm(ref);

    auto record = [&](double t, const Field& u) {
        tr.times.push_back(t);
        tr.deviations.push_back(l2_distance(u, ref));
        if (keep_snapshots) {
            tr.snapshot_times.push_back(t);
            tr.snapshots.push_back(u);
        }
    };

    Field u = u0;
    record(0.0, u);

    const long long nsteps = std::llround(t_end / dt);
    for (long long s = 1; s <= nsteps; ++s) {
        try {
            u = step_implicit(u, dt, eps, bc);
        } catch (const NumericalError& err) {
            throw EvolveFailure(std::string("evolve: step ") + std::to_string(s) +
                                    " failed: " + err.what(),
                                std::move(tr));
        }
        if (s % sample_every == 0 || s == nsteps) record(static_cast<double>(s) * dt, u);
    }
    return tr;
}

DecayFit fit_decay(const Trajectory& tr) {
    if (tr.times.size() < 2) throw NotEnoughPoints("fit_decay: trajectory too short");
    const double t_end = tr.times.back();
    const double lo = 0.2 * t_end;
    const double hi = 0.9 * t_end;
    const double floor = 1e3 * std::numeric_limits<double>::epsilon() * tr.reference_norm;

    std::vector<double> ts, ys;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        const double t = tr.times[i];
        const double d = tr.deviations[i];
        if (t < lo || t > hi || d <= floor) continue;
        ts.push_back(t);
        ys.push_back(std::log(d));
    }
    if (ts.size() < 10)
        throw NotEnoughPoints("fit_decay: only " + std::to_string(ts.size()) +
                              " usable samples in the fit window");

    const LineFit fit = linear_fit(ts, ys);
    DecayFit out;
    out.lambda_est = -fit.slope;
    out.intercept = fit.intercept;
    out.r_squared = fit.r_squared;
    out.t_lo = lo;
    out.t_hi = hi;
    return out;
}

BoundednessReport boundedness_check(const Trajectory& tr, const CompositeProfile& p, double nu,
                                    double M) {
    (void)nu;  // M is already instantiated from nu by the caller
    BoundednessReport rep;
    rep.bound = 8.0 * p.alpha * p.alpha + 2.0 * M;
    for (const Field& snap : tr.snapshots)
        rep.max_norm_sq = std::max(rep.max_norm_sq, integrate_squared(snap));
    rep.passed = rep.max_norm_sq < rep.bound;
    return rep;
}

double bound_constant(const Field& phi, double nu) {
    const double sup = max_abs(phi.values);
    return 4.0 * nu * nu * sup * sup;
}

}  // namespace burgers1d
