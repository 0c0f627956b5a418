#include "burgers1d/discretization.hpp"

#include <cmath>
#include <limits>

namespace burgers1d {

std::vector<double> solve_tridiag(const TriDiag& A, std::vector<double> rhs) {
    const int n = A.size();
    if (static_cast<int>(rhs.size()) != n) throw ConfigError("solve_tridiag: size mismatch");
    if (n == 0) return rhs;

    // exact-singularity guard; legitimate pivots here never get this small
    const double pivot_floor = std::numeric_limits<double>::min() * 1e16;

    std::vector<double> c(static_cast<std::size_t>(n > 1 ? n - 1 : 0));
    std::vector<double> d(static_cast<std::size_t>(n));

    double piv = A.diag[0];
    if (std::abs(piv) < pivot_floor) throw SingularJacobian("solve_tridiag: zero pivot at row 0");
    if (n > 1) c[0] = A.upper[0] / piv;
    d[0] = rhs[0] / piv;

    for (int i = 1; i < n; ++i) {
        piv = A.diag[static_cast<std::size_t>(i)] -
              A.lower[static_cast<std::size_t>(i - 1)] * c[static_cast<std::size_t>(i - 1)];
        if (std::abs(piv) < pivot_floor)
            throw SingularJacobian("solve_tridiag: zero pivot at row " + std::to_string(i));
        if (i < n - 1) c[static_cast<std::size_t>(i)] = A.upper[static_cast<std::size_t>(i)] / piv;
        d[static_cast<std::size_t>(i)] =
            (rhs[static_cast<std::size_t>(i)] -
             A.lower[static_cast<std::size_t>(i - 1)] * d[static_cast<std::size_t>(i - 1)]) /
            piv;
    }

    std::vector<double> x(static_cast<std::size_t>(n));
    x[static_cast<std::size_t>(n - 1)] = d[static_cast<std::size_t>(n - 1)];
    for (int i = n - 2; i >= 0; --i)
        x[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i)] -
                                         c[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i + 1)];
    return x;
}

Field steady_residual(const Field& u, double eps, const BoundaryPair& bc) {
    const int n = u.size();
    if (n < 3) throw ConfigError("steady_residual: grid too small");
    if (!(eps > 0.0)) throw ConfigError("steady_residual: eps must be positive");

    const double dx = u.grid.dx;
    const double idx2 = eps / (dx * dx);
    const double idx = 1.0 / (2.0 * dx);

    std::vector<double> r(static_cast<std::size_t>(n));
    r[0] = u[0] - bc.alpha;
    r[static_cast<std::size_t>(n - 1)] = u[n - 1] - bc.beta;
    for (int i = 1; i < n - 1; ++i) {
        r[static_cast<std::size_t>(i)] =
            idx2 * (u[i - 1] - 2.0 * u[i] + u[i + 1]) - u[i] * (u[i + 1] - u[i - 1]) * idx;
    }
    return Field(u.grid, std::move(r));
}

TriDiag steady_jacobian(const Field& u, double eps) {
    const int n = u.size();
    if (n < 3) throw ConfigError("steady_jacobian: grid too small");
    if (!(eps > 0.0)) throw ConfigError("steady_jacobian: eps must be positive");

    const double dx = u.grid.dx;
    const double idx2 = eps / (dx * dx);
    const double idx = 1.0 / (2.0 * dx);

    TriDiag J(n);
    J.diag[0] = 1.0;
    J.diag[static_cast<std::size_t>(n - 1)] = 1.0;
    // upper[0] and lower[n-2] stay 0: identity boundary rows
    for (int i = 1; i < n - 1; ++i) {
        J.lower[static_cast<std::size_t>(i - 1)] = idx2 + u[i] * idx;
        J.diag[static_cast<std::size_t>(i)] = -2.0 * idx2 - (u[i + 1] - u[i - 1]) * idx;
        J.upper[static_cast<std::size_t>(i)] = idx2 - u[i] * idx;
    }
    return J;
}

SteadyResult newton_solve_steady(double eps, const BoundaryPair& bc, const Field& u0,
                                 double tol, int max_iter) {
    if (!(eps > 0.0)) throw ConfigError("newton_solve_steady: eps must be positive");
    if (!(tol > 0.0)) throw ConfigError("newton_solve_steady: tol must be positive");
    if (max_iter < 1) throw ConfigError("newton_solve_steady: max_iter must be >= 1");

    // project the initial guess onto the boundary rows
    Field u = u0;
    u[0] = bc.alpha;
    u[u.size() - 1] = bc.beta;

    Field r = steady_residual(u, eps, bc);
    double nrm = max_abs(r.values);

    SteadyResult result;
    result.residual_history.push_back(nrm);

    for (int it = 1; it <= max_iter; ++it) {
        const TriDiag J = steady_jacobian(u, eps);
        std::vector<double> rhs(r.values);
        for (double& v : rhs) v = -v;
        const std::vector<double> delta = solve_tridiag(J, rhs);

        // full step first; halve on residual growth (up to 10 times)
        double step = 1.0;
        Field cand = u;
        Field rc = r;
        double cand_nrm = nrm;
        bool accepted = false;
        for (int halving = 0; halving <= 10; ++halving) {
            for (int i = 0; i < u.size(); ++i)
                cand[i] = u[i] + step * delta[static_cast<std::size_t>(i)];
            rc = steady_residual(cand, eps, bc);
            cand_nrm = max_abs(rc.values);
            if (cand_nrm <= tol || cand_nrm < nrm) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted)
            throw NoConvergence("newton_solve_steady: residual stalled at " +
                                    std::to_string(nrm) + " (under-resolved layer or bad guess?)",
                                it, nrm);

        u = std::move(cand);
        r = std::move(rc);
        nrm = cand_nrm;
        result.residual_history.push_back(nrm);
        result.iterations = it;

        if (nrm <= tol) {
            result.u = std::move(u);
            return result;
        }
    }
    throw NoConvergence("newton_solve_steady: no convergence after " +
                            std::to_string(max_iter) + " iterations, residual " + std::to_string(nrm),
                        max_iter, nrm);
}

int default_resolution(double eps) {
    if (!(eps > 0.0)) throw ConfigError("default_resolution: eps must be positive");
    const int layer = static_cast<int>(std::ceil(16.0 / eps)) + 1;
    return std::max(401, layer);
}

}  // namespace burgers1d
