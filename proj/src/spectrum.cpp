#include "burgers1d/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace burgers1d {

namespace {

constexpr double kWeightUnderflow = 1e-280;

void check_weight(const Field& p) {
    double mn = std::numeric_limits<double>::infinity();
    for (double v : p.values) mn = std::min(mn, v);
    if (mn < kWeightUnderflow)
        throw Underflow("symmetrization weight underflows double precision (min p = " +
                        std::to_string(mn) + "); eps too small");
}

// ---- Sturm bisection -------------------------------------------------------

struct SturmContext {
    const std::vector<double>& d;
    std::vector<double> e2;   // squared off-diagonals
    double pivmin = 0.0;
    double lo = 0.0, hi = 0.0;  // Gershgorin bounds
};

SturmContext make_sturm_context(const TriDiag& A) {
    const int n = A.size();
    if (!std::equal(A.lower.begin(), A.lower.end(), A.upper.begin()))
        throw ConfigError("eigen_smallest: matrix is not symmetric");

    SturmContext ctx{A.diag, {}, 0.0, 0.0, 0.0};
    ctx.e2.resize(A.lower.size());
    double emax2 = 1.0;
    for (std::size_t i = 0; i < A.lower.size(); ++i) {
        ctx.e2[i] = A.lower[i] * A.lower[i];
        emax2 = std::max(emax2, ctx.e2[i]);
    }
    ctx.pivmin = std::numeric_limits<double>::min() * emax2;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < n; ++i) {
        const double off = (i > 0 ? std::abs(A.lower[static_cast<std::size_t>(i - 1)]) : 0.0) +
                           (i < n - 1 ? std::abs(A.lower[static_cast<std::size_t>(i)]) : 0.0);
        lo = std::min(lo, A.diag[static_cast<std::size_t>(i)] - off);
        hi = std::max(hi, A.diag[static_cast<std::size_t>(i)] + off);
    }
    const double pad = std::max(std::abs(lo), std::abs(hi)) * 16.0 *
                       std::numeric_limits<double>::epsilon();
    ctx.lo = lo - pad;
    ctx.hi = hi + pad;
    return ctx;
}

// number of eigenvalues strictly below x (LDL^T pivot sign count)
int count_below(const SturmContext& ctx, double x) {
    int cnt = 0;
    double q = 1.0;
    const int n = static_cast<int>(ctx.d.size());
    for (int i = 0; i < n; ++i) {
        q = ctx.d[static_cast<std::size_t>(i)] - x -
            (i > 0 ? ctx.e2[static_cast<std::size_t>(i - 1)] / q : 0.0);
        if (std::abs(q) < ctx.pivmin) q = -ctx.pivmin;
        if (q < 0.0) ++cnt;
    }
    return cnt;
}

// k-th smallest eigenvalue (k is 1-based) by bisection
double bisect_kth(const SturmContext& ctx, int k) {
    double lo = ctx.lo, hi = ctx.hi;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double width = hi - lo;
        if (width <= 4.0 * eps * std::max(std::abs(lo), std::abs(hi)) + 8.0 * ctx.pivmin)
            break;
        if (count_below(ctx, mid) >= k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// ---- inverse iteration ------------------------------------------------------

// LU with partial pivoting for (T - mu I); fill-in adds a second superdiagonal.
// Near-singular pivots are floored instead of rejected: inverse iteration
// relies on solving an almost singular system.
class ShiftedSolver {
public:
    ShiftedSolver(const TriDiag& T, double mu) {
        const int n = T.size();
        dl_.assign(T.lower.begin(), T.lower.end());
        d_.resize(static_cast<std::size_t>(n));
        du_.assign(T.upper.begin(), T.upper.end());
        du2_.assign(static_cast<std::size_t>(n > 2 ? n - 2 : 0), 0.0);
        ipiv_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) d_[static_cast<std::size_t>(i)] = T.diag[static_cast<std::size_t>(i)] - mu;

        double scale = std::abs(mu);
        for (double v : d_) scale = std::max(scale, std::abs(v));
        for (double v : dl_) scale = std::max(scale, std::abs(v));
        const double floor = scale * std::numeric_limits<double>::epsilon() *
                             std::numeric_limits<double>::epsilon();

        for (int i = 0; i < n - 1; ++i) {
            const auto iu = static_cast<std::size_t>(i);
            if (std::abs(d_[iu]) >= std::abs(dl_[iu])) {
                ipiv_[iu] = false;
                if (std::abs(d_[iu]) < floor) d_[iu] = (d_[iu] < 0 ? -floor : floor);
                const double fact = dl_[iu] / d_[iu];
                dl_[iu] = fact;
                d_[iu + 1] -= fact * du_[iu];
                if (i < n - 2) du2_[iu] = 0.0;
            } else {
                ipiv_[iu] = true;
                const double fact = d_[iu] / dl_[iu];
                d_[iu] = dl_[iu];
                dl_[iu] = fact;
                const double tmp = du_[iu];
                du_[iu] = d_[iu + 1];
                d_[iu + 1] = tmp - fact * d_[iu + 1];
                if (i < n - 2) {
                    du2_[iu] = du_[iu + 1];
                    du_[iu + 1] = -fact * du_[iu + 1];
                }
            }
        }
        const auto last = static_cast<std::size_t>(n - 1);
        if (std::abs(d_[last]) < floor) d_[last] = (d_[last] < 0 ? -floor : floor);
    }

    void solve(std::vector<double>& b) const {
        const int n = static_cast<int>(d_.size());
        for (int i = 0; i < n - 1; ++i) {
            const auto iu = static_cast<std::size_t>(i);
            if (!ipiv_[iu]) {
                b[iu + 1] -= dl_[iu] * b[iu];
            } else {
                const double tmp = b[iu];
                b[iu] = b[iu + 1];
                b[iu + 1] = tmp - dl_[iu] * b[iu];
            }
        }
        b[static_cast<std::size_t>(n - 1)] /= d_[static_cast<std::size_t>(n - 1)];
        if (n > 1) {
            const auto i = static_cast<std::size_t>(n - 2);
            b[i] = (b[i] - du_[i] * b[i + 1]) / d_[i];
        }
        for (int i = n - 3; i >= 0; --i) {
            const auto iu = static_cast<std::size_t>(i);
            b[iu] = (b[iu] - du_[iu] * b[iu + 1] - du2_[iu] * b[iu + 2]) / d_[iu];
        }
    }

private:
    std::vector<double> dl_, d_, du_, du2_;
    std::vector<bool> ipiv_;
};

double vec_norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<double> apply_tridiag(const TriDiag& A, const std::vector<double>& v) {
    const int n = A.size();
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        double s = A.diag[iu] * v[iu];
        if (i > 0) s += A.lower[iu - 1] * v[iu - 1];
        if (i < n - 1) s += A.upper[iu] * v[iu + 1];
        w[iu] = s;
    }
    return w;
}

double infty_norm(const TriDiag& A) {
    double m = 0.0;
    const int n = A.size();
    for (int i = 0; i < n; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        double s = std::abs(A.diag[iu]);
        if (i > 0) s += std::abs(A.lower[iu - 1]);
        if (i < n - 1) s += std::abs(A.upper[iu]);
        m = std::max(m, s);
    }
    return m;
}

}  // namespace

Field symmetrization_weight(const CompositeProfile& p, const Grid& g) {
    if (!(p.eps > 0.0)) throw ConfigError("symmetrization_weight: eps must be positive");
    // int_0^x U ds = -2 eps [log cosh(theta(x)) - log cosh(alpha k / 2)]
    const double lc0 = detail::log_cosh(0.5 * p.alpha * p.k);
    std::vector<double> w(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        const double t = p.theta(g.node(i));
        w[static_cast<std::size_t>(i)] = std::exp(2.0 * (lc0 - detail::log_cosh(t)));
    }
    Field out(g, std::move(w));
    check_weight(out);
    return out;
}

Field symmetrization_weight_from_state(const Field& u, double eps) {
    if (!(eps > 0.0)) throw ConfigError("symmetrization_weight_from_state: eps must be positive");
    const int n = u.size();
    const double dx = u.grid.dx;

    // cumulative trapezoid antiderivative of u, then re-anchor at the node
    // nearest x = 0 (a constant factor in p leaves the spectrum unchanged)
    std::vector<double> cum(static_cast<std::size_t>(n), 0.0);
    for (int i = 1; i < n; ++i)
        cum[static_cast<std::size_t>(i)] =
            cum[static_cast<std::size_t>(i - 1)] + 0.5 * dx * (u[i - 1] + u[i]);

    int i0 = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(u.grid.node(i)) < std::abs(u.grid.node(i0))) i0 = i;

    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        w[static_cast<std::size_t>(i)] =
            std::exp((cum[static_cast<std::size_t>(i)] - cum[static_cast<std::size_t>(i0)]) / eps);

    Field out(u.grid, std::move(w));
    check_weight(out);
    return out;
}

Field turning_point_weight(double eps, const Grid& g) {
    if (!(eps > 0.0)) throw ConfigError("turning_point_weight: eps must be positive");
    std::vector<double> w(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        const double x = g.node(i);
        w[static_cast<std::size_t>(i)] = std::exp(-x * x / (2.0 * eps));
    }
    Field out(g, std::move(w));
    check_weight(out);
    return out;
}

TriDiag build_symmetric_operator(const Field& p_weight, double eps) {
    if (!(eps > 0.0)) throw ConfigError("build_symmetric_operator: eps must be positive");
    const int n = p_weight.size();
    if (n < 3) throw ConfigError("build_symmetric_operator: grid too small");
    for (double v : p_weight.values)
        if (!(v > 0.0)) throw ConfigError("build_symmetric_operator: weights must be positive");

    const double dx = p_weight.grid.dx;
    const double c = eps / (dx * dx);
    const auto& p = p_weight.values;

    // half-node weights: geometric means of the adjacent node weights
    std::vector<double> ph(static_cast<std::size_t>(n - 1));
    for (int i = 0; i < n - 1; ++i)
        ph[static_cast<std::size_t>(i)] =
            std::sqrt(p[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(i + 1)]);

    const int N = n - 2;  // interior nodes
    TriDiag A(N);
    for (int ii = 0; ii < N; ++ii) {
        const int i = ii + 1;
        const auto iu = static_cast<std::size_t>(i);
        A.diag[static_cast<std::size_t>(ii)] =
            c * (ph[iu - 1] + ph[iu]) / p[iu];
        if (ii < N - 1) {
            const double off = -c * ph[iu] / std::sqrt(p[iu] * p[iu + 1]);
            A.upper[static_cast<std::size_t>(ii)] = off;
            A.lower[static_cast<std::size_t>(ii)] = off;
        }
    }
    return A;
}

std::vector<double> eigen_smallest(const TriDiag& A, int m) {
    const int n = A.size();
    if (m < 1 || m > n)
        throw ConfigError("eigen_smallest: requested " + std::to_string(m) +
                          " eigenvalues of a " + std::to_string(n) + "-dim matrix");
    if (n == 1) return {A.diag[0]};

    const SturmContext ctx = make_sturm_context(A);
    std::vector<double> vals(static_cast<std::size_t>(m));
    for (int k = 1; k <= m; ++k) vals[static_cast<std::size_t>(k - 1)] = bisect_kth(ctx, k);
    std::sort(vals.begin(), vals.end());
    return vals;
}

EigenPairs eigen_smallest_pairs(const TriDiag& A, int m) {
    EigenPairs out;
    out.values = eigen_smallest(A, m);
    const int n = A.size();
    const double anorm = infty_norm(A);
    const double cluster_gap = std::max(1e-8 * anorm, 1e-300);

    std::mt19937 rng(0x5eed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    for (int k = 0; k < m; ++k) {
        const double lam = out.values[static_cast<std::size_t>(k)];
        // nudge the shift off exact singularity
        const double mu = lam + anorm * std::numeric_limits<double>::epsilon();
        const ShiftedSolver solver(A, mu);

        std::vector<double> v(static_cast<std::size_t>(n));
        for (double& x : v) x = unif(rng);

        bool converged = false;
        for (int it = 0; it < 8; ++it) {
            // project out previously found vectors of nearby eigenvalues
            for (int j = 0; j < k; ++j) {
                if (std::abs(out.values[static_cast<std::size_t>(j)] - lam) > cluster_gap) continue;
                const auto& w = out.vectors[static_cast<std::size_t>(j)];
                double dot = 0.0;
                for (int i = 0; i < n; ++i)
                    dot += v[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
                for (int i = 0; i < n; ++i)
                    v[static_cast<std::size_t>(i)] -= dot * w[static_cast<std::size_t>(i)];
            }
            solver.solve(v);
            const double nrm = vec_norm2(v);
            if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
            for (double& x : v) x /= nrm;

            std::vector<double> Av = apply_tridiag(A, v);
            for (int i = 0; i < n; ++i) Av[static_cast<std::size_t>(i)] -= lam * v[static_cast<std::size_t>(i)];
            if (vec_norm2(Av) <= 1e-10 * std::max(anorm, 1.0)) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw IterationLimit("eigen_smallest_pairs: inverse iteration failed for eigenvalue " +
                                 std::to_string(k + 1));
        out.vectors.push_back(std::move(v));
    }
    return out;
}

namespace {

void check_resolution(const Grid& g, double eps) {
    const int need = static_cast<int>(std::ceil(16.0 / eps)) + 1;
    if (g.n < need)
        throw ResolutionError("grid with n = " + std::to_string(g.n) +
                              " does not resolve the layer at eps = " + std::to_string(eps) +
                              " (need n >= " + std::to_string(need) + ")");
}

void check_floor(double eps, bool allow_small_eps) {
    if (!(eps > 0.0)) throw ConfigError("eps must be positive");
    if (eps < kEpsPrecisionFloor && !allow_small_eps)
        throw PrecisionFloor("eps = " + std::to_string(eps) + " is below the precision floor " +
                             std::to_string(kEpsPrecisionFloor) +
                             "; the principal eigenvalue would drown in roundoff "
                             "(pass the override to proceed anyway)");
}

// sign convention: first interior extremum positive
void fix_sign(Field& f) {
    const int n = f.size();
    const double vmax = max_abs(f.values);
    if (vmax == 0.0) return;
    for (int i = 1; i < n - 1; ++i) {
        const double d1 = f[i] - f[i - 1];
        const double d2 = f[i + 1] - f[i];
        if (d1 * d2 <= 0.0 && std::abs(f[i]) > 1e-12 * vmax) {
            if (f[i] < 0.0)
                for (double& v : f.values) v = -v;
            return;
        }
    }
    // monotone fallback: make the largest-magnitude entry positive
    int imax = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(f[i]) > std::abs(f[imax])) imax = i;
    if (f[imax] < 0.0)
        for (double& v : f.values) v = -v;
}

SpectrumResult spectrum_from_weight(Field weight, const Grid& g, double eps, int m) {
    const TriDiag A = build_symmetric_operator(weight, eps);
    if (m > A.size())
        throw ConfigError("linearized_spectrum: m exceeds interior dimension");
    EigenPairs pairs = eigen_smallest_pairs(A, m);

    SpectrumResult result;
    result.eps = eps;
    result.eigenvalues = pairs.values;
    result.weight = std::move(weight);
    for (int k = 0; k < m; ++k) {
        Field phi = Field::zeros(g);
        const auto& psi = pairs.vectors[static_cast<std::size_t>(k)];
        for (int i = 1; i < g.n - 1; ++i)
            phi[i] = std::sqrt(result.weight[i]) * psi[static_cast<std::size_t>(i - 1)];
        const double nrm = l2_norm(phi);
        if (nrm > 0.0)
            for (double& v : phi.values) v /= nrm;
        fix_sign(phi);
        result.eigenfunctions.push_back(std::move(phi));
    }
    return result;
}

}  // namespace

SpectrumResult linearized_spectrum(const CompositeProfile& p, const Grid& g, int m,
                                   EquilibriumSource source, bool allow_small_eps) {
    check_floor(p.eps, allow_small_eps);
    check_resolution(g, p.eps);

    Field weight;
    if (source == EquilibriumSource::composite) {
        weight = symmetrization_weight(p, g);
    } else {
        const BoundaryPair bc(p.alpha, -p.alpha);
        const SteadyResult steady = newton_solve_steady(p.eps, bc, p.sample(g));
        weight = symmetrization_weight_from_state(steady.u, p.eps);
    }
    return spectrum_from_weight(std::move(weight), g, p.eps, m);
}

std::vector<double> turning_point_model(double eps, const Grid& g, int m, bool allow_small_eps) {
    check_floor(eps, allow_small_eps);
    const Field w = turning_point_weight(eps, g);
    const TriDiag A = build_symmetric_operator(w, eps);
    return eigen_smallest(A, m);
}

namespace {

SweepResult run_sweep(std::span<const double> eps_list, int jobs,
                      const std::function<std::vector<double>(double)>& row_solver) {
    SweepResult result;
    result.rows.resize(eps_list.size());
    for (std::size_t i = 0; i < eps_list.size(); ++i) result.rows[i].eps = eps_list[i];

    auto work = [&](std::size_t i) {
        try {
            result.rows[i].lambdas = row_solver(eps_list[i]);
        } catch (const Error& err) {
            result.rows[i].status = err.what();
        }
    };

    const int workers = std::clamp<int>(jobs, 1, static_cast<int>(eps_list.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < eps_list.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < eps_list.size(); i = next.fetch_add(1))
                    work(i);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<double> xs, ys;
    for (const auto& row : result.rows) {
        if (row.status == "ok" && !row.lambdas.empty() && row.lambdas.front() > 0.0) {
            xs.push_back(1.0 / row.eps);
            ys.push_back(std::log(row.lambdas.front()));
        }
    }
    if (xs.size() < 2) {
        result.note = "NotEnoughPoints";
    } else {
        result.fit = linear_fit(xs, ys);
        result.fit_valid = true;
    }
    return result;
}

}  // namespace

SweepResult metastability_sweep(double alpha, std::span<const double> eps_list, int m, int jobs,
                                bool allow_small_eps, const std::function<int(double)>& n_rule) {
    for (double e : eps_list) {
        check_floor(e, allow_small_eps);
        if (e > 0.5)
            throw ConfigError("metastability_sweep: eps = " + std::to_string(e) +
                              " above the supported range [0.05, 0.5]");
    }
    auto rule = n_rule ? n_rule : default_resolution;
    auto row = [alpha, m, &rule](double e) {
        const Grid g = make_grid(-1.0, 1.0, rule(e));
        const SpectrumResult s = linearized_spectrum(composite(alpha, 0.0, e), g, m,
                                                     EquilibriumSource::composite, true);
        return s.eigenvalues;
    };
    return run_sweep(eps_list, jobs, row);
}

SweepResult turning_point_sweep(std::span<const double> eps_list, int m, bool allow_small_eps,
                                const std::function<int(double)>& n_rule) {
    for (double e : eps_list) check_floor(e, allow_small_eps);
    auto rule = n_rule ? n_rule : default_resolution;
    auto row = [m, &rule](double e) {
        const Grid g = make_grid(-1.0, 1.0, rule(e));
        return turning_point_model(e, g, m, true);
    };
    return run_sweep(eps_list, 1, row);
}

}  // namespace burgers1d
