#include "burgers1d/asymptotics.hpp"

#include <cmath>

namespace burgers1d {

namespace detail {

double sech_squared(double t) {
    const double a = std::abs(t);
    if (a > 350.0) return 0.0;
    const double e = std::exp(-a);
    const double s = 2.0 * e / (1.0 + e * e);
    return s * s;
}

double log_cosh(double t) {
    const double a = std::abs(t);
    return a + std::log1p(std::exp(-2.0 * a)) - 0.6931471805599453094;
}

}  // namespace detail

double CompositeProfile::theta(double x) const { return 0.5 * alpha * (x / eps + k); }

double CompositeProfile::value(double x) const { return -alpha * std::tanh(theta(x)); }

double CompositeProfile::deriv(double x) const {
    return -(alpha * alpha / (2.0 * eps)) * detail::sech_squared(theta(x));
}

double CompositeProfile::deriv2(double x) const {
    const double t = theta(x);
    return (alpha * alpha * alpha / (2.0 * eps * eps)) * detail::sech_squared(t) * std::tanh(t);
}

Field CompositeProfile::sample(const Grid& g) const {
    std::vector<double> v(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) v[static_cast<std::size_t>(i)] = value(g.node(i));
    return Field(g, std::move(v));
}

Field CompositeProfile::sample_deriv(const Grid& g) const {
    std::vector<double> v(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) v[static_cast<std::size_t>(i)] = deriv(g.node(i));
    return Field(g, std::move(v));
}

Field CompositeProfile::sample_deriv2(const Grid& g) const {
    std::vector<double> v(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) v[static_cast<std::size_t>(i)] = deriv2(g.node(i));
    return Field(g, std::move(v));
}

CompositeProfile composite(double alpha, double k, double eps) {
    if (!(eps > 0.0)) throw ConfigError("composite: eps must be positive");
    if (!std::isfinite(alpha) || !std::isfinite(k) || !std::isfinite(eps))
        throw ConfigError("composite: parameters must be finite");
    return CompositeProfile{alpha, k, eps};
}

std::pair<double, double> outer_solutions(const BoundaryPair& bc) {
    return {bc.alpha, -bc.alpha};
}

double inner_solution(double alpha, double k, double s) {
    return -alpha * std::tanh(0.5 * alpha * (s + k));
}

MatchReport matching_check(const CompositeProfile& p, double s_max) {
    if (!(s_max > 0.0)) throw ConfigError("matching_check: s_max must be positive");
    MatchReport rep;
    rep.inner_limit_left = inner_solution(p.alpha, p.k, -s_max);
    rep.inner_limit_right = inner_solution(p.alpha, p.k, s_max);
    rep.outer_left = p.alpha;
    rep.outer_right = -p.alpha;
    rep.max_defect = std::max(std::abs(rep.inner_limit_left - rep.outer_left),
                              std::abs(rep.inner_limit_right - rep.outer_right));
    return rep;
}

Field stationary_residual(const CompositeProfile& p, const Grid& g) {
    std::vector<double> r(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        const double x = g.node(i);
        r[static_cast<std::size_t>(i)] = p.eps * p.deriv2(x) - p.value(x) * p.deriv(x);
    }
    return Field(g, std::move(r));
}

std::pair<double, double> boundary_mismatch(const CompositeProfile& p) {
    const double dm = std::abs(p.value(-1.0) - p.alpha);
    const double dp = std::abs(p.value(1.0) - (-p.alpha));
    return {dm, dp};
}

L2BoundCheck l2_bound_check(const CompositeProfile& p, const Grid& g) {
    L2BoundCheck out;
    if (p.alpha == 0.0) return out;
    out.norm_sq = integrate_squared(p.sample(g));
    out.bound = 2.0 * p.alpha * p.alpha;
    return out;
}

}  // namespace burgers1d
