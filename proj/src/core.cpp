#include "burgers1d/core.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

namespace burgers1d {

namespace {

// Neumaier compensated summation; keeps quadrature error at O(eps)
// independent of the node count.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = node(i);
    return xs;
}

Grid make_grid(double a, double b, int n) {
    if (n < 3) throw ConfigError("make_grid: need at least 3 nodes, got " + std::to_string(n));
    if (!(a < b)) throw ConfigError("make_grid: need a < b");
    if (!std::isfinite(a) || !std::isfinite(b)) throw ConfigError("make_grid: endpoints must be finite");
    Grid g;
    g.a = a;
    g.b = b;
    g.n = n;
    g.dx = (b - a) / static_cast<double>(n - 1);
    return g;
}

BoundaryPair::BoundaryPair(double alpha, double beta) : alpha(alpha), beta(beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw IncompatibleBoundary("boundary values must be finite");
    if (beta != -alpha)
        throw IncompatibleBoundary("boundary data requires beta = -alpha (got alpha=" +
                                   std::to_string(alpha) + ", beta=" + std::to_string(beta) + ")");
}

BoundaryPair validate_bc(double alpha, double beta) { return BoundaryPair(alpha, beta); }

Field::Field(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n)
        throw ConfigError("Field: value count " + std::to_string(values.size()) +
                          " does not match grid.n = " + std::to_string(grid.n));
    for (double x : values)
        if (!std::isfinite(x)) throw ConfigError("Field: non-finite sample");
}

Field Field::zeros(const Grid& g) {
    return Field(g, std::vector<double>(static_cast<std::size_t>(g.n), 0.0));
}

double integrate(const Field& f) {
    CompensatedSum s;
    const int n = f.size();
    for (int i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        s.add(w * f[i]);
    }
    return s.value() * f.grid.dx;
}

double integrate_squared(const Field& f) {
    CompensatedSum s;
    const int n = f.size();
    for (int i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        s.add(w * f[i] * f[i]);
    }
    return s.value() * f.grid.dx;
}

double l2_norm(const Field& f) { return std::sqrt(integrate_squared(f)); }

double l2_distance(const Field& f, const Field& g) {
    if (f.size() != g.size()) throw ConfigError("l2_distance: fields live on different grids");
    CompensatedSum s;
    const int n = f.size();
    for (int i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        const double d = f[i] - g[i];
        s.add(w * d * d);
    }
    return std::sqrt(s.value() * f.grid.dx);
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

LineFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw ConfigError("linear_fit: size mismatch");
    const int n = static_cast<int>(xs.size());
    if (n < 2) throw NotEnoughPoints("linear_fit: need at least 2 points, got " + std::to_string(n));

    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) {
        mx += xs[static_cast<std::size_t>(i)];
        my += ys[static_cast<std::size_t>(i)];
    }
    mx /= n;
    my /= n;

    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dx = xs[static_cast<std::size_t>(i)] - mx;
        sxx += dx * dx;
        sxy += dx * (ys[static_cast<std::size_t>(i)] - my);
    }
    if (sxx == 0.0) throw NotEnoughPoints("linear_fit: all abscissae identical");

    LineFit fit;
    fit.count = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;

    double ss_res = 0.0, ss_tot = 0.0;
    for (int i = 0; i < n; ++i) {
        const double y = ys[static_cast<std::size_t>(i)];
        const double pred = fit.intercept + fit.slope * xs[static_cast<std::size_t>(i)];
        ss_res += (y - pred) * (y - pred);
        ss_tot += (y - my) * (y - my);
    }
    const double tiny = 1e-28 * std::max(1.0, my * my) * n;
    if (ss_tot <= tiny) {
        fit.r_squared = (ss_res <= tiny) ? 1.0 : 0.0;
    } else {
        fit.r_squared = 1.0 - ss_res / ss_tot;
    }
    return fit;
}

}  // namespace burgers1d
