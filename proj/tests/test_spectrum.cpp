#include <cmath>
#include <random>

#include <doctest.h>

#include "burgers1d/spectrum.hpp"
#include "support/dense_oracle.hpp"

using namespace burgers1d;

namespace {

int interior_sign_changes(const Field& f) {
    const double tol = 1e-8 * max_abs(f.values);
    int changes = 0;
    double prev = 0.0;
    for (int i = 1; i < f.size() - 1; ++i) {
        const double v = f[i];
        if (std::abs(v) <= tol) continue;
        if (prev != 0.0 && v * prev < 0.0) ++changes;
        prev = v;
    }
    return changes;
}

}  // namespace

TEST_CASE("symmetrization_weight: closed-form antiderivative of the profile") {
    const Grid g = make_grid(-1.0, 1.0, 401);
    const Field p = symmetrization_weight(composite(1.0, 0.0, 0.1), g);

    CHECK(p[200] == doctest::Approx(1.0).epsilon(1e-14));  // x = 0
    const double sech5 = 2.0 / (std::exp(5.0) + std::exp(-5.0));
    CHECK(p[400] == doctest::Approx(sech5 * sech5).epsilon(1e-12));
    CHECK(p[400] == doctest::Approx(1.8158e-4).epsilon(1e-4));
    for (double v : p.values) {
        CHECK(v > 0.0);
        CHECK(v <= 1.0 + 1e-15);
    }

    const Field q = symmetrization_weight(composite(0.0, 0.0, 0.1), g);
    for (double v : q.values) CHECK(v == 1.0);
}

TEST_CASE("symmetrization_weight: underflow guard") {
    const Grid g = make_grid(-1.0, 1.0, 401);
    CHECK_THROWS_AS(symmetrization_weight(composite(1.0, 0.0, 1e-3), g), Underflow);
}

TEST_CASE("build_symmetric_operator: exact symmetry and positive-weight gate") {
    const Grid g = make_grid(-1.0, 1.0, 101);
    const Field p = symmetrization_weight(composite(1.0, 0.0, 0.25), g);
    const TriDiag A = build_symmetric_operator(p, 0.25);
    CHECK(A.size() == g.n - 2);
    CHECK(A.lower == A.upper);

    std::vector<double> bad(static_cast<std::size_t>(g.n), 1.0);
    bad[50] = 0.0;
    CHECK_THROWS_AS(build_symmetric_operator(Field(g, bad), 0.25), ConfigError);
}

TEST_CASE("eigen_smallest: tiny explicit matrices") {
    TriDiag one(1);
    one.diag = {3.5};
    CHECK(eigen_smallest(one, 1)[0] == doctest::Approx(3.5).epsilon(1e-14));

    TriDiag two(2);
    two.diag = {2.0, 2.0};
    two.lower = {-1.0};
    two.upper = {-1.0};
    const std::vector<double> lam = eigen_smallest(two, 2);
    CHECK(lam[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lam[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("eigen_smallest: rejects nonsymmetric input") {
    TriDiag A(3);
    A.diag = {1.0, 1.0, 1.0};
    A.lower = {0.5, 0.5};
    A.upper = {0.5, 0.25};
    CHECK_THROWS_AS(eigen_smallest(A, 1), ConfigError);
}

TEST_CASE("eigen_smallest: Dirichlet Laplacian spectrum, eps-scaled") {
    const Grid g = make_grid(-1.0, 1.0, 801);
    const Field ones(g, std::vector<double>(801, 1.0));
    for (double eps : {0.5, 1.0}) {
        const std::vector<double> lam = eigen_smallest(build_symmetric_operator(ones, eps), 2);
        for (int m = 1; m <= 2; ++m) {
            const double exact = eps * std::pow(m * M_PI / 2.0, 2);
            CHECK(std::abs(lam[static_cast<std::size_t>(m - 1)] - exact) <= 1e-3 * exact);
        }
    }
}

TEST_CASE("eigen_smallest: agrees with the dense LAPACK solve on a random matrix") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const int n = 200;
    TriDiag A(n);
    for (int i = 0; i < n; ++i) A.diag[static_cast<std::size_t>(i)] = 2.0 + unif(rng);
    for (int i = 0; i < n - 1; ++i) {
        const double v = unif(rng);
        A.lower[static_cast<std::size_t>(i)] = v;
        A.upper[static_cast<std::size_t>(i)] = v;
    }
    const std::vector<double> mine = eigen_smallest(A, 5);
    const std::vector<double> dense = oracle::dense_sym_tridiag_eigenvalues(A);
    for (int i = 0; i < 5; ++i)
        CHECK(mine[static_cast<std::size_t>(i)] ==
              doctest::Approx(dense[static_cast<std::size_t>(i)]).epsilon(1e-12));
}

TEST_CASE("eigen_smallest_pairs: residual contract") {
    const Grid g = make_grid(-1.0, 1.0, 401);
    const Field p = symmetrization_weight(composite(1.0, 0.0, 0.3), g);
    const TriDiag A = build_symmetric_operator(p, 0.3);
    const EigenPairs pairs = eigen_smallest_pairs(A, 3);

    double anorm = 0.0;
    for (int i = 0; i < A.size(); ++i) {
        double s = std::abs(A.diag[static_cast<std::size_t>(i)]);
        if (i > 0) s += std::abs(A.lower[static_cast<std::size_t>(i - 1)]);
        if (i < A.size() - 1) s += std::abs(A.upper[static_cast<std::size_t>(i)]);
        anorm = std::max(anorm, s);
    }
    for (int k = 0; k < 3; ++k) {
        const auto& v = pairs.vectors[static_cast<std::size_t>(k)];
        std::vector<double> res(v.size());
        for (int i = 0; i < A.size(); ++i) {
            double s = A.diag[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
            if (i > 0) s += A.lower[static_cast<std::size_t>(i - 1)] * v[static_cast<std::size_t>(i - 1)];
            if (i < A.size() - 1) s += A.upper[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i + 1)];
            res[static_cast<std::size_t>(i)] =
                s - pairs.values[static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(i)];
        }
        double rnorm = 0.0, vnorm = 0.0;
        for (double x : res) rnorm += x * x;
        for (double x : v) vnorm += x * x;
        CHECK(std::sqrt(rnorm) / std::sqrt(vnorm) <= 1e-8 * anorm);
    }
}

TEST_CASE("linearized_spectrum: spectral gap at eps = 0.3") {
    const Grid g = make_grid(-1.0, 1.0, 2001);
    const SpectrumResult s = linearized_spectrum(composite(1.0, 0.0, 0.3), g, 3);
    CHECK(s.eigenvalues[0] > 0.0);
    CHECK(s.eigenvalues[0] < s.eigenvalues[1] / 10.0);
    CHECK(s.eigenvalues[1] < s.eigenvalues[2]);

    // brute-force dense eigensolve on the same matrix at n = 401
    const Grid g401 = make_grid(-1.0, 1.0, 401);
    const SpectrumResult s401 = linearized_spectrum(composite(1.0, 0.0, 0.3), g401, 1);
    const Field p = symmetrization_weight(composite(1.0, 0.0, 0.3), g401);
    const std::vector<double> dense =
        oracle::dense_sym_tridiag_eigenvalues(build_symmetric_operator(p, 0.3));
    CHECK(std::abs(s401.eigenvalues[0] - dense[0]) <= 1e-6 * dense[0]);
}

TEST_CASE("linearized_spectrum: alpha = 0 reduces to the Dirichlet Laplacian") {
    const Grid g = make_grid(-1.0, 1.0, 801);
    const SpectrumResult s = linearized_spectrum(composite(0.0, 0.0, 0.3), g, 2);
    for (int m = 1; m <= 2; ++m) {
        const double exact = 0.3 * std::pow(m * M_PI / 2.0, 2);
        CHECK(std::abs(s.eigenvalues[static_cast<std::size_t>(m - 1)] - exact) <= 1e-3 * exact);
    }
}

TEST_CASE("linearized_spectrum: principal eigenvalue shrinks with eps") {
    const Grid g = make_grid(-1.0, 1.0, 401);
    const SpectrumResult a = linearized_spectrum(composite(1.0, 0.0, 0.3), g, 1);
    const SpectrumResult b = linearized_spectrum(composite(1.0, 0.0, 0.15), g, 1);
    CHECK(b.eigenvalues[0] < a.eigenvalues[0]);
}

TEST_CASE("linearized_spectrum: eigenfunction structure") {
    const Grid g = make_grid(-1.0, 1.0, 401);
    const SpectrumResult s = linearized_spectrum(composite(1.0, 0.0, 0.25), g, 2);

    for (const Field& phi : s.eigenfunctions) {
        CHECK(phi[0] == 0.0);
        CHECK(phi[g.n - 1] == 0.0);
        CHECK(l2_norm(phi) == doctest::Approx(1.0).epsilon(1e-10));
    }
    // principal: even and nodeless; second: odd with one interior sign change
    const Field& phi1 = s.eigenfunctions[0];
    const Field& phi2 = s.eigenfunctions[1];
    CHECK(interior_sign_changes(phi1) == 0);
    CHECK(interior_sign_changes(phi2) == 1);
    const double amp1 = max_abs(phi1.values);
    const double amp2 = max_abs(phi2.values);
    for (int i = 0; i < g.n; ++i) {
        CHECK(std::abs(phi1[i] - phi1[g.n - 1 - i]) <= 1e-6 * amp1);
        CHECK(std::abs(phi2[i] + phi2[g.n - 1 - i]) <= 1e-6 * amp2);
    }
}

TEST_CASE("linearized_spectrum: all eigenvalues real positive across the lattice") {
    const Grid g = make_grid(-1.0, 1.0, 401);
    for (double alpha : {0.5, 1.0, 2.0})
        for (double eps : {0.1, 0.25}) {
            const SpectrumResult s = linearized_spectrum(composite(alpha, 0.0, eps), g, 3);
            CHECK(s.eigenvalues[0] > 0.0);
            CHECK(s.eigenvalues[0] < s.eigenvalues[1]);
            CHECK(s.eigenvalues[1] < s.eigenvalues[2]);
        }
}

TEST_CASE("similarity invariance: symmetrized vs dense nonsymmetric Phi-operator") {
    for (double eps : {0.3, 0.1}) {
        const Grid g = make_grid(-1.0, 1.0, 401);
        const Field p = symmetrization_weight(composite(1.0, 0.0, eps), g);
        const std::vector<double> sym = eigen_smallest(build_symmetric_operator(p, eps), 3);
        const std::vector<double> dense =
            oracle::dense_eigenvalues(oracle::phi_operator_dense(p, eps), g.n - 2);
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(sym[static_cast<std::size_t>(i)] - dense[static_cast<std::size_t>(i)]) <=
                  1e-6 * std::abs(sym[static_cast<std::size_t>(i)]));
    }
}

TEST_CASE("linearized_spectrum: composite and Newton equilibria agree on lambda1") {
    const Grid g = make_grid(-1.0, 1.0, 401);
    const CompositeProfile p = composite(1.0, 0.0, 0.1);
    const SpectrumResult a = linearized_spectrum(p, g, 1, EquilibriumSource::composite);
    const SpectrumResult b = linearized_spectrum(p, g, 1, EquilibriumSource::newton_steady);
    CHECK(std::abs(a.eigenvalues[0] - b.eigenvalues[0]) <= 0.01 * a.eigenvalues[0]);
}

TEST_CASE("linearized_spectrum: guards") {
    const Grid coarse = make_grid(-1.0, 1.0, 101);
    CHECK_THROWS_AS(linearized_spectrum(composite(1.0, 0.0, 0.1), coarse, 1), ResolutionError);

    const Grid g = make_grid(-1.0, 1.0, 801);
    CHECK_THROWS_AS(linearized_spectrum(composite(1.0, 0.0, 0.04), g, 1), PrecisionFloor);
    const SpectrumResult forced =
        linearized_spectrum(composite(1.0, 0.0, 0.04), g, 1, EquilibriumSource::composite, true);
    CHECK(forced.eigenvalues[0] > 0.0);
}

TEST_CASE("metastability_sweep: exponentially small principal eigenvalue") {
    const std::vector<double> eps_list = {0.3, 0.25, 0.2, 0.15, 0.1};
    const SweepResult sw = metastability_sweep(1.0, eps_list, 2);

    REQUIRE(sw.fit_valid);
    CHECK(sw.fit.slope < 0.0);
    CHECK(sw.fit.r_squared >= 0.95);

    // ln lambda1 strictly decreasing in 1/eps
    for (std::size_t i = 0; i + 1 < sw.rows.size(); ++i) {
        REQUIRE(sw.rows[i].status == "ok");
        CHECK(sw.rows[i + 1].lambdas[0] < sw.rows[i].lambdas[0]);
    }
    // lambda2 stays O(1) while lambda1 collapses
    const double l2_ref = sw.rows[0].lambdas[1];
    for (const SweepRow& row : sw.rows) {
        CHECK(row.lambdas[1] / l2_ref >= 0.1);
        CHECK(row.lambdas[1] / l2_ref <= 10.0);
    }
}

TEST_CASE("metastability_sweep: single entry skips the fit") {
    const std::vector<double> eps_list = {0.25};
    const SweepResult sw = metastability_sweep(1.0, eps_list, 2);
    CHECK_FALSE(sw.fit_valid);
    CHECK(sw.note == "NotEnoughPoints");
    REQUIRE(sw.rows.size() == 1);
    CHECK(sw.rows[0].status == "ok");
    CHECK(sw.rows[0].lambdas.size() == 2);
}

TEST_CASE("metastability_sweep: concurrent rows match the sequential result") {
    const std::vector<double> eps_list = {0.3, 0.25, 0.2, 0.15};
    const SweepResult seq = metastability_sweep(1.0, eps_list, 2, 1);
    const SweepResult par = metastability_sweep(1.0, eps_list, 2, 4);
    REQUIRE(seq.rows.size() == par.rows.size());
    for (std::size_t i = 0; i < seq.rows.size(); ++i) {
        CHECK(seq.rows[i].lambdas == par.rows[i].lambdas);  // bitwise
        CHECK(seq.rows[i].status == par.rows[i].status);
    }
}

TEST_CASE("metastability_sweep: precision floor without the override") {
    const std::vector<double> eps_list = {0.3, 0.01};
    CHECK_THROWS_AS(metastability_sweep(1.0, eps_list, 2), PrecisionFloor);
}

TEST_CASE("turning_point_model: comparison problem shares the structure") {
    const Grid g = make_grid(-1.0, 1.0, 2001);
    const std::vector<double> lam = turning_point_model(0.25, g, 2);
    CHECK(lam[0] > 0.0);
    CHECK(lam[0] < lam[1] / 5.0);

    // p at the turning point is 1
    const Field w = turning_point_weight(0.25, make_grid(-1.0, 1.0, 401));
    CHECK(w[200] == 1.0);

    // dense cross-check at n = 401
    const Grid g401 = make_grid(-1.0, 1.0, 401);
    const std::vector<double> mine = turning_point_model(0.25, g401, 2);
    const std::vector<double> dense = oracle::dense_sym_tridiag_eigenvalues(
        build_symmetric_operator(turning_point_weight(0.25, g401), 0.25));
    CHECK(std::abs(mine[0] - dense[0]) <= 1e-6 * dense[0]);

    // exponentially small lambda1 under the same fit oracle
    const std::vector<double> eps_list = {0.3, 0.2, 0.1};
    const SweepResult sw = turning_point_sweep(eps_list, 1);
    REQUIRE(sw.fit_valid);
    CHECK(sw.fit.slope < 0.0);
    CHECK(sw.fit.r_squared >= 0.95);
}
