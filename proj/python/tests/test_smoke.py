"""Smoke tests for the python bindings."""

import math

import pytest

import burgers1d as b1


def test_grid_and_bc():
    g = b1.make_grid(-1.0, 1.0, 401)
    assert g.n == 401
    assert g.dx == pytest.approx(0.005)
    assert g.nodes()[0] == -1.0

    with pytest.raises(ValueError):
        b1.make_grid(-1.0, 1.0, 2)
    with pytest.raises(ValueError):
        b1.validate_bc(1.0, 1.0)
    bc = b1.validate_bc(1.0, -1.0)
    assert bc.beta == -1.0


def test_composite_profile_values():
    p = b1.composite(1.0, 0.0, 0.1)
    assert p.value(0.0) == 0.0
    assert p.value(-1.0) == pytest.approx(math.tanh(5.0), rel=1e-14)

    g = b1.make_grid(-1.0, 1.0, 401)
    r = b1.stationary_residual(p, g)
    assert max(abs(v) for v in r.values) <= 1e-8

    chk = b1.l2_bound_check(p, b1.make_grid(-1.0, 1.0, 4001))
    assert chk.norm_sq == pytest.approx(1.60003632, abs=1e-6)
    assert chk.norm_sq < chk.bound


def test_newton_agrees_with_composite():
    g = b1.make_grid(-1.0, 1.0, 801)
    p = b1.composite(1.0, 0.0, 0.1)
    res = b1.newton_solve_steady(0.1, b1.validate_bc(1.0, -1.0), p.sample(g))
    assert res.iterations <= 4
    diff = max(abs(u - p.value(x)) for u, x in zip(res.u.values, g.nodes()))
    assert diff <= 5e-4


def test_spectrum_and_gap():
    g = b1.make_grid(-1.0, 1.0, 401)
    s = b1.linearized_spectrum(b1.composite(1.0, 0.0, 0.3), g, 2)
    assert 0.0 < s.eigenvalues[0] < s.eigenvalues[1] / 10.0
    phi = s.eigenfunctions[0]
    assert phi.values[0] == 0.0 and phi.values[-1] == 0.0
    assert b1.l2_norm(phi) == pytest.approx(1.0, abs=1e-10)

    with pytest.raises(RuntimeError):
        b1.linearized_spectrum(b1.composite(1.0, 0.0, 0.01), g, 1)


def test_sweep_fit():
    sw = b1.metastability_sweep(1.0, [0.3, 0.25, 0.2], 1)
    assert sw.fit_valid
    assert sw.fit.slope < 0.0
    assert sw.fit.r_squared >= 0.95


def test_evolve_decay():
    eps = 0.3
    g = b1.make_grid(-1.0, 1.0, 401)
    p = b1.composite(1.0, 0.0, eps)
    s = b1.linearized_spectrum(p, g, 1)
    lam1 = s.eigenvalues[0]

    am = p.value(-1.0)
    bc = b1.BoundaryPair(am, -am)
    u0 = b1.perturbed_initial(p, s.eigenfunctions[0], 1e-3, g)
    tr = b1.evolve(u0, 3.0 / lam1, 0.01, eps, bc, 10, p.sample(g))
    assert tr.deviations[-1] <= 0.06 * tr.deviations[0]

    fit = b1.fit_decay(tr)
    assert fit.lambda_est == pytest.approx(lam1, rel=0.10)
