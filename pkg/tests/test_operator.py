"""Bernstein basis, basis-form and spectral operator, companions P, Q, g_n.

The basis form works pointwise through moments and quadrature; the spectral
form scales coefficient blocks.  Both must agree, and the companions must
satisfy their exact block identities.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from durrmeyer import (
    BernsteinIndex,
    SpectralCoefficients,
    WeightConfig,
    apply_P_spectral,
    apply_Q,
    apply_durrmeyer,
    apply_durrmeyer_spectral,
    basis_eval,
    basis_moment,
    bernstein_basis,
    build_g_n,
    diff_operator_1d,
    eigenvalue_mu,
    eigenvalue_mu_over_n,
    index_range,
    interval_rule,
    lp_norm,
    make_plan,
    project,
    projection_rule,
    simplex_rule_2d,
    synthesize,
)

FLAT = WeightConfig(1, (0.0, 0.0))


def triangle_points(rng, count):
    u = rng.uniform(0.0, 1.0, count)
    v = rng.uniform(0.0, 1.0, count)
    return np.column_stack([u, v * (1.0 - u)])


def test_partition_of_unity_interval():
    rng = np.random.default_rng(101)
    x = rng.uniform(0.0, 1.0, 100)
    for n in (1, 7, 13):
        total = np.zeros_like(x)
        for k in index_range(n, 1):
            total += bernstein_basis(BernsteinIndex(n, k), x)
        assert np.max(np.abs(total - 1.0)) <= 1e-12, n


def test_partition_of_unity_triangle():
    rng = np.random.default_rng(102)
    pts = triangle_points(rng, 100)
    for n in (2, 7):
        total = np.zeros(pts.shape[0])
        for k in index_range(n, 2):
            total += bernstein_basis(BernsteinIndex(n, k), pts)
        assert np.max(np.abs(total - 1.0)) <= 1e-12, n


def test_bernstein_spot_values():
    assert abs(bernstein_basis(BernsteinIndex(2, (1,)), 0.5) - 0.5) <= 1e-15
    for n in (1, 4, 9):
        assert abs(bernstein_basis(BernsteinIndex(n, (0,)), 0.0) - 1.0) <= 1e-15
        assert abs(bernstein_basis(BernsteinIndex(n, (n,)), 1.0) - 1.0) <= 1e-15
    # triangle corner: k = (n, 0) peaks at (1, 0)
    assert abs(bernstein_basis(BernsteinIndex(3, (3, 0)), np.array([1.0, 0.0])) - 1.0) <= 1e-15


def test_flat_weight_moments_are_uniform():
    # with the flat weight every degree-n basis polynomial has mass 1/(n+1)
    for n in (1, 5, 10):
        for k in range(n + 1):
            got = basis_moment(FLAT, n, k)
            assert abs(got - 1.0 / (n + 1)) <= 1e-15, (n, k)


def test_basis_moment_matches_quadrature_interval():
    rng = np.random.default_rng(103)
    for alphas in [(0.5, 0.5), (-0.5, 2.0), (3.0, -0.9)]:
        cfg = WeightConfig(1, alphas)
        for _ in range(6):
            n = int(rng.integers(1, 21))
            k = int(rng.integers(0, n + 1))
            rule = interval_rule(alphas, n + 2)
            quad = float(rule.weights @ bernstein_basis(BernsteinIndex(n, (k,)), rule.nodes))
            got = basis_moment(cfg, n, k)
            assert abs(got - quad) <= 1e-10 * max(quad, 1e-300), (alphas, n, k)


def test_basis_moment_matches_quadrature_triangle():
    cfg = WeightConfig(2, (0.5, 0.0, 1.0))
    n = 8
    rule = simplex_rule_2d(cfg, n)
    for k in [(0, 0), (3, 2), (8, 0), (2, 6)]:
        quad = float(rule.weights @ bernstein_basis(BernsteinIndex(n, k), rule.nodes))
        got = basis_moment(cfg, n, k)
        assert abs(got - quad) <= 1e-10 * max(quad, 1e-300), k


def test_operator_fixes_constants():
    grid = np.linspace(0.0, 1.0, 33)
    for alphas in [(0.0, 0.0), (0.5, -0.25)]:
        plan = make_plan(WeightConfig(1, alphas), 9)
        vals = apply_durrmeyer(plan, lambda x: np.ones_like(x), grid)
        assert np.max(np.abs(vals - 1.0)) <= 1e-12
    plan2 = make_plan(WeightConfig(2, (0.0, 0.0, 0.0)), 5)
    pts = triangle_points(np.random.default_rng(104), 40)
    vals2 = apply_durrmeyer(plan2, lambda p: np.ones(p.shape[0]), pts)
    assert np.max(np.abs(vals2 - 1.0)) <= 1e-12


def test_degree_two_operator_halves_the_linear_part():
    # rho = 1 for the flat weight, so mu(2, 1) = 2 / 4 = 1/2
    assert abs(eigenvalue_mu(FLAT, 2, 1) - 0.5) <= 1e-15
    plan = make_plan(FLAT, 2)
    grid = np.linspace(0.0, 1.0, 21)
    got = apply_durrmeyer(plan, lambda x: x - 0.5, grid)
    assert np.max(np.abs(got - 0.5 * (grid - 0.5))) <= 1e-12


def test_positivity():
    plan = make_plan(FLAT, 8, f_degree=40)
    grid = np.linspace(0.0, 1.0, 101)
    vals = apply_durrmeyer(plan, lambda x: np.abs(np.sin(7.0 * x)), grid)
    assert vals.min() >= -1e-13
    plan2 = make_plan(WeightConfig(2, (0.5, 0.5, 0.5)), 6, f_degree=30)
    pts = triangle_points(np.random.default_rng(105), 60)
    vals2 = apply_durrmeyer(plan2, lambda p: np.exp(-p[:, 0] - p[:, 1]), pts)
    assert vals2.min() >= -1e-13


def test_l1_mass_is_conserved():
    # self-adjointness plus M_n 1 = 1 forces the weighted integral of M_n f
    # to equal that of f; for f >= 0 this is exactly the L1 norm
    for alphas in [(0.0, 0.0), (0.5, 0.5)]:
        cfg = WeightConfig(1, alphas)
        plan = make_plan(cfg, 10, f_degree=8)
        f = lambda x: (x - 0.3) ** 2 + 0.05
        rule = interval_rule(alphas, 24)
        f_mass = lp_norm(f(rule.nodes), rule, 1)
        m_mass = lp_norm(apply_durrmeyer(plan, f, rule.nodes), rule, 1)
        assert abs(f_mass - m_mass) <= 1e-12 * f_mass


def test_l2_contraction():
    rng = np.random.default_rng(106)
    for alphas in [(0.0, 0.0), (-0.5, -0.5), (2.0, 0.0)]:
        cfg = WeightConfig(1, alphas)
        coeffs = SpectralCoefficients.from_flat(cfg, rng.uniform(-1.0, 1.0, 9))
        for n in (2, 8, 32):
            out = apply_durrmeyer_spectral(cfg, n, coeffs)
            assert out.norm2() <= coeffs.norm2() * (1.0 + 1e-9)


def test_sup_bound_via_averages():
    # every output value is a convex-ish combination of weighted averages of
    # f over the inner rule, so it cannot exceed max |f| over those nodes
    plan = make_plan(FLAT, 12, f_degree=40)
    f = lambda x: np.sin(9.0 * x) + 0.3 * x
    node_sup = np.max(np.abs(f(plan.rule.nodes)))
    grid = np.linspace(0.0, 1.0, 2001)
    got = np.max(np.abs(apply_durrmeyer(plan, f, grid)))
    assert got <= node_sup * (1.0 + 1e-12)


def test_self_adjointness():
    rng = np.random.default_rng(107)
    for alphas in [(0.0, 0.0), (0.5, -0.25)]:
        cfg = WeightConfig(1, alphas)
        f = np.polynomial.Polynomial(rng.uniform(-1.0, 1.0, 7))
        g = np.polynomial.Polynomial(rng.uniform(-1.0, 1.0, 8))
        n = 10
        plan = make_plan(cfg, n, f_degree=7)
        rule = interval_rule(alphas, 24)
        mf = apply_durrmeyer(plan, f, rule.nodes)
        mg = apply_durrmeyer(plan, g, rule.nodes)
        lhs = float(rule.weights @ (mf * g(rule.nodes)))
        rhs = float(rule.weights @ (f(rule.nodes) * mg))
        scale = lp_norm(f(rule.nodes), rule, 2) * lp_norm(g(rule.nodes), rule, 2)
        assert abs(lhs - rhs) <= 1e-9 * scale, alphas


def test_operators_commute():
    rng = np.random.default_rng(108)
    cfg = WeightConfig(1, (0.5, 0.5))
    coeffs = SpectralCoefficients.from_flat(cfg, rng.uniform(-1.0, 1.0, 13))
    a = apply_durrmeyer_spectral(cfg, 4, apply_durrmeyer_spectral(cfg, 9, coeffs))
    b = apply_durrmeyer_spectral(cfg, 9, apply_durrmeyer_spectral(cfg, 4, coeffs))
    assert np.max(np.abs(a.flat() - b.flat())) <= 1e-12
    c = apply_P_spectral(cfg, apply_durrmeyer_spectral(cfg, 6, coeffs))
    d = apply_durrmeyer_spectral(cfg, 6, apply_P_spectral(cfg, coeffs))
    assert np.max(np.abs(c.flat() - d.flat())) <= 1e-12


def test_eigenvalue_series_identity():
    """1 - mu(n, j) = j(j+rho) * sum over ell > n of mu(ell, j)/(ell(ell+rho)).

    The series is summed to ell = 10^4; the remainder is positive and is
    bounded by replacing mu with 1, which integrates in closed form.
    """
    L = 10_000
    for alphas, rho in [((-0.5, -0.5), 0.0), ((0.0, 0.0), 1.0), ((1.0, 1.0), 3.0)]:
        cfg = WeightConfig(1, alphas)
        assert abs(cfg.rho - rho) <= 1e-15
        for j in (1, 2, 4):
            for n in (6, 12):
                ells = np.arange(n + 1, L + 1, dtype=float)
                mu_tail = eigenvalue_mu_over_n(cfg, ells, j)
                partial = j * (j + rho) * float(np.sum(mu_tail / (ells * (ells + rho))))
                gap = (1.0 - eigenvalue_mu(cfg, n, j)) - partial
                if rho > 0.0:
                    tail_bound = j * (j + rho) / rho * math.log1p(rho / L)
                else:
                    tail_bound = j * j / L
                assert -1e-12 <= gap <= tail_bound + 1e-12, (alphas, j, n, gap)


def test_q_identity():
    # P(M_n f) = n Q_n(M_n f - f) blockwise
    rng = np.random.default_rng(109)
    for alphas in [(0.0, 0.0), (0.5, 0.5), (1.0, -0.5)]:
        cfg = WeightConfig(1, alphas)
        coeffs = SpectralCoefficients.from_flat(cfg, rng.uniform(-1.0, 1.0, 13))
        for n in (3, 8, 15):
            lhs = apply_P_spectral(cfg, apply_durrmeyer_spectral(cfg, n, coeffs))
            rhs = float(n) * apply_Q(cfg, n, apply_durrmeyer_spectral(cfg, n, coeffs) - coeffs)
            assert np.max(np.abs(lhs.flat() - rhs.flat())) <= 1e-11, (alphas, n)


def test_diff_operator_closed_forms():
    # (x(1-x) g')' for g = x - 1/2 is 1 - 2x
    out = diff_operator_1d([-0.5, 1.0])
    assert np.allclose(out.coef, [1.0, -2.0], atol=1e-15)
    # constants are annihilated
    zero = diff_operator_1d([4.2])
    assert np.max(np.abs(zero.coef)) == 0.0
    # the degree-2 basis polynomial of the flat weight is an eigenfunction
    # with eigenvalue -2 * (2 + 1) = -6
    phi2 = np.sqrt(5.0) * np.polynomial.Polynomial([1.0, -6.0, 6.0])
    got = diff_operator_1d(phi2)
    want = -6.0 * phi2
    assert np.allclose(got.coef, want.coef[: got.coef.size], atol=1e-12)


def test_basis_and_spectral_forms_agree_interval():
    rng = np.random.default_rng(110)
    grid = np.linspace(0.0, 1.0, 33)
    for alphas in [(0.0, 0.0), (0.5, -0.25)]:
        cfg = WeightConfig(1, alphas)
        poly = np.polynomial.Polynomial(rng.uniform(-1.0, 1.0, 7))
        L = 10
        coeffs = project(poly, cfg, L, rule=projection_rule(cfg, L, f_degree=6))
        for n in (4, 9):
            plan = make_plan(cfg, n, f_degree=6)
            basis_vals = apply_durrmeyer(plan, poly, grid)
            spectral_vals = synthesize(apply_durrmeyer_spectral(cfg, n, coeffs), grid)
            assert np.max(np.abs(basis_vals - spectral_vals)) <= 1e-8, (alphas, n)


def test_basis_and_spectral_forms_agree_triangle():
    cfg = WeightConfig(2, (0.0, 0.0, 0.0))
    f = lambda p: p[:, 0] ** 2 * p[:, 1] + 0.3 * p[:, 0] - 0.1
    L, n = 5, 5
    coeffs = project(f, cfg, L, rule=projection_rule(cfg, L, f_degree=3))
    pts = triangle_points(np.random.default_rng(111), 50)
    plan = make_plan(cfg, n, f_degree=3)
    basis_vals = apply_durrmeyer(plan, f, pts)
    spectral_vals = synthesize(apply_durrmeyer_spectral(cfg, n, coeffs), pts)
    assert np.max(np.abs(basis_vals - spectral_vals)) <= 1e-8


def test_g_n_telescoping():
    rng = np.random.default_rng(112)
    for alphas in [(0.0, 0.0), (1.0, 1.0)]:
        cfg = WeightConfig(1, alphas)
        coeffs = SpectralCoefficients.from_flat(cfg, rng.uniform(-1.0, 1.0, 11))
        for n in (2, 5, 8):
            g, t_n = build_g_n(cfg, n, coeffs)
            lhs = apply_P_spectral(cfg, g).flat()
            gap = (apply_durrmeyer_spectral(cfg, n, coeffs)
                   - apply_durrmeyer_spectral(cfg, 2 * n, coeffs)).flat()
            assert np.max(np.abs(lhs - gap / t_n)) <= 1e-10, (alphas, n)


def test_g_n_weight_total_and_constants():
    cfg = WeightConfig(1, (-0.5, -0.5))  # rho = 0, weights are 1/k^2
    const = SpectralCoefficients.from_flat(cfg, [1.7])
    for n in (1, 4, 7):
        g, t_n = build_g_n(cfg, n, const)
        assert np.max(np.abs(g.flat() - const.flat())) <= 1e-15
        want = float(sum(Fraction(1, k * k) for k in range(n + 1, 2 * n + 1)))
        assert abs(t_n - want) <= 1e-15 * want, n


def test_validation_errors():
    with pytest.raises(ValueError):
        BernsteinIndex(3, (4,))
    with pytest.raises(ValueError):
        BernsteinIndex(2, (-1,))
    with pytest.raises(ValueError):
        BernsteinIndex(2, ())
    with pytest.raises(ValueError):
        make_plan(FLAT, 0)
    with pytest.raises(ValueError):
        apply_Q(FLAT, 0, SpectralCoefficients.from_flat(FLAT, np.ones(3)))
    with pytest.raises(ValueError):
        basis_moment(WeightConfig(2, (0.0, 0.0, 0.0)), 3, (1,))
    plan = make_plan(FLAT, 3)
    with pytest.raises(ValueError):
        apply_durrmeyer(plan, lambda x: np.ones(3), 0.5)
