import math

import numpy as np
import pytest

from qtlab.weights import (
    BumpWeight,
    ConvergenceError,
    QuadratureSpec,
    adaptive_quad,
    h1_tilde,
    h1_tilde_11,
    h1_tilde_11_direct,
    h1_tilde_11_literal,
    h1_tilde_11_literal_direct,
    integrate,
    integrate_square,
    tilde_transform,
    tilde_transform_many,
)

# mpmath.quad at 30 digits, canonical bump on (1, 2)
INT_BUMP = 0.00702985840660965623924127053035
INT_BUMP_SQ = 0.0000969866415335882327182094848949
TILDE_AT_1 = -0.0047480897600519950220115550308
TILDE_AT_10 = 0.000000710339608554549089903805490197

W = BumpWeight(1.0, 2.0, 1.0)
SPEC = QuadratureSpec()


def test_bump_shape():
    assert W(1.0) == 0.0 and W(2.0) == 0.0 and W(0.5) == 0.0 and W(3.0) == 0.0
    assert W(1.5) == pytest.approx(math.exp(-4))
    xs = np.linspace(1.01, 1.99, 50)
    assert np.all(W.values(xs) > 0)
    assert np.allclose(W.values(xs), W.sample(xs), rtol=1e-15)


@pytest.mark.parametrize("args", [(0.0, 1.0, 1.0), (2.0, 1.0, 1.0), (1.0, 2.0, -1.0)])
def test_bump_validation(args):
    with pytest.raises(ValueError):
        BumpWeight(*args)


def test_integrate_golden():
    assert integrate(BumpWeight(1, 2, 0.0)) == 0.0
    assert integrate(W, SPEC) == pytest.approx(INT_BUMP, rel=1e-14)
    assert integrate_square(W, SPEC) == pytest.approx(INT_BUMP_SQ, rel=1e-13)
    assert abs(integrate(W, SPEC) - integrate(W.shifted(2.0), SPEC)) < 1e-12


def test_convergence_failure_reports_estimate():
    with pytest.raises(ConvergenceError) as info:
        adaptive_quad(lambda x: np.abs(x - 1.3141) ** 0.5, 0.0, 2.0, QuadratureSpec(1e-15, 1e-15, 2))
    c = 1.3141
    exact = 2 / 3 * (c**1.5 + (2 - c) ** 1.5)
    assert info.value.estimate == pytest.approx(exact, rel=0.05)
    assert info.value.error > 0


def test_vector_integrand_shares_mesh():
    res = adaptive_quad(lambda x: np.vstack([x, x**2, np.sin(x)]), 0.0, 1.0, SPEC)
    assert np.allclose(res.value, [0.5, 1 / 3, 1 - math.cos(1.0)], rtol=1e-13)


def test_tilde_transform_values():
    assert tilde_transform(W, 0.0) == pytest.approx(integrate(W), rel=1e-13)
    assert tilde_transform(W, 1.0) == pytest.approx(TILDE_AT_1, rel=1e-12)
    assert abs(tilde_transform(W, 10.0) - TILDE_AT_10) < 1e-16
    # the decay constant is measured: C = |W~(10)| 10^4 ~ 7.1e-3, and it bounds the tail further out
    C = abs(TILDE_AT_10) * 1e4
    assert all(abs(tilde_transform(W, xi)) <= C * xi**-4 for xi in (12.0, 20.0, 35.0))


@pytest.mark.parametrize("xi", [0.3, 1.7, 4.2, 11.0])
def test_tilde_parity(xi):
    plus, minus = tilde_transform_many(W, [xi, -xi])
    cos_moment = adaptive_quad(lambda x: np.cos(2 * np.pi * xi * x) * W.values(x), 1, 2, SPEC).value
    assert plus + minus == pytest.approx(2 * cos_moment, abs=1e-15)


def test_tilde_many_matches_scalar():
    xis = [-3.0, 0.0, 0.5, 7.25, 40.0]
    many = tilde_transform_many(W, xis)
    single = [tilde_transform(W, x) for x in xis]
    assert np.allclose(many, single, rtol=1e-10, atol=1e-17)


@pytest.mark.parametrize("B", [2, 4])
def test_smooth_decay(B):
    grid = np.linspace(1, 100, 199)
    prod = np.abs(tilde_transform_many(W, grid)) * grid**B
    assert np.isfinite(prod).all()
    assert prod[grid > 10].max() <= prod[grid <= 10].max()


def test_order_consistency():
    for spec in (QuadratureSpec(1e-8, 1e-8), QuadratureSpec(1e-12, 1e-12)):
        coarse = adaptive_quad(W.values, 1, 2, spec)
        fine = adaptive_quad(W.values, 1, 2, spec.halved())
        assert abs(coarse.value - fine.value) <= max(coarse.error, 1e-17)


def test_h1_examples():
    i1, i2 = integrate(W), integrate_square(W)
    Wn = W.scaled(1 / i1)
    Phin = W.scaled(1 / math.sqrt(i2))
    assert h1_tilde_11(Wn, Phin) == pytest.approx(1.0, rel=1e-12)
    assert h1_tilde_11(W.scaled(2 / i1), W.scaled(math.sqrt(3 / i2))) == pytest.approx(6.0, rel=1e-12)
    assert h1_tilde_11_literal(W.scaled(2 / i1), W.scaled(3 / i1)) == pytest.approx(18.0, rel=1e-12)
    assert h1_tilde_11(W, W) == pytest.approx(INT_BUMP * INT_BUMP_SQ, rel=1e-13)


def test_h1_product_vs_direct():
    tight = QuadratureSpec(1e-18, 1e-13)
    assert abs(h1_tilde_11(W, W, tight) - h1_tilde_11_direct(W, W, tight)) < 1e-10
    Phi = BumpWeight(0.5, 3.0, 2.0)
    assert h1_tilde_11(W, Phi, tight) == pytest.approx(h1_tilde_11_direct(W, Phi, tight), rel=1e-10)
    assert h1_tilde(W, Phi, 1.0, tight) == pytest.approx(h1_tilde_11(W, Phi, tight), rel=1e-12)


def test_literal_triple_integral():
    loose = QuadratureSpec(1e-14, 1e-8)
    assert h1_tilde_11_literal_direct(W, W, loose) == pytest.approx(INT_BUMP**3, rel=1e-7)


def test_h1_mellin_decays():
    vals = [abs(h1_tilde(W, W, u)) for u in (1.0, 2.0, 3.0)]
    # Phi supported in (1, 2): the Mellin transform grows at most like 2^u
    assert vals[1] <= 2 * vals[0] and vals[2] <= 2 * vals[1]
