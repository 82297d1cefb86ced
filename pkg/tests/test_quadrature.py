"""Integration engine: adaptive panels, the semi-infinite map, the stratified
importance-sampled MC, and the anti-diagonal double sum."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimir_speckle.quadrature import (
    CoordSpec,
    McPlan,
    double_sum_adaptive,
    integrate_adaptive_1d,
    integrate_semi_infinite,
    mc_integrate,
    rng_for,
)


# ---------------------------------------------------------------- panels


def test_polynomial_exact():
    res = integrate_adaptive_1d(lambda x: x**6, 0.0, 2.0, rel_tol=1e-12)
    assert res.converged
    assert res.value == pytest.approx(128.0 / 7.0, rel=1e-13)


def test_oscillatory():
    res = integrate_adaptive_1d(
        lambda x: np.cos(7 * x) ** 2, 0.0, 2 * math.pi, rel_tol=1e-12
    )
    assert res.value == pytest.approx(math.pi, rel=1e-12)


def test_stiff_oscillation_against_closed_form():
    # Int_0^inf e^{-x} sin(20 x) dx = 20/401; truncating at 10 changes it
    # below 1e-4 relative, well inside the generous tolerance used here.
    res = integrate_adaptive_1d(
        lambda x: np.exp(-x) * np.sin(20 * x), 0.0, 10.0, rel_tol=1e-10
    )
    assert res.value == pytest.approx(20.0 / 401.0, rel=1e-3)
    assert res.err_est < 1e-6 * abs(res.value)


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-3.0, max_value=3.0))
def test_semi_infinite_exponential_any_scale(log10_s):
    """Int_0^inf e^{-x/s} dx = s across six orders of magnitude of scale."""
    s = 10.0**log10_s
    res = integrate_semi_infinite(lambda x: np.exp(-x / s), scale=s, rel_tol=1e-10)
    assert res.value == pytest.approx(s, rel=1e-8)


def test_semi_infinite_survives_bad_scale_hint():
    res = integrate_semi_infinite(lambda x: np.exp(-x), scale=30.0, rel_tol=1e-10)
    assert res.value == pytest.approx(1.0, rel=1e-7)


def test_semi_infinite_gaussian():
    res = integrate_semi_infinite(lambda x: np.exp(-(x**2)), scale=1.0, rel_tol=1e-11)
    assert res.value == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-9)


def test_semi_infinite_power_times_decay():
    # Int x^3 e^{-x} = 6
    res = integrate_semi_infinite(lambda x: x**3 * np.exp(-x), scale=1.0)
    assert res.value == pytest.approx(6.0, rel=1e-8)


# ---------------------------------------------------------------- RNG


def test_rng_streams_reproducible_and_distinct():
    a = rng_for(123, 0, 4).random(8)
    b = rng_for(123, 0, 4).random(8)
    c = rng_for(123, 0, 5).random(8)
    d = rng_for(123, 1, 4).random(8)
    e = rng_for(124, 0, 4).random(8)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)
    assert not np.array_equal(a, e)


# ---------------------------------------------------------------- coords


def test_uniform_coord_maps_and_normalizes():
    spec = CoordSpec(kind="uniform", lo=1.0, hi=3.0)
    u = np.linspace(0.0, 1.0, 11, endpoint=False)
    y, pdf = spec.draw(u)
    assert y.min() >= 1.0 and y.max() < 3.0
    assert np.allclose(pdf, 0.5)
    assert np.allclose(y, 1.0 + 2.0 * u)


def test_mixexp_pdf_matches_analytic_mixture():
    spec = CoordSpec(kind="mixexp", scale=0.2)
    u = rng_for(7, 0, 0).random(4000)
    y, pdf = spec.draw(u)
    s, w = spec.scale, spec.wide_weight
    ws = spec.wide_factor * s
    expected = (1.0 - w) / s * np.exp(-y / s) + w / ws * np.exp(-y / ws)
    assert np.allclose(pdf, expected, rtol=1e-12)
    assert (y > 0.0).all()


# ---------------------------------------------------------------- MC


def _exp5(pts):
    return np.exp(-pts.sum(axis=1))


_EXP5_COORDS = [CoordSpec(kind="mixexp", scale=1.0)] * 5


def test_mc_5d_exponential_unbiased():
    res = mc_integrate(_exp5, _EXP5_COORDS, McPlan(seed=42, n_samples=200_000))
    assert res.converged
    assert res.err_est < 0.01
    assert abs(res.value - 1.0) < 4.0 * res.err_est


def test_mc_reproducible_bitwise():
    plan = McPlan(seed=99, n_samples=50_000)
    r1 = mc_integrate(_exp5, _EXP5_COORDS, plan)
    r2 = mc_integrate(_exp5, _EXP5_COORDS, plan)
    assert r1.value == r2.value
    assert r1.err_est == r2.err_est


def test_mc_error_shrinks_with_samples():
    small = mc_integrate(_exp5, _EXP5_COORDS, McPlan(seed=3, n_samples=40_000))
    big = mc_integrate(_exp5, _EXP5_COORDS, McPlan(seed=3, n_samples=640_000))
    assert big.err_est < small.err_est / 2.0


def test_mc_stratification_does_not_hurt():
    """First-coordinate stratification should match or beat a single slab
    on a smooth integrand, averaged over seeds."""
    errs_strat, errs_flat = [], []
    for seed in range(10):
        errs_strat.append(
            mc_integrate(
                _exp5, _EXP5_COORDS, McPlan(seed=seed, n_samples=40_000, n_strata=8)
            ).err_est
        )
        errs_flat.append(
            mc_integrate(
                _exp5, _EXP5_COORDS, McPlan(seed=seed, n_samples=40_000, n_strata=1)
            ).err_est
        )
    assert np.mean(errs_strat) <= 1.05 * np.mean(errs_flat)


def test_mc_7d_gaussian_blob():
    # Int over [0,inf)^2 x [0,2pi) x ... of a separable product with a known
    # value: two radial exponentials, one uniform angle pair, three more
    # radials -> scales multiply; angles contribute their full measure.
    coords = [
        CoordSpec(kind="mixexp", scale=0.5),
        CoordSpec(kind="mixexp", scale=2.0),
        CoordSpec(kind="uniform", lo=0.0, hi=2 * math.pi),
        CoordSpec(kind="mixexp", scale=1.0),
        CoordSpec(kind="uniform", lo=0.0, hi=2 * math.pi),
        CoordSpec(kind="mixexp", scale=1.0),
        CoordSpec(kind="mixexp", scale=1.0),
    ]

    def f(pts):
        x0, x1, th0, x2, th1, x3, x4 = pts.T
        return (
            np.exp(-x0 / 0.5 - x1 / 2.0 - x2 - x3 - x4)
            * np.cos(th0) ** 2
            * np.sin(th1) ** 2
        )

    exact = 0.5 * 2.0 * 1.0 * 1.0 * 1.0 * math.pi * math.pi
    res = mc_integrate(f, coords, McPlan(seed=8, n_samples=300_000))
    assert abs(res.value - exact) < 4.0 * res.err_est
    assert res.err_est / exact < 0.02


def test_mc_rejects_nonfinite_integrand():
    def bad(pts):
        out = np.ones(len(pts))
        out[0] = np.inf
        return out

    with pytest.raises(FloatingPointError):
        mc_integrate(bad, _EXP5_COORDS, McPlan(seed=1, n_samples=16_000))


def test_mc_minimum_sample_guard():
    with pytest.raises(ValueError):
        McPlan(seed=1, n_samples=100)


# ---------------------------------------------------------------- sums


def test_double_sum_geometric():
    # sum_{n,m>=1} r^{n+m} = (r/(1-r))^2; r = 0.5 -> exactly 1
    res = double_sum_adaptive(lambda n, m: 0.5 ** (n + m), tail_tol=1e-10)
    assert res.value == pytest.approx(1.0, rel=1e-6)


def test_double_sum_exponential():
    res = double_sum_adaptive(lambda n, m: math.exp(-(n + m)), tail_tol=1e-12)
    exact = (1.0 / (math.e - 1.0)) ** 2
    assert res.value == pytest.approx(exact, rel=1e-8)


def test_double_sum_single_dominant_term():
    # heavily front-loaded: the (1,1) term carries almost everything
    res = double_sum_adaptive(lambda n, m: math.exp(-8.0 * (n + m - 2)), tail_tol=1e-9)
    exact = (1.0 / (1.0 - math.exp(-8.0))) ** 2
    assert res.value == pytest.approx(exact, rel=1e-6)
