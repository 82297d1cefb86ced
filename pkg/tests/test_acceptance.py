"""End-to-end acceptance: closed-form anchors, the three scaling windows,
material constants, engine cross-checks, and reproducibility.

Each check states its tolerance inline.  The sampling budgets are sized so
the Monte Carlo error is a small fraction of each tolerance; the whole
module runs in a few minutes.
"""

import csv
import math

import numpy as np
import pytest

from casimir_speckle.asymptotics import (
    C1,
    C2,
    f_far,
    f_intermediate,
    f_thermal,
    fit_loglog_slope,
)
from casimir_speckle.constants import CONSTANTS
from casimir_speckle.materials import (
    MaterialSpec,
    derive_scales,
    fluctuation_prefactor,
    rms_fluctuation_scale,
    thermal_wavelength,
)
from casimir_speckle.mean_potential import mean_cp_T, mean_cp_T0, mean_thermal_leading
from casimir_speckle.quadrature import McPlan
from casimir_speckle.variance import (
    F_of_z,
    momentum_integral_mc,
    momentum_integral_quad,
    momentum_kernel_reduced,
    static_mode_contribution,
    variance_T0,
    variance_integrand,
)
from casimir_speckle import cli

from conftest import sphere_matched_to


def _f_points(scales, sphere, z_bars, n_samples, seed, temperature=0.0):
    plan = McPlan(seed=seed, n_samples=n_samples)
    return [
        F_of_z(zb * scales.lambda_p, scales, sphere, plan, temperature=temperature)
        for zb in z_bars
    ]


# ----------------------------------------------------------- mean anchors


def test_retarded_mean_anchor(gold_scales, gold_sphere):
    """100 plasma wavelengths out, the T = 0 potential reproduces the
    dispersionless perfect-mirror law within 2%."""
    z = 100.0 * gold_scales.lambda_p
    u = mean_cp_T0(z, gold_scales, gold_sphere).value
    mirror_law = (
        -3.0
        * CONSTANTS.hbar
        * CONSTANTS.c
        * gold_sphere.alpha0
        / (32.0 * math.pi**2 * CONSTANTS.eps0 * z**4)
    )
    assert u / mirror_law == pytest.approx(1.0, abs=0.02)


def test_classical_thermal_anchor(gold_scales, gold_sphere):
    """Five thermal wavelengths out at room temperature, the potential is the
    half-weight zero-frequency (classical) term within 5%."""
    T = 300.0
    z = 5.0 * thermal_wavelength(T)
    u = mean_cp_T(z, T, gold_scales, gold_sphere).value
    assert u / mean_thermal_leading(z, T, gold_sphere) == pytest.approx(1.0, abs=0.05)


# ----------------------------------------------------------- near window


def test_near_zone_cubic_slope(gold_scales, gold_sphere):
    """Inside the plasma wavelength F(z) climbs as the inverse cube:
    log-log slope -3 +- 0.2 over z in [0.02, 0.1] lambda_p."""
    z_bars = np.geomspace(0.02, 0.1, 5)
    pts = _f_points(gold_scales, gold_sphere, z_bars, 1_200_000, seed=301)
    fit = fit_loglog_slope(
        [p.z for p in pts], [p.F for p in pts], [p.F_err for p in pts]
    )
    assert fit.n_used == 5
    assert fit.slope == pytest.approx(-3.0, abs=0.2)


# ----------------------------------------------------------- intermediate window


@pytest.fixture(scope="module")
def intermediate_points(window_scales, window_sphere):
    z_bars = np.geomspace(3.0, 30.0, 5)
    return _f_points(window_scales, window_sphere, z_bars, 4_000_000, seed=401)


def test_intermediate_zone_quartic_slope(intermediate_points):
    """Between the plasma and relaxation wavelengths the decay is quartic:
    slope -4 +- 0.15 over z in [3, 30] lambda_p."""
    fit = fit_loglog_slope(
        [p.z for p in intermediate_points],
        [p.F for p in intermediate_points],
        [p.F_err for p in intermediate_points],
    )
    assert fit.slope == pytest.approx(-4.0, abs=0.15)


def test_intermediate_zone_plateau_amplitude(intermediate_points, window_scales):
    """The plateau F (z/lambda_p)^4 should sit at the frozen intermediate
    amplitude within 30%.

    The geometric-mean residual of this computation sits near half the
    frozen amplitude (the calibration subcommand reports the same factor),
    so this check records a real, reproducible discrepancy rather than a
    sampling fluctuation -- see the calibration note in the README.
    """
    ratios = [
        p.F / f_intermediate(p.z, window_scales) for p in intermediate_points
    ]
    residual = math.exp(np.mean(np.log(ratios)))
    assert 0.7 < residual < 1.3


# ----------------------------------------------------------- far window


@pytest.fixture(scope="module")
def far_points(window_scales, window_sphere):
    lg_over_lp = window_scales.lambda_gamma / window_scales.lambda_p  # 100
    z_bars = np.geomspace(3.0, 30.0, 5) * lg_over_lp
    return _f_points(window_scales, window_sphere, z_bars, 6_000_000, seed=501)


def test_far_zone_slope(far_points):
    """Beyond the relaxation wavelength the decay steepens to the 4.5 power:
    slope -4.5 +- 0.2 over z in [3, 30] lambda_gamma."""
    fit = fit_loglog_slope(
        [p.z for p in far_points],
        [p.F for p in far_points],
        [p.F_err for p in far_points],
    )
    assert fit.slope == pytest.approx(-4.5, abs=0.2)


def test_far_zone_amplitude(far_points, window_scales):
    """The far-window amplitude matches the frozen constant within 30%."""
    ratios = [p.F / f_far(p.z, window_scales) for p in far_points]
    residual = math.exp(np.mean(np.log(ratios)))
    assert 0.7 < residual < 1.3


# ----------------------------------------------------------- thermal window


def test_thermal_collapse(window_scales, window_sphere):
    """With lambda_T = 1000 lambda_p and lambda_gamma = 100 lambda_p, the
    finite-temperature profile over z in [1.5, 3] lambda_T follows the
    saddle-point law: the ratio to it is flat within a factor 2, and the
    fitted exponential rate equals 8 pi / lambda_T within 15%."""
    lam_T = 1000.0 * window_scales.lambda_p
    T = CONSTANTS.hbar * CONSTANTS.c / (CONSTANTS.kB * lam_T)
    z_over_lt = np.array([1.5, 2.0, 2.5, 3.0])
    pts = _f_points(
        window_scales,
        window_sphere,
        z_over_lt * 1000.0,
        1_500_000,
        seed=601,
        temperature=T,
    )
    assert all(p.regime == "thermal" for p in pts)

    ratios = [p.F / f_thermal(p.z, window_scales, T) for p in pts]
    assert max(ratios) / min(ratios) < 2.0

    # strip the cubic prefactor, fit the exponential rate
    y = [math.log(p.F / (p.z / lam_T) ** 3) for p in pts]
    z = [p.z for p in pts]
    rate = -np.polyfit(z, y, 1)[0]
    assert rate * lam_T / (8.0 * math.pi) == pytest.approx(1.0, abs=0.15)


# ----------------------------------------------------------- static modes


def test_zero_frequency_annihilation(gold_scales, gold_sphere):
    """Disorder scattering dies linearly at zero frequency: the physical
    integrand at xi1 = 1e-4 omega_p is at least 10x below its value at
    1e-3 omega_p, and the static Matsubara rows enter the double sum as an
    exact analytic zero rather than a numerical limit."""
    wp, c = gold_scales.omega_p, CONSTANTS.c
    q = 0.5 * wp / c
    th = math.pi / 3.0
    z = 2.0 * gold_scales.lambda_p

    def at(xi1):
        return abs(
            variance_integrand(
                xi1, 0.1 * wp, q, q, th, q, th, z, gold_scales, gold_sphere
            )
        )

    assert at(1e-4 * wp) <= at(1e-3 * wp) / 10.0
    assert static_mode_contribution() == 0.0


# ----------------------------------------------------------- dissipationless null


def test_dissipationless_variance_null(gold_scales, gold_sphere):
    """gamma -> 0 kills the disorder prefactor exactly, so var U = 0 with no
    sampling, while the dimensionless kernel stays finite inside the domain."""
    plasma = derive_scales(
        MaterialSpec(omega_p=gold_scales.omega_p, gamma=0.0, model="plasma")
    )
    res = variance_T0(
        2.0 * plasma.lambda_p, plasma, gold_sphere, McPlan(seed=1, n_samples=10_000)
    )
    assert res.value == 0.0 and res.err_est == 0.0 and res.n_evals == 0
    assert fluctuation_prefactor(plasma) == 0.0
    k = momentum_kernel_reduced(0.1, 0.2, 0.3, 0.4, 1.0, 0.5, 2.0, 2.0, 0.0, "plasma")
    assert np.isfinite(float(k)) and float(k) > 0.0


# ----------------------------------------------------------- material constants


def test_material_fluctuation_constants(gold_scales):
    """Gold's rms relative-fluctuation scale is 3.4e-5 within 5%; nichrome's
    variance prefactor is 11-12x gold's."""
    assert rms_fluctuation_scale(gold_scales) == pytest.approx(3.4e-5, rel=0.05)
    nichrome = derive_scales(MaterialSpec(n=9.0e28, mean_free_path=4.0e-9))
    ratio = fluctuation_prefactor(nichrome) / fluctuation_prefactor(gold_scales)
    assert 11.0 < ratio < 12.0


# ----------------------------------------------------------- engine cross-check


def test_mc_matches_deterministic_quadrature():
    """The stratified importance-sampled MC and a 40x32 tensor-product
    quadrature agree within 3 sigma on the 5D momentum integral at five
    random frequency/height triples."""
    rng = np.random.default_rng(20260819)
    for k in range(5):
        x1, x2 = np.exp(rng.uniform(math.log(0.02), math.log(0.3), size=2))
        zb = rng.uniform(2.0, 10.0)
        det = momentum_integral_quad(x1, x2, zb, 0.01, n_radial=40, n_angle=32)
        mc = momentum_integral_mc(
            x1, x2, zb, 0.01, McPlan(seed=700 + k, n_samples=2_000_000)
        )
        pull = (mc.value - det) / mc.err_est
        assert abs(pull) < 3.0, f"triple {k}: pull {pull:+.2f}"


# ----------------------------------------------------------- reproducibility


def test_bit_identical_csv_reruns(tmp_path, capsys, monkeypatch):
    """Identical config and seed produce byte-identical CSV output twice."""
    monkeypatch.delenv("CASIMIR_SPECKLE_CACHE", raising=False)
    args = ["--samples", "20000", "--seed", "11", "--z-grid", "2:8:3:log"]
    out1, out2 = tmp_path / "one.csv", tmp_path / "two.csv"
    assert cli.main(["fvar", "--out", str(out1), *args]) == 0
    assert cli.main(["fvar", "--out", str(out2), *args]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
    with open(out1, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 3 and all(float(r["F"]) > 0 for r in rows)
