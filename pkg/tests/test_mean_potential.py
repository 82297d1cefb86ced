"""Specular (mean) potential: the dimensionless profile, its closed-form
anchors, and the Matsubara-summed finite-temperature version."""

import math

import pytest

from casimir_speckle.constants import CONSTANTS
from casimir_speckle.materials import (
    MaterialSpec,
    SphereSpec,
    derive_scales,
    thermal_wavelength,
)
from casimir_speckle.mean_potential import (
    mean_cp_T,
    mean_cp_T0,
    mean_prefactor,
    mean_thermal_leading,
    reduced_mean_profile,
    reduced_thermal_profile,
    reduced_thermal_term,
    reduced_thermal_zero,
)

GOLD = derive_scales(MaterialSpec(n=6.0e28, mean_free_path=3.77e-8))


def _mirror_exact(z_bar: float) -> float:
    # perfect mirror + dispersionless sphere: the x and Q integrals fold
    # into a single radial exponential with a closed form at every height
    return -3.0 / (128.0 * math.pi**4 * z_bar**4)


@pytest.mark.parametrize("z_bar", [0.05, 0.5, 3.0, 25.0])
def test_mirror_profile_closed_form(z_bar):
    res = reduced_mean_profile(z_bar, g=0.0, mirror=True, l0=0.0)
    assert res.converged
    assert res.value == pytest.approx(_mirror_exact(z_bar), rel=1e-7)


def test_profile_error_estimate_is_proportionate():
    res = reduced_mean_profile(3.0, g=GOLD.g)
    assert res.err_est < 1e-6 * abs(res.value)


def test_profile_is_negative_and_decaying():
    vals = [reduced_mean_profile(zb, g=GOLD.g).value for zb in (0.5, 1.0, 4.0, 20.0)]
    assert all(v < 0.0 for v in vals)
    assert all(abs(a) > abs(b) for a, b in zip(vals, vals[1:]))


def test_retarded_limit_recovers_static_image_form():
    # far above the surface the Drude profile approaches the perfect-mirror
    # dispersionless law; the residual is the finite-conductivity correction
    zb = 100.0
    drude = reduced_mean_profile(zb, g=GOLD.g).value
    assert drude / _mirror_exact(zb) == pytest.approx(1.0, abs=0.02)


def test_si_assembly_matches_reduced_profile(gold_sphere):
    z = 5.0 * GOLD.lambda_p
    u = mean_cp_T0(z, GOLD, gold_sphere)
    prof = reduced_mean_profile(5.0, g=GOLD.g, l0=1.0)
    assert u.value == pytest.approx(mean_prefactor(GOLD, gold_sphere) * prof.value, rel=1e-10)
    assert u.value < 0.0


def test_plasma_vs_drude_mean_nearly_equal():
    plasma = derive_scales(MaterialSpec(omega_p=GOLD.omega_p, gamma=0.0, model="plasma"))
    d = reduced_mean_profile(2.0, g=GOLD.g).value
    p = reduced_mean_profile(2.0, g=0.0, model="plasma").value
    assert d == pytest.approx(p, rel=0.02)
    assert plasma.g == 0.0


# ------------------------------------------------------- finite temperature


def test_zero_frequency_term_closed_form():
    assert reduced_thermal_zero(2.0) == pytest.approx(
        -1.0 / (32.0 * math.pi**3 * 8.0), rel=1e-14
    )


def test_matsubara_terms_shrink_with_frequency():
    t0 = abs(reduced_thermal_zero(3.0))
    t1 = abs(reduced_thermal_term(0.05, 3.0, g=GOLD.g).value)
    t2 = abs(reduced_thermal_term(0.2, 3.0, g=GOLD.g).value)
    assert t0 > t1 > t2


def test_classical_limit_dominates_far_out(gold_sphere):
    # five thermal wavelengths out, the half-weight zero-frequency term IS
    # the potential: U -> -kB T alpha(0) / (16 pi eps0 z^3)
    T = 300.0
    z = 5.0 * thermal_wavelength(T)
    u = mean_cp_T(z, T, GOLD, gold_sphere)
    assert u.value / mean_thermal_leading(z, T, gold_sphere) == pytest.approx(
        1.0, abs=0.05
    )


def test_thermal_profile_matches_zero_temperature_limit(gold_sphere):
    # at z << lambda_T the discrete sum converges to the T = 0 integral
    z = 5.0 * GOLD.lambda_p
    cold = mean_cp_T(z, 30.0, GOLD, gold_sphere).value
    t0 = mean_cp_T0(z, GOLD, gold_sphere).value
    assert cold == pytest.approx(t0, rel=2e-3)


def test_thermal_profile_reduced_consistency():
    t_T = 500.0
    res = reduced_thermal_profile(4.0, t_T, g=GOLD.g)
    assert res.converged
    # the sum is dominated by, and bracketed by, its zero-frequency term
    zero = reduced_thermal_zero(4.0) / t_T
    assert res.value < 0.0
    assert abs(res.value) > 0.5 * abs(zero)


def test_rejects_nonpositive_height(gold_sphere):
    with pytest.raises(ValueError):
        reduced_mean_profile(0.0, g=GOLD.g)
    with pytest.raises(ValueError):
        mean_cp_T0(-1e-9, GOLD, gold_sphere)
