"""Material scale derivation: electron-gas inputs to optical scales, the
disorder-strength prefactor, and the bundled presets."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimir_speckle.constants import CONSTANTS
from casimir_speckle.materials import (
    ConfigurationError,
    Environment,
    MaterialSpec,
    SphereSpec,
    derive_scales,
    fluctuation_prefactor,
    load_preset,
    rms_fluctuation_scale,
    thermal_wavelength,
)

GOLD = MaterialSpec(n=6.0e28, mean_free_path=3.77e-8)
NICHROME = MaterialSpec(n=9.0e28, mean_free_path=4.0e-9)


# ------------------------------------------------------- frozen oracles
# Every number below was derived by hand from the electron-gas relations
# k_F = (3 pi^2 n)^{1/3}, v_F = hbar k_F / m_e, omega_p^2 = n e^2/(eps0 m_e),
# gamma = v_F / l, before being frozen here.


def test_gold_scale_chain():
    s = derive_scales(GOLD)
    assert s.omega_p == pytest.approx(1.3818701754839508e16, rel=1e-10)
    assert s.gamma == pytest.approx(37190894698587.01, rel=1e-10)
    assert s.lambda_p == pytest.approx(1.3631177983437944e-7, rel=1e-10)
    assert s.lambda_gamma == pytest.approx(5.064819887955536e-5, rel=1e-10)
    assert s.k_F == pytest.approx(12111299674.14, rel=1e-9)
    assert s.lambda_F == pytest.approx(5.187870398908633e-10, rel=1e-10)
    assert s.v_F == pytest.approx(1402096.73, rel=1e-8)
    assert s.g == pytest.approx(s.lambda_p / s.lambda_gamma, rel=1e-12)
    assert s.k_F * s.mean_free_path == pytest.approx(456.596, rel=1e-5)
    assert not s.validity_warnings


def test_gold_disorder_prefactor():
    s = derive_scales(GOLD)
    assert fluctuation_prefactor(s) == pytest.approx(1.1455602172494872e-9, rel=1e-10)
    assert rms_fluctuation_scale(s) == pytest.approx(
        3.3846125586978006e-5, rel=1e-10
    )


def test_nichrome_vs_gold_ratio():
    pn = fluctuation_prefactor(derive_scales(NICHROME))
    pg = fluctuation_prefactor(derive_scales(GOLD))
    assert pn / pg == pytest.approx(11.543220412865724, rel=1e-8)
    assert math.sqrt(pn / pg) == pytest.approx(3.397531517567677, rel=1e-8)


def test_nichrome_scales():
    s = derive_scales(NICHROME)
    assert s.omega_p == pytest.approx(1.69244e16, rel=1e-4)
    assert s.lambda_gamma == pytest.approx(4.69446e-6, rel=1e-4)


# ------------------------------------------------------- construction


def test_preset_round_trip():
    gold = load_preset("gold")
    assert gold.n == pytest.approx(6.0e28)
    assert gold.mean_free_path == pytest.approx(3.77e-8)
    assert gold.model == "drude"
    nichrome = load_preset("nichrome")
    assert nichrome.n == pytest.approx(9.0e28)


def test_preset_unknown_name():
    with pytest.raises((ConfigurationError, FileNotFoundError)):
        load_preset("unobtainium")


def test_bulk_inputs_round_trip():
    s0 = derive_scales(GOLD)
    s1 = derive_scales(MaterialSpec(omega_p=s0.omega_p, gamma=s0.gamma))
    assert s1.lambda_p == pytest.approx(s0.lambda_p, rel=1e-12)
    assert s1.mean_free_path == pytest.approx(s0.mean_free_path, rel=1e-9)
    assert s1.k_F == pytest.approx(s0.k_F, rel=1e-9)


def test_conflicting_inputs_rejected():
    s0 = derive_scales(GOLD)
    with pytest.raises(ConfigurationError):
        derive_scales(
            MaterialSpec(
                n=GOLD.n,
                mean_free_path=GOLD.mean_free_path,
                omega_p=1.05 * s0.omega_p,
                gamma=s0.gamma,
            )
        )


def test_consistent_redundant_inputs_accepted():
    s0 = derive_scales(GOLD)
    s1 = derive_scales(
        MaterialSpec(
            n=GOLD.n,
            mean_free_path=GOLD.mean_free_path,
            omega_p=s0.omega_p,
            gamma=s0.gamma,
        )
    )
    assert s1.omega_p == s0.omega_p


def test_underspecified_rejected():
    with pytest.raises(ConfigurationError):
        derive_scales(MaterialSpec(n=6.0e28))
    with pytest.raises(ConfigurationError):
        derive_scales(MaterialSpec(omega_p=1e16))


def test_bad_model_rejected():
    with pytest.raises(ConfigurationError):
        derive_scales(MaterialSpec(n=6e28, mean_free_path=4e-8, model="lorentz"))


def test_dirty_metal_flagged():
    s = derive_scales(MaterialSpec(n=6.0e28, mean_free_path=2.0e-10))
    assert s.validity_warnings  # k_F l < 10: weak-disorder expansion shaky


@settings(max_examples=60, deadline=None)
@given(
    n=st.floats(min_value=1e27, max_value=1e30),
    ell=st.floats(min_value=1e-9, max_value=1e-7),
)
def test_density_scaling_laws(n, ell):
    """Doubling the carrier density: omega_p scales by sqrt 2, k_F by 2^(1/3),
    while gamma inherits only the v_F change."""
    s1 = derive_scales(MaterialSpec(n=n, mean_free_path=ell))
    s2 = derive_scales(MaterialSpec(n=2.0 * n, mean_free_path=ell))
    assert s2.omega_p / s1.omega_p == pytest.approx(math.sqrt(2.0), rel=1e-12)
    assert s2.k_F / s1.k_F == pytest.approx(2.0 ** (1.0 / 3.0), rel=1e-12)
    assert s2.gamma / s1.gamma == pytest.approx(2.0 ** (1.0 / 3.0), rel=1e-12)
    assert s1.lambda_p * s1.omega_p == pytest.approx(
        2.0 * math.pi * CONSTANTS.c, rel=1e-12
    )


# ------------------------------------------------------- collisionless limit


def test_collisionless_limit_prefactor_vanishes():
    s = derive_scales(MaterialSpec(omega_p=1.4e16, gamma=0.0, model="plasma"))
    assert s.lambda_gamma == math.inf
    assert fluctuation_prefactor(s) == 0.0
    assert rms_fluctuation_scale(s) == 0.0


# ------------------------------------------------------- environment


def test_thermal_wavelength_room_temperature():
    assert thermal_wavelength(300.0) == pytest.approx(7.63295e-6, rel=1e-5)
    assert Environment(temperature=300.0).lambda_T == thermal_wavelength(300.0)


def test_thermal_wavelength_rejects_nonpositive():
    with pytest.raises(ValueError):
        thermal_wavelength(0.0)
    with pytest.raises(ValueError):
        thermal_wavelength(-1.0)


def test_sphere_resonance_wavelength():
    sph = SphereSpec(alpha0=4.5e-39, omega0=2.0 * math.pi * CONSTANTS.c / 1e-7)
    assert sph.lambda0 == pytest.approx(1e-7, rel=1e-12)
