"""Shared fixtures: real gold, and a synthetic metal with a wide Drude window.

The synthetic material keeps gold's plasma frequency but sets gamma =
0.01 omega_p (lambda_gamma = 100 lambda_p), which opens a clean decade
between the plasma and relaxation wavelengths for slope fits.
"""

import math

import pytest

from casimir_speckle.constants import CONSTANTS
from casimir_speckle.materials import MaterialSpec, SphereSpec, derive_scales


@pytest.fixture(scope="session")
def gold_scales():
    return derive_scales(MaterialSpec(n=6.0e28, mean_free_path=3.77e-8))


@pytest.fixture(scope="session")
def window_scales(gold_scales):
    wp = gold_scales.omega_p
    return derive_scales(MaterialSpec(omega_p=wp, gamma=0.01 * wp))


def sphere_matched_to(scales) -> SphereSpec:
    """Sphere whose resonance wavelength equals the plasma wavelength."""
    return SphereSpec(
        alpha0=4.5e-39, omega0=2.0 * math.pi * CONSTANTS.c / scales.lambda_p
    )


@pytest.fixture(scope="session")
def gold_sphere(gold_scales):
    return sphere_matched_to(gold_scales)


@pytest.fixture(scope="session")
def window_sphere(window_scales):
    return sphere_matched_to(window_scales)
