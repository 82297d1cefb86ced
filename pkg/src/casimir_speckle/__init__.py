"""Mean Casimir-Polder attraction and its disorder-induced spatial variance.

A small polarizable sphere above a conducting plate feels the familiar
average potential; impurity scattering inside the metal adds a weak random
spatial modulation on top of it.  This package computes both: the mean
potential U(z) from the imaginary-frequency reflection integral (T = 0 and
finite temperature), and the relative variance

    var U(z) = P * U(z)^2 * F(z)

through a material strength P built from the electron-gas scales and a
universal dimensionless profile F(z) evaluated by Monte Carlo over the
correlated scattering modes.  Reduced units (distances against the plasma
wavelength, frequencies against the plasma frequency) keep the engines
material-agnostic; SI wrappers restore Joules at the surface.
"""

from .constants import CONSTANTS, PhysicalConstants
from .materials import (
    ConfigurationError,
    DerivedScales,
    Environment,
    MaterialSpec,
    SphereSpec,
    derive_scales,
    fluctuation_prefactor,
    load_preset,
    rms_fluctuation_scale,
    thermal_wavelength,
)
from .quadrature import CoordSpec, McPlan, QuadResult
from .electrodynamics import StaticDivergenceError
from .mean_potential import mean_cp_T, mean_cp_T0
from .variance import (
    FPoint,
    F_of_z,
    Mode,
    MomentumConfig,
    variance_T,
    variance_T0,
)

__version__ = "0.1.0"

__all__ = [
    "CONSTANTS",
    "PhysicalConstants",
    "ConfigurationError",
    "DerivedScales",
    "Environment",
    "MaterialSpec",
    "SphereSpec",
    "derive_scales",
    "fluctuation_prefactor",
    "load_preset",
    "rms_fluctuation_scale",
    "thermal_wavelength",
    "CoordSpec",
    "McPlan",
    "QuadResult",
    "StaticDivergenceError",
    "mean_cp_T",
    "mean_cp_T0",
    "FPoint",
    "F_of_z",
    "Mode",
    "MomentumConfig",
    "variance_T",
    "variance_T0",
    "__version__",
]
