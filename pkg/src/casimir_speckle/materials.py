"""Material parameterization and derived electron-gas scales.

A metal is specified either microscopically by (electron density n, elastic
mean free path l) or directly by (plasma frequency omega_p, relaxation rate
gamma); the free-electron relations

    k_F = (3 pi^2 n)^(1/3),   v_F = hbar k_F / m_e,
    omega_p^2 = n e^2 / (eps0 m_e),   gamma = v_F / l

close the loop between the two.  The derived scales feed both the dielectric
response (plasma/relaxation frequencies) and the strength of the disorder-
induced potential fluctuations, which is controlled by the dimensionless
prefactor (2 pi lambda_F)^2 l / (lambda_gamma^2 lambda_p).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

from .constants import CONSTANTS

_VALID_MODELS = ("drude", "plasma")


class ConfigurationError(ValueError):
    """Raised for under- or inconsistently specified material input."""


@dataclass(frozen=True)
class MaterialSpec:
    """Input description of the metal half-space.

    Provide (n, mean_free_path) or (omega_p, gamma); if both pairs are
    given they must agree (the microscopic pair wins, a mismatch above 1%
    is an error).  model selects the dielectric function used for the
    average response; the plasma model treats gamma as zero inside the
    permittivity while keeping it available for the fluctuation prefactor.
    """

    n: float | None = None  # electron density [1/m^3]
    mean_free_path: float | None = None  # [m]
    omega_p: float | None = None  # [rad/s]
    gamma: float | None = None  # [rad/s]
    model: str = "drude"

    def __post_init__(self):
        if self.model not in _VALID_MODELS:
            raise ConfigurationError(f"model must be one of {_VALID_MODELS}")
        micro = self.n is not None and self.mean_free_path is not None
        direct = self.omega_p is not None and self.gamma is not None
        if not (micro or direct):
            raise ConfigurationError(
                "material needs (n, mean_free_path) or (omega_p, gamma)"
            )


@dataclass(frozen=True)
class DerivedScales:
    omega_p: float  # plasma frequency [rad/s]
    gamma: float  # relaxation rate [rad/s]
    lambda_p: float  # plasma wavelength 2 pi c / omega_p [m]
    lambda_gamma: float  # relaxation wavelength 2 pi c / gamma [m]
    k_F: float  # Fermi wavenumber [1/m]
    lambda_F: float  # Fermi wavelength 2 pi / k_F [m]
    v_F: float  # Fermi velocity [m/s]
    mean_free_path: float  # v_F / gamma [m]
    sigma0: float  # static conductivity eps0 omega_p^2 / gamma [S/m]
    model: str = "drude"
    validity_warnings: tuple[str, ...] = ()

    @property
    def g(self) -> float:
        """Reduced dissipation gamma/omega_p = lambda_p/lambda_gamma."""
        return self.gamma / self.omega_p


@dataclass(frozen=True)
class SphereSpec:
    """Dipolar sphere: alpha(i xi) = alpha0 * omega0^2 / (omega0^2 + xi^2)."""

    alpha0: float  # static polarizability [C m^2 / V]
    omega0: float  # resonance frequency [rad/s]

    def __post_init__(self):
        if not (self.alpha0 > 0 and self.omega0 > 0):
            raise ValueError("alpha0 and omega0 must be positive")

    @property
    def lambda0(self) -> float:
        return 2.0 * math.pi * CONSTANTS.c / self.omega0


@dataclass(frozen=True)
class Environment:
    """Thermal environment; T = 0 means no thermal wavelength exists."""

    temperature: float = 0.0

    def __post_init__(self):
        if self.temperature < 0.0:
            raise ValueError("temperature must be >= 0")

    @property
    def lambda_T(self) -> float:
        if self.temperature == 0.0:
            raise ValueError("lambda_T is undefined at T = 0")
        return thermal_wavelength(self.temperature)


def thermal_wavelength(T: float) -> float:
    """lambda_T = hbar c / (k_B T); about 7.6 microns at room temperature."""
    if not T > 0.0:
        raise ValueError("thermal wavelength requires T > 0")
    return CONSTANTS.hbar * CONSTANTS.c / (CONSTANTS.kB * T)


def _micro_to_bulk(n: float, mean_free_path: float):
    k_F = (3.0 * math.pi**2 * n) ** (1.0 / 3.0)
    v_F = CONSTANTS.hbar * k_F / CONSTANTS.me
    omega_p = math.sqrt(n * CONSTANTS.e**2 / (CONSTANTS.eps0 * CONSTANTS.me))
    gamma = v_F / mean_free_path
    return k_F, v_F, omega_p, gamma


def derive_scales(spec: MaterialSpec) -> DerivedScales:
    """Populate every derived scale from a MaterialSpec.

    The electron-gas consistency loop l = v_F/gamma is re-checked to 1e-12
    relative; k_F*l < 10 (weak-disorder condition failing) produces a
    validity warning, not an error.
    """
    two_pi_c = 2.0 * math.pi * CONSTANTS.c
    warnings: list[str] = []

    if spec.n is not None and spec.mean_free_path is not None:
        n, ell = spec.n, spec.mean_free_path
        if not (n > 0 and ell > 0):
            raise ConfigurationError("n and mean_free_path must be positive")
        k_F, v_F, omega_p, gamma = _micro_to_bulk(n, ell)
        if spec.omega_p is not None and not math.isclose(
            spec.omega_p, omega_p, rel_tol=0.01
        ):
            raise ConfigurationError(
                "given omega_p disagrees with the (n, mean_free_path) value "
                f"by more than 1% ({spec.omega_p:.4g} vs {omega_p:.4g})"
            )
        if spec.gamma is not None and not math.isclose(
            spec.gamma, gamma, rel_tol=0.01
        ):
            raise ConfigurationError(
                "given gamma disagrees with the (n, mean_free_path) value "
                f"by more than 1% ({spec.gamma:.4g} vs {gamma:.4g})"
            )
    else:
        omega_p, gamma = spec.omega_p, spec.gamma
        if not omega_p > 0:
            raise ConfigurationError("omega_p must be positive")
        if gamma < 0:
            raise ConfigurationError("gamma must be >= 0")
        # Invert the free-electron relations to recover the microscopic side.
        n = omega_p**2 * CONSTANTS.eps0 * CONSTANTS.me / CONSTANTS.e**2
        k_F = (3.0 * math.pi**2 * n) ** (1.0 / 3.0)
        v_F = CONSTANTS.hbar * k_F / CONSTANTS.me
        ell = v_F / gamma if gamma > 0 else math.inf

    # Close the loop to guard against editing one relation without the other.
    if gamma > 0:
        assert abs(ell - v_F / gamma) <= 1e-12 * ell

    if math.isfinite(ell) and k_F * ell < 10.0:
        warnings.append(
            f"k_F*l = {k_F * ell:.2f} < 10: the weak-disorder expansion "
            "behind the fluctuation model is marginal here"
        )

    return DerivedScales(
        omega_p=omega_p,
        gamma=gamma,
        lambda_p=two_pi_c / omega_p,
        lambda_gamma=two_pi_c / gamma if gamma > 0 else math.inf,
        k_F=k_F,
        lambda_F=2.0 * math.pi / k_F,
        v_F=v_F,
        mean_free_path=ell,
        sigma0=CONSTANTS.eps0 * omega_p**2 / gamma if gamma > 0 else math.inf,
        model=spec.model,
        validity_warnings=tuple(warnings),
    )


def fluctuation_prefactor(scales: DerivedScales) -> float:
    """Dimensionless variance prefactor (2 pi lambda_F)^2 l / (lambda_gamma^2 lambda_p).

    This number multiplies the universal profile F(z) to give the relative
    potential variance; its square root sets the rms relative fluctuation.
    It is linear in gamma at fixed electron gas (l/lambda_gamma^2 ~ gamma),
    so the dissipationless limit returns exactly zero.
    """
    if scales.gamma == 0.0 or not math.isfinite(scales.lambda_gamma):
        return 0.0
    return (
        (2.0 * math.pi * scales.lambda_F) ** 2
        * scales.mean_free_path
        / (scales.lambda_gamma**2 * scales.lambda_p)
    )


def rms_fluctuation_scale(scales: DerivedScales) -> float:
    """Square root of the variance prefactor."""
    return math.sqrt(fluctuation_prefactor(scales))


# --------------------------------------------------------------------------
# Presets
# --------------------------------------------------------------------------


def load_preset(name: str) -> MaterialSpec:
    """Load a shipped material preset ("gold", "nichrome") or a JSON path.

    The JSON schema is {name, n_per_m3, mean_free_path_m, model}.
    """
    try:
        ref = resources.files("casimir_speckle.presets").joinpath(f"{name}.json")
        data = json.loads(ref.read_text())
    except FileNotFoundError:
        try:
            with open(name, "r") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigurationError(f"unknown material preset {name!r}") from exc
    return MaterialSpec(
        n=data["n_per_m3"],
        mean_free_path=data["mean_free_path_m"],
        model=data.get("model", "drude"),
    )
