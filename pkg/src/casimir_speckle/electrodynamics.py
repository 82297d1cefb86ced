"""Imaginary-frequency electrodynamics of the vacuum/metal interface.

Everything here is evaluated at frequency i*xi (xi > 0 real), where the
permittivity is real and larger than one and all transverse decay constants
kappa = sqrt(q^2 + eps * xi^2 / c^2) are real positive.  The public scalar
functions work in SI units; the *_reduced helpers are vectorized over numpy
arrays and use dimensionless variables

    x = xi / omega_p,   Q = q c / omega_p,   g = gamma / omega_p,

with K = sqrt(x^2 + Q^2) and Kt = sqrt(eps x^2 + Q^2) the vacuum- and
metal-side decay constants in units of omega_p / c.

The static point xi = 0 is a genuine divergence of the metallic response
(eps ~ 1/xi) and is never evaluated numerically; touching it raises
StaticDivergenceError so callers must route through analytic limits.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .constants import CONSTANTS
from .materials import DerivedScales, SphereSpec


class StaticDivergenceError(ValueError):
    """The metallic response diverges at zero frequency; use analytic limits."""


# --------------------------------------------------------------------------
# Scalar SI-unit functions (the readable contract surface)
# --------------------------------------------------------------------------


def permittivity_iw(xi: float, scales: DerivedScales) -> float:
    """eps(i xi) for the configured conduction model.

    Drude: 1 + omega_p^2 / (xi (xi + gamma)); plasma: 1 + omega_p^2 / xi^2.
    Both are real and > 1 for xi > 0 and diverge as xi -> 0.
    """
    if xi == 0.0:
        raise StaticDivergenceError("eps(i xi) diverges at xi = 0")
    if xi < 0.0:
        raise ValueError("xi must be > 0 (imaginary-axis frequency)")
    if scales.model == "plasma":
        return 1.0 + scales.omega_p**2 / xi**2
    return 1.0 + scales.omega_p**2 / (xi * (xi + scales.gamma))


def polarizability_iw(xi: float, sphere: SphereSpec) -> float:
    """Single-resonance sphere polarizability alpha0 w0^2/(w0^2 + xi^2)."""
    if xi < 0.0:
        raise ValueError("xi must be >= 0")
    return sphere.alpha0 * sphere.omega0**2 / (sphere.omega0**2 + xi**2)


class LayerResponse(NamedTuple):
    """Fresnel amplitudes of the planar interface at (i xi, q).

    r_vm: reflection seen from vacuum; r_mm = -r_vm: reflection seen from
    the metal side; t_vm / t_mv: transmissions vacuum->metal / metal->vacuum.
    Energy-conservation analogue r_vm^2 + t_vm * t_mv = 1 holds per
    polarization.  kappa_v / kappa_m are the vacuum / metal decay constants.
    """

    r_vm_te: complex
    r_vm_tm: complex
    t_vm_te: complex
    t_mv_te: complex
    t_vm_tm: complex
    t_mv_tm: complex
    kappa_v: float
    kappa_m: complex

    @property
    def r_mm_te(self) -> complex:
        return -self.r_vm_te

    @property
    def r_mm_tm(self) -> complex:
        return -self.r_vm_tm


def layer_response(xi: float, q: float, scales: DerivedScales) -> LayerResponse:
    """Fresnel bundle of the vacuum/metal interface at imaginary frequency.

    q is the conserved in-plane wavenumber [1/m].  For eps = 1 the interface
    disappears (r = 0, t = 1); for q = 0 both polarizations reduce to the
    normal-incidence amplitude (sqrt(eps)-1)/(sqrt(eps)+1) up to sign
    convention; for q -> infinity the TE reflection dies while TM saturates
    at (eps-1)/(eps+1).
    """
    if q < 0.0:
        raise ValueError("q must be >= 0")
    eps = complex(permittivity_iw(xi, scales))
    kv = math.sqrt(q**2 + (xi / CONSTANTS.c) ** 2)
    km = np.sqrt(q**2 + eps * (xi / CONSTANTS.c) ** 2)
    seps = np.sqrt(eps)

    den_te = kv + km
    den_tm = eps * kv + km
    return LayerResponse(
        r_vm_te=(kv - km) / den_te,
        r_vm_tm=(eps * kv - km) / den_tm,
        t_vm_te=2.0 * kv / den_te,
        t_mv_te=2.0 * km / den_te,
        t_vm_tm=2.0 * seps * kv / den_tm,
        t_mv_tm=2.0 * seps * km / den_tm,
        kappa_v=kv,
        kappa_m=km,
    )


def polarization_dot(
    pol_in: str,
    pol_out: str,
    xi: float,
    q_in: float,
    q_out: float,
    phi: float,
) -> float:
    """Overlap of vacuum-side unit polarization vectors of two modes.

    phi is the azimuthal angle from the incoming to the outgoing in-plane
    wavevector.  TE vectors are in-plane transverse, so TE.TE = cos(phi);
    TM vectors tilt out of plane by the decay constant, giving

        TM.TM = -(q_in q_out + kappa_in kappa_out cos(phi)) c^2 / xi^2,

    which for a mode paired with itself (phi = 0) is -(1 + 2 q^2 c^2/xi^2).
    Cross terms are odd in phi and vanish in the forward direction.
    """
    if pol_in not in ("TE", "TM") or pol_out not in ("TE", "TM"):
        raise ValueError("polarizations must be 'TE' or 'TM'")
    if pol_in == "TE" and pol_out == "TE":
        return math.cos(phi)
    if xi == 0.0:
        raise StaticDivergenceError("TM polarization vectors diverge at xi = 0")
    if xi < 0.0:
        raise ValueError("xi must be > 0")
    k_in = math.sqrt(q_in**2 + (xi / CONSTANTS.c) ** 2)
    k_out = math.sqrt(q_out**2 + (xi / CONSTANTS.c) ** 2)
    c_over_xi = CONSTANTS.c / xi
    if pol_in == "TM" and pol_out == "TM":
        return -(q_in * q_out + k_in * k_out * math.cos(phi)) * c_over_xi**2
    if pol_in == "TE":  # TE -> TM
        return -(k_out * c_over_xi) * math.sin(phi)
    return -(k_in * c_over_xi) * math.sin(phi)  # TM -> TE


# --------------------------------------------------------------------------
# Vectorized reduced-unit helpers (hot paths of the integration engines)
# --------------------------------------------------------------------------


def eps_iw_reduced(x, g: float, model: str = "drude"):
    """eps(i xi) with x = xi/omega_p; vectorized, x > 0 elementwise."""
    x = np.asarray(x, dtype=float)
    if model == "plasma":
        return 1.0 + 1.0 / x**2
    return 1.0 + 1.0 / (x * (x + g))


def alpha_factor_reduced(x, l0: float = 1.0):
    """alpha(i xi)/alpha(0) = 1/(1 + (x*l0)^2) with l0 = lambda0/lambda_p."""
    x = np.asarray(x, dtype=float)
    return 1.0 / (1.0 + (x * l0) ** 2)


class ModePack(NamedTuple):
    """Per-mode reduced quantities used by the correlated-branch sums."""

    K: np.ndarray  # vacuum decay constant sqrt(x^2 + Q^2)
    Kt: np.ndarray  # metal decay constant sqrt(eps x^2 + Q^2)
    r_te: np.ndarray
    r_tm: np.ndarray
    tvm_te: np.ndarray
    tmv_te: np.ndarray
    orm_te: np.ndarray  # 1 + r_mm (TE), metal-side escape enhancement
    tvm_tm: np.ndarray
    tmv_tm: np.ndarray
    orm_tm: np.ndarray  # 1 + r_mm (TM)


def mode_pack(x, Q, eps) -> ModePack:
    """Assemble the reduced Fresnel bundle for arrays of (x, Q, eps)."""
    x = np.asarray(x, dtype=float)
    Q = np.asarray(Q, dtype=float)
    eps = np.asarray(eps, dtype=float)
    K = np.sqrt(x**2 + Q**2)
    Kt = np.sqrt(eps * x**2 + Q**2)
    seps = np.sqrt(eps)
    den_te = K + Kt
    den_tm = eps * K + Kt
    return ModePack(
        K=K,
        Kt=Kt,
        r_te=(K - Kt) / den_te,
        r_tm=(eps * K - Kt) / den_tm,
        tvm_te=2.0 * K / den_te,
        tmv_te=2.0 * Kt / den_te,
        orm_te=2.0 * Kt / den_te,
        tvm_tm=2.0 * seps * K / den_tm,
        tmv_tm=2.0 * seps * Kt / den_tm,
        orm_tm=2.0 * Kt / den_tm,
    )
