"""Disorder-averaged atom–surface potential above a conducting half-space.

The T = 0 potential is an imaginary-frequency integral over the sphere's
polarizability and the interface reflections,

    U(z) = (hbar / (eps0 c^2)) (2 pi)^{-2}
           * Int dxi Int q dq  xi^2 alpha(i xi) e^{-2 kappa z} / (2 kappa)
           * [ r_TE - r_TM (1 + 2 q^2 c^2 / xi^2) ],

which is negative pointwise (attraction).  In reduced variables
(x = xi/omega_p, Q = q c/omega_p, zb = z/lambda_p) it factorizes into a
material-independent prefactor

    U = (hbar omega_p^4 alpha0 / (4 pi^2 eps0 c^3)) * Ibar(zb),

with a dimensionless profile Ibar computed here by nested adaptive
quadrature.  At T > 0 the frequency integral becomes a Matsubara sum over
x_n = n / t_T (t_T = lambda_T / lambda_p), whose n = 0 term is taken as the
analytic x -> 0 limit -1/(32 pi^3 zb^3): the static point itself is a
divergence of the metal response and is never evaluated.

A perfect-mirror override (r_TE = -1, r_TM = +1) exists for calibration:
combined with a dispersionless sphere (l0 = 0) the profile is exactly
Ibar = -3/(128 pi^4 zb^4) at every distance, i.e. the familiar
-3 hbar c alpha0 / (32 pi^2 eps0 z^4) law, which anchors every 2-pi and
sign convention in this module.
"""

from __future__ import annotations

import math

import numpy as np

from .constants import CONSTANTS
from .electrodynamics import (
    StaticDivergenceError,
    alpha_factor_reduced,
    eps_iw_reduced,
    layer_response,
    polarizability_iw,
)
from .materials import DerivedScales, SphereSpec, thermal_wavelength
from .quadrature import QuadResult, integrate_semi_infinite

_FOUR_PI = 4.0 * math.pi


def mean_prefactor(scales: DerivedScales, sphere: SphereSpec) -> float:
    """hbar omega_p^4 alpha0 / (4 pi^2 eps0 c^3), the SI scale of U."""
    return (
        CONSTANTS.hbar
        * scales.omega_p**4
        * sphere.alpha0
        / (4.0 * math.pi**2 * CONSTANTS.eps0 * CONSTANTS.c**3)
    )


def mean_integrand(
    xi: float,
    q: float,
    z: float,
    scales: DerivedScales,
    sphere: SphereSpec,
    mirror: bool = False,
) -> float:
    """Full SI integrand of U(z): U = Int_0^inf dxi Int_0^inf dq (this).

    Includes every constant and the in-plane measure q, so nothing but the
    iterated integral separates this from the potential.  Negative for all
    xi, q > 0.
    """
    if xi == 0.0:
        raise StaticDivergenceError("use the analytic x -> 0 limit instead")
    kappa = math.sqrt(q**2 + (xi / CONSTANTS.c) ** 2)
    if mirror:
        r_te, r_tm = -1.0, 1.0
    else:
        lr = layer_response(xi, q, scales)
        r_te, r_tm = lr.r_vm_te.real, lr.r_vm_tm.real
    bracket = r_te - r_tm * (1.0 + 2.0 * (q * CONSTANTS.c / xi) ** 2)
    return (
        CONSTANTS.hbar
        / (CONSTANTS.eps0 * CONSTANTS.c**2)
        / (2.0 * math.pi) ** 2
        * q
        * xi**2
        * polarizability_iw(xi, sphere)
        * math.exp(-2.0 * kappa * z)
        / (2.0 * kappa)
        * bracket
    )


# --------------------------------------------------------------------------
# Reduced profiles
# --------------------------------------------------------------------------


def _q_integral(
    x: float,
    z_bar: float,
    g: float,
    model: str,
    mirror: bool,
    rel_tol: float,
) -> QuadResult:
    """Int_0^inf Q dQ e^{-4 pi K zb} / (2K) * [r_TE - r_TM (1 + 2Q^2/x^2)]."""
    if mirror:
        eps = None
    else:
        eps = float(eps_iw_reduced(x, g, model))

    def f(Q: np.ndarray) -> np.ndarray:
        K = np.sqrt(x * x + Q * Q)
        if mirror:
            r_te = -1.0
            r_tm = 1.0
        else:
            Kt = np.sqrt(eps * x * x + Q * Q)
            r_te = (K - Kt) / (K + Kt)
            r_tm = (eps * K - Kt) / (eps * K + Kt)
        bracket = r_te - r_tm * (1.0 + 2.0 * Q * Q / (x * x))
        return Q * np.exp(-_FOUR_PI * K * z_bar) / (2.0 * K) * bracket

    return integrate_semi_infinite(f, scale=1.0 / (_FOUR_PI * z_bar), rel_tol=rel_tol)


def reduced_mean_profile(
    z_bar: float,
    *,
    g: float,
    model: str = "drude",
    l0: float = 1.0,
    mirror: bool = False,
    rel_tol: float = 1e-8,
) -> QuadResult:
    """Dimensionless T = 0 profile Ibar(zb); U = mean_prefactor * Ibar.

    l0 = lambda0/lambda_p sets the sphere resonance in reduced units; l0 = 0
    means a dispersionless polarizability.
    """
    if z_bar <= 0.0:
        raise ValueError("z_bar must be > 0")
    inner_tol = 0.1 * rel_tol

    def outer(xs: np.ndarray) -> np.ndarray:
        out = np.empty_like(xs)
        for i, x in enumerate(xs):
            inner = _q_integral(x, z_bar, g, model, mirror, inner_tol)
            out[i] = x * x * alpha_factor_reduced(x, l0) * inner.value
        return out

    scale = 1.0 / (_FOUR_PI * z_bar)
    if l0 > 0.0:
        scale = min(scale, 1.0 / l0)
    res = integrate_semi_infinite(outer, scale=scale, rel_tol=rel_tol)
    # The inner quadrature converges to inner_tol *relative* to its own
    # value, and the outer integrand is single-signed, so the folded inner
    # contribution to the total is bounded by inner_tol * |integral|.
    extra = inner_tol * abs(res.value)
    return QuadResult(
        value=res.value,
        err_est=res.err_est + extra,
        n_evals=res.n_evals,
        converged=res.converged,
    )


def reduced_thermal_zero(z_bar: float) -> float:
    """Analytic x -> 0 limit of the summand: -1/(32 pi^3 zb^3).

    At vanishing frequency only the TM channel survives (r_TM -> 1 for any
    conductor, the TE term is killed by the explicit x^2), leaving
    -Int Q^2 e^{-4 pi Q zb} dQ in closed form.
    """
    return -1.0 / (32.0 * math.pi**3 * z_bar**3)


def reduced_thermal_term(
    x: float,
    z_bar: float,
    *,
    g: float,
    model: str = "drude",
    l0: float = 1.0,
    mirror: bool = False,
    rel_tol: float = 1e-9,
) -> QuadResult:
    """Single Matsubara summand at x > 0 (x^2 a(x) times the Q integral)."""
    if x <= 0.0:
        raise StaticDivergenceError("x = 0 has its own closed form")
    inner = _q_integral(x, z_bar, g, model, mirror, rel_tol)
    w = x * x * float(alpha_factor_reduced(x, l0))
    return QuadResult(
        value=w * inner.value,
        err_est=abs(w) * inner.err_est,
        n_evals=inner.n_evals,
        converged=inner.converged,
    )


def reduced_thermal_profile(
    z_bar: float,
    t_T: float,
    *,
    g: float,
    model: str = "drude",
    l0: float = 1.0,
    mirror: bool = False,
    rel_tol: float = 1e-9,
    tail_tol: float = 1e-10,
    max_terms: int = 100_000,
) -> QuadResult:
    """(1/t_T) * sum'_{n>=0} summand(x_n), x_n = n/t_T; U = prefactor * this.

    The prime gives the n = 0 term half weight; it enters through its
    analytic limit.  Terms decay like exp(-4 pi n zb/t_T) so the sum is
    truncated once two consecutive terms drop below tail_tol of the running
    total.
    """
    if t_T <= 0.0:
        raise ValueError("t_T = lambda_T/lambda_p must be > 0")
    total = 0.5 * reduced_thermal_zero(z_bar)
    err = 0.0
    n_evals = 0
    converged = True
    small_streak = 0
    last = abs(total)
    for n in range(1, max_terms + 1):
        term = reduced_thermal_term(
            n / t_T, z_bar, g=g, model=model, l0=l0, mirror=mirror, rel_tol=rel_tol
        )
        total += term.value
        err += term.err_est
        n_evals += term.n_evals
        converged &= term.converged
        last = abs(term.value)
        if last <= tail_tol * abs(total):
            small_streak += 1
            if small_streak >= 2:
                break
        else:
            small_streak = 0
    else:
        converged = False
    # Geometric estimate of the dropped tail.
    ratio = math.exp(-_FOUR_PI * z_bar / t_T)
    if ratio < 1.0:
        err += last * ratio / (1.0 - ratio)
    return QuadResult(
        value=total / t_T,
        err_est=err / t_T,
        n_evals=n_evals,
        converged=converged,
    )


# --------------------------------------------------------------------------
# SI-unit entry points
# --------------------------------------------------------------------------


def mean_cp_T0(
    z: float,
    scales: DerivedScales,
    sphere: SphereSpec,
    *,
    mirror: bool = False,
    rel_tol: float = 1e-8,
) -> QuadResult:
    """Disorder-averaged potential U(z) [J] at zero temperature."""
    if z <= 0.0:
        raise ValueError("z must be > 0")
    zb = z / scales.lambda_p
    l0 = sphere.lambda0 / scales.lambda_p
    prof = reduced_mean_profile(
        zb, g=scales.g, model=scales.model, l0=l0, mirror=mirror, rel_tol=rel_tol
    )
    pref = mean_prefactor(scales, sphere)
    return QuadResult(
        value=pref * prof.value,
        err_est=pref * prof.err_est,
        n_evals=prof.n_evals,
        converged=prof.converged,
    )


def mean_cp_T(
    z: float,
    T: float,
    scales: DerivedScales,
    sphere: SphereSpec,
    *,
    mirror: bool = False,
    rel_tol: float = 1e-9,
) -> QuadResult:
    """Disorder-averaged potential U(z) [J] at temperature T > 0."""
    if z <= 0.0:
        raise ValueError("z must be > 0")
    zb = z / scales.lambda_p
    t_T = thermal_wavelength(T) / scales.lambda_p
    l0 = sphere.lambda0 / scales.lambda_p
    prof = reduced_thermal_profile(
        zb, t_T, g=scales.g, model=scales.model, l0=l0, mirror=mirror, rel_tol=rel_tol
    )
    pref = mean_prefactor(scales, sphere)
    return QuadResult(
        value=pref * prof.value,
        err_est=pref * prof.err_est,
        n_evals=prof.n_evals,
        converged=prof.converged,
    )


def mean_thermal_leading(z: float, T: float, sphere: SphereSpec) -> float:
    """Leading high-T / large-z law -k_B T alpha0 / (16 pi eps0 z^3).

    This is exactly the half-weighted n = 0 Matsubara term; the full sum
    approaches it when z >> lambda_T.
    """
    if z <= 0.0:
        raise ValueError("z must be > 0")
    if T <= 0.0:
        raise ValueError("T must be > 0")
    return -CONSTANTS.kB * T * sphere.alpha0 / (16.0 * math.pi * CONSTANTS.eps0 * z**3)
