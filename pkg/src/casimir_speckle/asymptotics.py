"""Closed-form asymptotic laws and fitting/calibration helpers.

The variance profile F(z) has three power-law windows with fixed pure
numbers; the amplitudes below are frozen reference constants, used for
cross-checking the numerical engine.  They are never refit by the package:
the calibration_report function measures and *reports* residual factors
against them, nothing more.

    intermediate (lambda_p << z << lambda_gamma):
        F = C1 (lambda_p / z)^4
    far (z >> lambda_gamma, dissipation-limited):
        F = C2 (lambda_p / lambda_gamma)^4 (lambda_gamma / z)^(9/2)
    thermal (T > 0, z beyond lambda_T):
        F = C3 (lambda_p/lambda_T)^4 (1 + lambda_T/lambda_gamma)^(-1/2)
              (z/lambda_T)^3 exp(-8 pi z / lambda_T)

The mean potential has the familiar anchors: the retarded power law
-3 hbar c alpha0 / (32 pi^2 eps0 z^4) and the thermal large-distance law
-k_B T alpha0 / (16 pi eps0 z^3).
"""

from __future__ import annotations

import math
import warnings
from typing import NamedTuple, Sequence

import numpy as np

from .constants import CONSTANTS
from .materials import DerivedScales, SphereSpec, thermal_wavelength

# Frozen reference amplitudes of the F(z) windows.  Do not edit: the verify
# pipeline carries an independent copy and flags any drift.
C1 = 8.0e-5
C2 = 3.9e-5
C3 = 115.7


def f_intermediate(z: float, scales: DerivedScales) -> float:
    """Plateau law C1 (lambda_p/z)^4, valid for lambda_p << z << lambda_gamma."""
    if z <= 0.0:
        raise ValueError("z must be > 0")
    return C1 * (scales.lambda_p / z) ** 4


def f_far(z: float, scales: DerivedScales) -> float:
    """Dissipation-limited tail C2 (lambda_p/lambda_gamma)^4 (lambda_gamma/z)^4.5."""
    if z <= 0.0:
        raise ValueError("z must be > 0")
    if not math.isfinite(scales.lambda_gamma):
        raise ValueError("far-regime law needs gamma > 0")
    lg = scales.lambda_gamma
    return C2 * (scales.lambda_p / lg) ** 4 * (lg / z) ** 4.5


def f_thermal(z: float, scales: DerivedScales, temperature: float) -> float:
    """Thermal law with the exp(-8 pi z / lambda_T) cutoff; needs T > 0."""
    if z <= 0.0:
        raise ValueError("z must be > 0")
    if temperature <= 0.0:
        raise ValueError("the thermal law is undefined at T <= 0")
    if not math.isfinite(scales.lambda_gamma):
        raise ValueError("thermal-regime law needs gamma > 0")
    l_T = thermal_wavelength(temperature)
    return (
        C3
        * (scales.lambda_p / l_T) ** 4
        * (1.0 + l_T / scales.lambda_gamma) ** -0.5
        * (z / l_T) ** 3
        * math.exp(-8.0 * math.pi * z / l_T)
    )


def mean_retarded(z: float, sphere: SphereSpec) -> float:
    """Retarded mean-potential law -3 hbar c alpha0 / (32 pi^2 eps0 z^4)."""
    if z <= 0.0:
        raise ValueError("z must be > 0")
    return (
        -3.0
        * CONSTANTS.hbar
        * CONSTANTS.c
        * sphere.alpha0
        / (32.0 * math.pi**2 * CONSTANTS.eps0 * z**4)
    )


def mean_thermal(z: float, temperature: float, sphere: SphereSpec) -> float:
    """Thermal mean-potential law -k_B T alpha0 / (16 pi eps0 z^3)."""
    if z <= 0.0:
        raise ValueError("z must be > 0")
    if temperature <= 0.0:
        raise ValueError("T must be > 0")
    return (
        -CONSTANTS.kB
        * temperature
        * sphere.alpha0
        / (16.0 * math.pi * CONSTANTS.eps0 * z**3)
    )


def crossover_distance(scales: DerivedScales) -> float:
    """Distance z* = lambda_gamma (C2/C1)^2 where the far tail overtakes
    the intermediate plateau (about 0.238 lambda_gamma)."""
    return scales.lambda_gamma * (C2 / C1) ** 2


def thermal_peak_distance(temperature: float) -> float:
    """Maximum of the thermal law: z = 3 lambda_T / (8 pi)."""
    return 3.0 * thermal_wavelength(temperature) / (8.0 * math.pi)


class SlopeFit(NamedTuple):
    slope: float
    slope_err: float
    intercept: float
    n_used: int


def fit_loglog_slope(
    z: Sequence[float],
    F: Sequence[float],
    F_err: Sequence[float] | None = None,
) -> SlopeFit:
    """Weighted least-squares slope of log F against log z.

    Non-positive F values cannot enter a log fit; they are dropped with a
    warning.  Fewer than 3 usable points is an error.  With errors given,
    weights are 1/sigma_lnF^2 and the slope error follows from the weight
    matrix; without them the residual variance is used.
    """
    z = np.asarray(z, dtype=float)
    F = np.asarray(F, dtype=float)
    if F_err is not None:
        F_err = np.asarray(F_err, dtype=float)
    good = F > 0.0
    if not np.all(good):
        warnings.warn(
            f"dropping {int(np.sum(~good))} non-positive F value(s) from log fit",
            stacklevel=2,
        )
        z, F = z[good], F[good]
        if F_err is not None:
            F_err = F_err[good]
    if len(z) < 3:
        raise ValueError("need at least 3 positive points for a slope fit")

    x = np.log(z)
    y = np.log(F)
    if F_err is not None:
        sigma = np.clip(F_err / F, 1e-12, None)
        w = 1.0 / sigma**2
    else:
        w = np.ones_like(x)
    xb = np.sum(w * x) / np.sum(w)
    yb = np.sum(w * y) / np.sum(w)
    sxx = np.sum(w * (x - xb) ** 2)
    slope = float(np.sum(w * (x - xb) * (y - yb)) / sxx)
    intercept = float(yb - slope * xb)
    if F_err is not None:
        slope_err = float(math.sqrt(1.0 / sxx))
    else:
        resid = y - slope * x - intercept
        dof = max(len(x) - 2, 1)
        slope_err = float(math.sqrt(np.sum(w * resid**2) / dof / sxx))
    return SlopeFit(slope, slope_err, intercept, len(x))


def calibration_report(
    z: Sequence[float],
    F: Sequence[float],
    scales: DerivedScales,
    regime: str,
    temperature: float = 0.0,
) -> dict:
    """Measure residual amplitude factors against the frozen laws.

    Returns per-point ratios F/law and their geometric mean; purely a
    report, the module constants are never modified.  regime is one of
    "intermediate", "far", "thermal".
    """
    forms = {
        "intermediate": lambda zz: f_intermediate(zz, scales),
        "far": lambda zz: f_far(zz, scales),
        "thermal": lambda zz: f_thermal(zz, scales, temperature),
    }
    if regime not in forms:
        raise ValueError(f"regime must be one of {sorted(forms)}")
    ratios = []
    for zz, ff in zip(z, F, strict=True):
        law = forms[regime](zz)
        ratios.append(ff / law if law != 0.0 else math.nan)
    arr = np.asarray(ratios, dtype=float)
    positive = arr[np.isfinite(arr) & (arr > 0)]
    gm = float(np.exp(np.mean(np.log(positive)))) if len(positive) else math.nan
    spread = (
        float(np.exp(np.std(np.log(positive)))) if len(positive) else math.nan
    )
    return {
        "regime": regime,
        "n_points": len(ratios),
        "ratios": ratios,
        "residual_factor": gm,
        "geometric_spread": spread,
        "reference": {"C1": C1, "C2": C2, "C3": C3},
        "note": (
            "residual_factor multiplies the frozen law to match the data; "
            "constants themselves are never refit"
        ),
    }
