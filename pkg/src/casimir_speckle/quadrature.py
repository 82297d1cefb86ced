"""Reusable integration machinery.

Four tools, all deterministic:

* ``integrate_adaptive_1d`` -- embedded Gauss(7)/Kronrod(15) pair with
  adaptive bisection; the error estimate of an interval is the difference
  between the two rules.
* ``integrate_semi_infinite`` -- maps [0, inf) onto [0, 1) through
  x = s*t/(1-t) and delegates to the adaptive rule.
* ``mc_integrate`` -- stratified importance-sampled Monte Carlo over a
  product of per-coordinate densities, with a counter-based RNG so that
  every (seed, chunk, stratum) triple yields the same stream on every
  platform and chunk merges are associative.
* ``double_sum_adaptive`` -- anti-diagonal accumulation of a double series
  with geometric tail extrapolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

# Relative tolerances are measured against max(|value|, ERROR_FLOOR) so that
# integrals which are legitimately zero (switched-off couplings) converge.
ERROR_FLOOR = 1e-30

# Samples per RNG chunk inside one stratum; fixed so the chunk partition --
# and therefore the bit-exact result -- does not depend on available memory.
_CHUNK = 1 << 18


@dataclass(frozen=True)
class QuadResult:
    """Value/error pair returned by every integrator in this module."""

    value: float
    err_est: float
    n_evals: int
    converged: bool

    def __post_init__(self):
        if not self.err_est >= 0.0:
            raise ValueError("err_est must be non-negative")

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(
            self.value + other.value,
            math.hypot(self.err_est, other.err_est),
            self.n_evals + other.n_evals,
            self.converged and other.converged,
        )


# --------------------------------------------------------------------------
# Gauss-Kronrod 7/15 pair (QUADPACK abscissae and weights)
# --------------------------------------------------------------------------

_XK = np.array(
    [
        -0.991455371120813,
        -0.949107912342759,
        -0.864864423359769,
        -0.741531185599394,
        -0.586087235467691,
        -0.405845151377397,
        -0.207784955007898,
        0.0,
        0.207784955007898,
        0.405845151377397,
        0.586087235467691,
        0.741531185599394,
        0.864864423359769,
        0.949107912342759,
        0.991455371120813,
    ]
)
_WK = np.array(
    [
        0.022935322010529,
        0.063092092629979,
        0.104790010322250,
        0.140653259715525,
        0.169004726639267,
        0.190350578064785,
        0.204432940075298,
        0.209482141084728,
        0.204432940075298,
        0.190350578064785,
        0.169004726639267,
        0.140653259715525,
        0.104790010322250,
        0.063092092629979,
        0.022935322010529,
    ]
)
# Gauss-7 weights attached to every second Kronrod node (indices 1,3,...,13).
_WG = np.array(
    [
        0.129484966168870,
        0.279705391489277,
        0.381830050505119,
        0.417959183673469,
        0.381830050505119,
        0.279705391489277,
        0.129484966168870,
    ]
)


def _gk_panels(f, lo: np.ndarray, hi: np.ndarray):
    """Evaluate the GK15 pair on a batch of intervals.

    Returns (kronrod estimates, |kronrod - gauss| error estimates); ``f``
    must accept a flat numpy array.
    """
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    # nodes: shape (n_intervals, 15)
    x = mid[:, None] + half[:, None] * _XK[None, :]
    y = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    ik = half * (y @ _WK)
    ig = half * (y[:, 1::2] @ _WG)
    return ik, np.abs(ik - ig)


def integrate_adaptive_1d(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rel_tol: float = 1e-9,
    max_subdiv: int = 4000,
) -> QuadResult:
    """Adaptive GK15 integration of a vectorized integrand over [a, b]."""
    lo = np.array([float(a)])
    hi = np.array([float(b)])
    vals, errs = _gk_panels(f, lo, hi)
    n_evals = 15

    for _ in range(max_subdiv):
        total = vals.sum()
        err = errs.sum()
        if err <= rel_tol * max(abs(total), ERROR_FLOOR):
            return QuadResult(float(total), float(err), n_evals, True)
        # Bisect every interval holding more than its proportional share of
        # the error budget; always at least the single worst one.
        cut = max(errs.max() * 0.5, err / (2 * len(errs)))
        split = errs >= cut
        keep = ~split
        mids = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[keep], lo[split], mids])
        new_hi = np.concatenate([hi[keep], mids, hi[split]])
        fresh_lo = np.concatenate([lo[split], mids])
        fresh_hi = np.concatenate([mids, hi[split]])
        fresh_vals, fresh_errs = _gk_panels(f, fresh_lo, fresh_hi)
        n_evals += 15 * len(fresh_lo)
        vals = np.concatenate([vals[keep], fresh_vals])
        errs = np.concatenate([errs[keep], fresh_errs])
        lo, hi = new_lo, new_hi

    total = vals.sum()
    err = errs.sum()
    return QuadResult(float(total), float(err), n_evals, False)


def integrate_semi_infinite(
    f: Callable[[np.ndarray], np.ndarray],
    scale: float,
    rel_tol: float = 1e-9,
    max_subdiv: int = 4000,
) -> QuadResult:
    """Integrate f over [0, inf) assuming decay on the given scale.

    Substitutes x = scale*t/(1-t); the Jacobian scale/(1-t)^2 concentrates
    the rule where the integrand lives when the decay scale is right, and
    the adaptive subdivision mops up when it is off by orders of magnitude.
    """
    if not scale > 0.0:
        raise ValueError("scale must be positive")

    def mapped(t):
        x = scale * t / (1.0 - t)
        jac = scale / (1.0 - t) ** 2
        return f(x) * jac

    # Stop a hair short of t=1; the integrand must decay, so the discarded
    # sliver is below double precision for any exponential tail.
    return integrate_adaptive_1d(mapped, 0.0, 1.0 - 1e-14, rel_tol, max_subdiv)


# --------------------------------------------------------------------------
# Counter-based RNG contract
# --------------------------------------------------------------------------


def rng_for(seed: int, chunk: int = 0, stratum: int = 0) -> np.random.Generator:
    """Independent generator for a (seed, chunk, stratum) triple.

    Philox is a counter-based generator defined by its published algorithm,
    so identical keys give identical streams on every platform.  The 128-bit
    key is (seed, chunk*2^32 + stratum), which is collision-free for chunk
    and stratum below 2^32.
    """
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    if not (0 <= chunk < 2**32 and 0 <= stratum < 2**32):
        raise ValueError("chunk and stratum must fit in 32 bits")
    key = np.array([seed, (chunk << 32) | stratum], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


# --------------------------------------------------------------------------
# Stratified importance-sampled Monte Carlo
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CoordSpec:
    """Importance sampler for one coordinate.

    kind="mixexp": mixture of two exponentials, mean ``scale`` with weight
    (1-wide_weight) and mean ``scale*wide_factor`` with weight wide_weight.
    The heavy tail guards against under-sampling slowly decaying directions.

    kind="uniform": uniform on [lo, hi).
    """

    kind: str
    scale: float = 1.0
    lo: float = 0.0
    hi: float = 1.0
    wide_factor: float = 10.0
    wide_weight: float = 0.25

    def draw(self, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Map uniform [0,1) draws to samples and their density values."""
        if self.kind == "uniform":
            y = self.lo + (self.hi - self.lo) * u
            pdf = np.full_like(u, 1.0 / (self.hi - self.lo))
            return y, pdf
        if self.kind == "mixexp":
            w_narrow = 1.0 - self.wide_weight
            s1 = self.scale
            s2 = self.scale * self.wide_factor
            narrow = u < w_narrow
            v = np.where(narrow, u / w_narrow, (u - w_narrow) / self.wide_weight)
            v = np.minimum(v, 1.0 - 1e-16)
            s = np.where(narrow, s1, s2)
            y = -s * np.log1p(-v)
            pdf = (w_narrow / s1) * np.exp(-y / s1) + (
                self.wide_weight / s2
            ) * np.exp(-y / s2)
            return y, pdf
        raise ValueError(f"unknown coordinate kind {self.kind!r}")


@dataclass(frozen=True)
class McPlan:
    """Budget, seeding and importance scales for one Monte Carlo estimate.

    ``momentum_scale`` and ``frequency_scale`` are in the integration
    variables' own units; callers that work in reduced units pass reduced
    scales.  A value of None lets the physics layer fill in its default
    (momentum scale proportional to 1/z, frequency scale min(c/z, omega_0)).
    """

    seed: int
    n_samples: int = 200_000
    n_strata: int = 8
    rel_tol: float = 0.05
    momentum_scale: float | None = None
    frequency_scale: float | None = None

    def __post_init__(self):
        if self.n_samples < 10_000:
            raise ValueError("n_samples must be at least 10^4")
        if self.n_strata < 1:
            raise ValueError("n_strata must be positive")

    def with_scales(self, momentum_scale: float, frequency_scale: float) -> "McPlan":
        """Fill missing importance scales, keeping explicit ones."""
        return replace(
            self,
            momentum_scale=(
                momentum_scale if self.momentum_scale is None else self.momentum_scale
            ),
            frequency_scale=(
                frequency_scale
                if self.frequency_scale is None
                else self.frequency_scale
            ),
        )


def mc_integrate(
    f: Callable[[np.ndarray], np.ndarray],
    coords: Sequence[CoordSpec],
    plan: McPlan,
) -> QuadResult:
    """Stratified importance-sampled MC estimate of integral of f.

    ``f`` must be vectorized: it receives an (n, dim) array of points and
    returns n values.  Sampling is stratified on the first coordinate's
    uniform driver (equal-probability strata), which provably never
    increases the estimator variance; remaining coordinates are sampled
    independently per stratum.

    The estimate is assembled from fixed-size chunks with independent
    (seed, chunk, stratum) substreams, so partial results merge by weighted
    average in any order and the total is reproducible bit-for-bit for a
    fixed plan.
    """
    dim = len(coords)
    if dim < 1:
        raise ValueError("need at least one coordinate")
    n_strata = plan.n_strata
    per_stratum = -(-plan.n_samples // n_strata)  # ceil

    total_mean = 0.0
    total_var = 0.0
    n_evals = 0
    for stratum in range(n_strata):
        # Accumulate per-stratum mean and M2 via chunked Welford-style merge.
        s_n = 0
        s_mean = 0.0
        s_m2 = 0.0
        n_chunks = -(-per_stratum // _CHUNK)
        for chunk in range(n_chunks):
            n = min(_CHUNK, per_stratum - chunk * _CHUNK)
            rng = rng_for(plan.seed, chunk, stratum)
            u = rng.random((n, dim))
            # Restrict the first coordinate's driver to this stratum's slab.
            u[:, 0] = (stratum + u[:, 0]) / n_strata
            y = np.empty_like(u)
            pdf = np.ones(n)
            for j, spec in enumerate(coords):
                y[:, j], pj = spec.draw(u[:, j])
                pdf *= pj
            vals = np.asarray(f(y), dtype=float) / pdf
            bad = ~np.isfinite(vals)
            if bad.any():
                idx = int(np.argmax(bad))
                raise FloatingPointError(
                    f"non-finite integrand value at coordinates {y[idx].tolist()}"
                )
            cn = vals.size
            cmean = float(vals.mean())
            cm2 = float(((vals - cmean) ** 2).sum())
            delta = cmean - s_mean
            tot = s_n + cn
            s_mean += delta * cn / tot
            s_m2 += cm2 + delta * delta * s_n * cn / tot
            s_n = tot
        n_evals += s_n
        var_of_mean = s_m2 / (s_n - 1) / s_n if s_n > 1 else 0.0
        total_mean += s_mean / n_strata
        total_var += var_of_mean / n_strata**2

    err = math.sqrt(total_var)
    converged = err <= plan.rel_tol * max(abs(total_mean), ERROR_FLOOR)
    return QuadResult(total_mean, err, n_evals, converged)


# --------------------------------------------------------------------------
# Adaptive double sum
# --------------------------------------------------------------------------


def double_sum_adaptive(
    term: Callable[[int, int], "QuadResult | float"],
    tail_tol: float = 1e-3,
    max_rank: int = 4000,
) -> QuadResult:
    """Sum term(n, m) over n, m >= 1 by anti-diagonals n + m = r.

    Stops once the latest anti-diagonal contributes less than ``tail_tol``
    of the running total twice in a row, then extrapolates the remaining
    tail geometrically and folds it into the error estimate.  Terms may be
    plain floats or QuadResult (whose statistical errors are accumulated in
    quadrature).
    """
    total = 0.0
    stat_err2 = 0.0
    n_evals = 0
    diag_prev = None
    diag_last = None
    small_streak = 0

    r = 2
    while r < max_rank + 2:
        s = 0.0
        for n in range(1, r):
            t = term(n, r - n)
            if isinstance(t, QuadResult):
                s += t.value
                stat_err2 += t.err_est**2
                n_evals += t.n_evals
            else:
                s += float(t)
                n_evals += 1
        total += s
        diag_prev, diag_last = diag_last, abs(s)
        if diag_last <= tail_tol * max(abs(total), ERROR_FLOOR):
            small_streak += 1
            if small_streak >= 2:
                break
        else:
            small_streak = 0
        r += 1
    else:
        return QuadResult(total, math.sqrt(stat_err2) + abs(total), n_evals, False)

    # Geometric tail bound from the last two anti-diagonals.
    if diag_prev and diag_prev > 0 and diag_last < diag_prev:
        ratio = diag_last / diag_prev
        tail = diag_last * ratio / (1.0 - ratio)
    else:
        tail = diag_last
    return QuadResult(total, math.sqrt(stat_err2) + tail, n_evals, True)
