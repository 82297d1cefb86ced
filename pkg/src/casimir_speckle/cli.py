"""Command-line interface.

Subcommands
-----------
mean       mean potential U(z) over a distance grid -> CSV
fvar       variance profile F(z) over a distance grid -> CSV (cached)
material   derived electron-gas scales and fluctuation strength -> JSON
asymptote  closed-form law curves -> CSV; --calibrate reports residual
           amplitude factors of an existing fvar CSV against the laws
verify     self-checks at three depths (smoke / desk / full) -> JSON verdict

All CSV output uses one canonical schema

    z_over_lambda_p,F,F_err,n_samples,regime,U_mean,prefactor,fingerprint

with floats at 12 significant digits; commands that do not produce a given
column write zeros, never blanks.  The fingerprint is a 16-hex digest of
the effective configuration (every physics field plus kernel variant, seed
and sample count), so rows from different configurations can never be
silently mixed.  Runs are bit-reproducible: same config + seed gives an
identical file.

A results cache lives in the directory named by CASIMIR_SPECKLE_CACHE (if
set): fvar looks up each requested distance under the configuration
fingerprint and recomputes only misses; files are replaced atomically.

Exit codes: 0 success; 1 a verification or computation failed; 2 invalid
configuration; 64 command-line usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import tempfile
import time
from pathlib import Path

from .asymptotics import (
    C1,
    C2,
    C3,
    calibration_report,
    crossover_distance,
    f_far,
    f_intermediate,
    f_thermal,
    fit_loglog_slope,
    mean_retarded,
    mean_thermal,
)
from .constants import CONSTANTS
from .materials import (
    ConfigurationError,
    DerivedScales,
    MaterialSpec,
    SphereSpec,
    derive_scales,
    fluctuation_prefactor,
    load_preset,
    rms_fluctuation_scale,
    thermal_wavelength,
)
from .mean_potential import mean_cp_T, mean_cp_T0, reduced_mean_profile
from .quadrature import McPlan
from .variance import F_of_z, MomentumConfig, classify_regime

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_USAGE = 64

CSV_HEADER = "z_over_lambda_p,F,F_err,n_samples,regime,U_mean,prefactor,fingerprint"

_DEFAULT_CONFIG = {
    "material": "gold",
    "model": None,  # optional override of the preset's conduction model
    "sphere": {"alpha0_si": 4.5e-39, "lambda0_over_lambda_p": 1.0},
    "temperature_K": 0.0,
    "z_over_lambda_p": [1.0, 10.0, 5, "log"],
    "seed": 20260819,
    "samples": 1_000_000,
    "kernel_variant": "b",
    "pol_terms": "full",
}


class _Parser(argparse.ArgumentParser):
    """argparse that exits with the usage code instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# --------------------------------------------------------------------------
# Configuration plumbing
# --------------------------------------------------------------------------


def _load_config(args) -> dict:
    cfg = json.loads(json.dumps(_DEFAULT_CONFIG))  # deep copy
    if args.config:
        try:
            with open(args.config) as fh:
                user = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"cannot read config {args.config!r}: {exc}")
        if not isinstance(user, dict):
            raise ConfigurationError("config must be a single JSON object")
        unknown = set(user) - set(cfg)
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(user)
    # Flag overrides.
    if getattr(args, "seed", None) is not None:
        cfg["seed"] = args.seed
    if getattr(args, "samples", None) is not None:
        cfg["samples"] = args.samples
    if getattr(args, "model", None) is not None:
        cfg["model"] = args.model
    if getattr(args, "kernel_variant", None) is not None:
        cfg["kernel_variant"] = args.kernel_variant
    if getattr(args, "temperature", None) is not None:
        cfg["temperature_K"] = args.temperature
    if getattr(args, "z_grid", None):
        cfg["z_over_lambda_p"] = _parse_z_grid(args.z_grid)
    return cfg


def _parse_z_grid(text: str):
    """Parse 'start:stop:n[:log|linear]' or a comma list of values."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise ConfigurationError("z grid must be start:stop:n[:log|linear]")
        start, stop, n = float(parts[0]), float(parts[1]), int(parts[2])
        spacing = parts[3] if len(parts) == 4 else "log"
        return [start, stop, n, spacing]
    return [float(v) for v in text.split(",")]


def _z_values(cfg) -> list[float]:
    spec = cfg["z_over_lambda_p"]
    if (
        isinstance(spec, list)
        and len(spec) == 4
        and isinstance(spec[3], str)
    ):
        start, stop, n, spacing = float(spec[0]), float(spec[1]), int(spec[2]), spec[3]
        if n < 1 or start <= 0 or stop < start:
            raise ConfigurationError("invalid z grid")
        if n == 1:
            return [start]
        if spacing == "log":
            ratio = (stop / start) ** (1.0 / (n - 1))
            return [start * ratio**i for i in range(n)]
        if spacing == "linear":
            step = (stop - start) / (n - 1)
            return [start + step * i for i in range(n)]
        raise ConfigurationError("z grid spacing must be 'log' or 'linear'")
    values = [float(v) for v in spec]
    if not values or any(v <= 0 for v in values):
        raise ConfigurationError("z values must be positive")
    return values


def _build_physics(cfg):
    mat = cfg["material"]
    if isinstance(mat, str):
        spec = load_preset(mat)
    elif isinstance(mat, dict):
        spec = MaterialSpec(
            n=mat.get("n_per_m3"),
            mean_free_path=mat.get("mean_free_path_m"),
            omega_p=mat.get("omega_p"),
            gamma=mat.get("gamma"),
            model=mat.get("model", "drude"),
        )
    else:
        raise ConfigurationError("material must be a preset name or an object")
    if cfg.get("model"):
        spec = MaterialSpec(
            n=spec.n,
            mean_free_path=spec.mean_free_path,
            omega_p=spec.omega_p,
            gamma=spec.gamma,
            model=cfg["model"],
        )
    scales = derive_scales(spec)
    sph_cfg = cfg["sphere"]
    l0 = float(sph_cfg.get("lambda0_over_lambda_p", 1.0))
    if l0 <= 0:
        raise ConfigurationError("lambda0_over_lambda_p must be > 0")
    sphere = SphereSpec(
        alpha0=float(sph_cfg.get("alpha0_si", 4.5e-39)),
        omega0=2.0 * math.pi * CONSTANTS.c / (l0 * scales.lambda_p),
    )
    kernel = MomentumConfig(
        kernel_variant=cfg["kernel_variant"], pol_terms=cfg["pol_terms"]
    )
    T = float(cfg["temperature_K"])
    if T < 0:
        raise ConfigurationError("temperature_K must be >= 0")
    return scales, sphere, kernel, T


def _fingerprint(cfg: dict) -> str:
    """16-hex digest over the canonical form of the effective config."""

    def canon(obj):
        if isinstance(obj, float):
            return float(f"{obj:.17g}")
        if isinstance(obj, dict):
            return {k: canon(v) for k, v in sorted(obj.items())}
        if isinstance(obj, list):
            return [canon(v) for v in obj]
        return obj

    blob = json.dumps(canon(cfg), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _echo_config(cfg: dict, out_path: Path) -> None:
    target = out_path.parent / "effective_config.json"
    payload = dict(cfg)
    payload["fingerprint"] = _fingerprint(cfg)
    _atomic_write(target, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _csv_row(zb, F, F_err, n_samples, regime, U_mean, prefactor, fingerprint) -> str:
    return ",".join(
        [
            _fmt(zb),
            _fmt(F),
            _fmt(F_err),
            str(int(n_samples)),
            regime,
            _fmt(U_mean),
            _fmt(prefactor),
            fingerprint,
        ]
    )


def _write_csv(path: Path, rows: list[str]) -> None:
    _atomic_write(path, "\n".join([CSV_HEADER] + rows) + "\n")


# --------------------------------------------------------------------------
# Cache
# --------------------------------------------------------------------------


def _cache_file(fingerprint: str) -> Path | None:
    root = os.environ.get("CASIMIR_SPECKLE_CACHE")
    if not root:
        return None
    return Path(root) / f"{fingerprint}.jsonl"


def _cache_load(fingerprint: str) -> dict[str, dict]:
    path = _cache_file(fingerprint)
    if path is None or not path.exists():
        return {}
    entries: dict[str, dict] = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            entries[rec["z_key"]] = rec
    return entries


def _cache_store(fingerprint: str, entries: dict[str, dict]) -> None:
    path = _cache_file(fingerprint)
    if path is None:
        return
    lines = [json.dumps(entries[k], sort_keys=True) for k in sorted(entries)]
    _atomic_write(path, "\n".join(lines) + ("\n" if lines else ""))


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------


def _cmd_mean(args) -> int:
    cfg = _load_config(args)
    scales, sphere, _, T = _build_physics(cfg)
    fp = _fingerprint(cfg)
    rows = []
    for zb in _z_values(cfg):
        z = zb * scales.lambda_p
        if T > 0:
            res = mean_cp_T(z, T, scales, sphere)
        else:
            res = mean_cp_T0(z, scales, sphere)
        regime = classify_regime(z, scales, T)
        rows.append(
            _csv_row(zb, 0.0, 0.0, 0, regime, res.value, fluctuation_prefactor(scales), fp)
        )
    out = Path(args.out)
    _write_csv(out, rows)
    _echo_config(cfg, out)
    print(f"wrote {len(rows)} mean-potential points to {out}")
    return EXIT_OK


def _cmd_fvar(args) -> int:
    cfg = _load_config(args)
    scales, sphere, kernel, T = _build_physics(cfg)
    fp = _fingerprint(cfg)
    plan = McPlan(seed=int(cfg["seed"]), n_samples=int(cfg["samples"]))
    cache = _cache_load(fp)
    rows, hits, misses = [], 0, 0
    for zb in _z_values(cfg):
        z_key = f"{zb:.17g}"
        if z_key in cache:
            rec = cache[z_key]
            hits += 1
        else:
            point = F_of_z(zb * scales.lambda_p, scales, sphere, plan, T, kernel)
            rec = {
                "z_key": z_key,
                "z_over_lambda_p": point.z_over_lambda_p,
                "F": point.F,
                "F_err": point.F_err,
                "n_samples": point.n_samples,
                "regime": point.regime,
                "U_mean": point.U_mean,
                "prefactor": point.prefactor,
            }
            cache[z_key] = rec
            misses += 1
        rows.append(
            _csv_row(
                rec["z_over_lambda_p"],
                rec["F"],
                rec["F_err"],
                rec["n_samples"],
                rec["regime"],
                rec["U_mean"],
                rec["prefactor"],
                fp,
            )
        )
    if misses:
        _cache_store(fp, cache)
    out = Path(args.out)
    _write_csv(out, rows)
    _echo_config(cfg, out)
    print(f"wrote {len(rows)} F(z) points to {out} ({hits} cached, {misses} computed)")
    return EXIT_OK


def _cmd_material(args) -> int:
    cfg = _load_config(args)
    scales, _, _, _ = _build_physics(cfg)
    material = cfg["material"]
    payload = {
        "material": material if isinstance(material, str) else "custom",
        "omega_p_rad_s": scales.omega_p,
        "gamma_rad_s": scales.gamma,
        "lambda_p_m": scales.lambda_p,
        "lambda_gamma_m": scales.lambda_gamma if math.isfinite(scales.lambda_gamma) else None,
        "k_F_1_m": scales.k_F,
        "lambda_F_m": scales.lambda_F,
        "v_F_m_s": scales.v_F,
        "mean_free_path_m": scales.mean_free_path if math.isfinite(scales.mean_free_path) else None,
        "k_F_mean_free_path": (
            scales.k_F * scales.mean_free_path
            if math.isfinite(scales.mean_free_path)
            else None
        ),
        "sigma0_S_m": scales.sigma0 if math.isfinite(scales.sigma0) else None,
        "model": scales.model,
        "fluctuation_prefactor": fluctuation_prefactor(scales),
        "rms_fluctuation_scale": rms_fluctuation_scale(scales),
        "crossover_distance_m": (
            crossover_distance(scales) if math.isfinite(scales.lambda_gamma) else None
        ),
        "validity_warnings": list(scales.validity_warnings),
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        _atomic_write(Path(args.out), text)
        print(f"wrote material report to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_asymptote(args) -> int:
    cfg = _load_config(args)
    scales, sphere, _, T = _build_physics(cfg)
    fp = _fingerprint(cfg)

    if args.calibrate:
        return _calibrate(args, scales, T)
    if not args.out:
        raise ConfigurationError("asymptote needs --out (or --calibrate with --data)")

    regime = args.regime
    rows = []
    for zb in _z_values(cfg):
        z = zb * scales.lambda_p
        if regime == "intermediate":
            F = f_intermediate(z, scales)
            U = mean_retarded(z, sphere)
        elif regime == "far":
            F = f_far(z, scales)
            U = mean_retarded(z, sphere)
        else:  # thermal
            F = f_thermal(z, scales, T)
            U = mean_thermal(z, T, sphere)
        rows.append(
            _csv_row(zb, F, 0.0, 0, regime, U, fluctuation_prefactor(scales), fp)
        )
    out = Path(args.out)
    _write_csv(out, rows)
    _echo_config(cfg, out)
    print(f"wrote {len(rows)} {regime}-law points to {out}")
    return EXIT_OK


def _calibrate(args, scales: DerivedScales, T: float) -> int:
    if not args.data:
        raise ConfigurationError("--calibrate requires --data <fvar CSV>")
    z, F = [], []
    with open(args.data) as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ConfigurationError(
                f"unexpected CSV header in {args.data!r}: {header!r}"
            )
        for line in fh:
            parts = line.strip().split(",")
            if len(parts) != 8:
                continue
            z.append(float(parts[0]) * scales.lambda_p)
            F.append(float(parts[1]))
    report = calibration_report(z, F, scales, args.regime, T)
    slope = None
    try:
        fit = fit_loglog_slope(z, F)
        slope = {"slope": fit.slope, "slope_err": fit.slope_err, "n_used": fit.n_used}
    except ValueError:
        pass
    report["loglog_fit"] = slope
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------

# Independent copies of the frozen law amplitudes: if someone edits the
# asymptotics module, the sentinel below trips.
_SENTINEL_C1 = 8.0e-5
_SENTINEL_C2 = 3.9e-5
_SENTINEL_C3 = 115.7


def _verify_desk() -> list[dict]:
    checks = []

    def check(name, passed, detail):
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    check(
        "law-amplitude-sentinel",
        C1 == _SENTINEL_C1 and C2 == _SENTINEL_C2 and C3 == _SENTINEL_C3,
        f"C1={C1} C2={C2} C3={C3}",
    )

    gold = derive_scales(load_preset("gold"))
    check(
        "gold-rms-scale",
        abs(rms_fluctuation_scale(gold) / 3.4e-5 - 1.0) < 0.05,
        f"rms={rms_fluctuation_scale(gold):.6g}",
    )
    nic = derive_scales(load_preset("nichrome"))
    ratio = fluctuation_prefactor(nic) / fluctuation_prefactor(gold)
    check("nichrome-gold-ratio", 11.0 <= ratio <= 12.0, f"ratio={ratio:.4f}")

    lt = thermal_wavelength(300.0)
    check("thermal-wavelength-300K", abs(lt / 7.63295e-6 - 1) < 1e-4, f"{lt:.6g} m")

    sphere = SphereSpec(alpha0=4.5e-39, omega0=gold.omega_p)
    z = 5e-7
    check(
        "retarded-law-sign",
        mean_retarded(z, sphere) < 0 and mean_thermal(z, 300.0, sphere) < 0,
        "both attractive",
    )
    zc = crossover_distance(gold)
    check(
        "crossover-position",
        abs(zc / gold.lambda_gamma - (C2 / C1) ** 2) < 1e-12,
        f"z*/lambda_gamma={zc / gold.lambda_gamma:.6f}",
    )
    return checks


def _verify_smoke() -> list[dict]:
    checks = _verify_desk()

    def check(name, passed, detail):
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    gold = derive_scales(load_preset("gold"))
    # Exact quadrature anchor: perfect mirror + dispersionless sphere.
    prof = reduced_mean_profile(3.0, g=gold.g, mirror=True, l0=0.0)
    exact = -3.0 / (128.0 * math.pi**4 * 3.0**4)
    check(
        "mirror-profile-anchor",
        abs(prof.value / exact - 1.0) < 1e-6,
        f"ratio={prof.value / exact:.8f}",
    )

    sphere = SphereSpec(alpha0=4.5e-39, omega0=2 * math.pi * CONSTANTS.c / gold.lambda_p)
    lt = thermal_wavelength(300.0)
    ut = mean_cp_T(5 * lt, 300.0, gold, sphere)
    eq = mean_thermal(5 * lt, 300.0, sphere)
    check("thermal-mean-anchor", abs(ut.value / eq - 1.0) < 0.05, f"ratio={ut.value / eq:.6f}")

    # Small-sample variance point: finite, positive, errors sane.
    plan = McPlan(seed=11, n_samples=40_000)
    point = F_of_z(3.0 * gold.lambda_p, gold, sphere, plan)
    check(
        "fvar-smoke-point",
        point.F > 0 and point.F_err < point.F,
        f"F={point.F:.4g} +- {point.F_err:.2g}",
    )

    # Determinism: identical plan twice.
    point2 = F_of_z(3.0 * gold.lambda_p, gold, sphere, plan)
    check("fvar-determinism", point.F == point2.F, "bit-identical repeat")
    return checks


def _verify_full() -> list[dict]:
    checks = _verify_smoke()

    def check(name, passed, detail):
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    gold = derive_scales(load_preset("gold"))
    sphere = SphereSpec(alpha0=4.5e-39, omega0=2 * math.pi * CONSTANTS.c / gold.lambda_p)

    # Retarded mean anchor at distance.
    res = mean_cp_T0(100 * gold.lambda_p, gold, sphere)
    ratio = res.value / mean_retarded(100 * gold.lambda_p, sphere)
    check("retarded-mean-anchor", abs(ratio - 1.0) < 0.02, f"ratio={ratio:.5f}")

    # Near-field slope of F with a moderate budget.
    plan = McPlan(seed=31, n_samples=400_000)
    zs = [0.03, 0.05, 0.08]
    pts = [F_of_z(zb * gold.lambda_p, gold, sphere, plan) for zb in zs]
    fit = fit_loglog_slope(
        [p.z_over_lambda_p for p in pts], [p.F for p in pts], [p.F_err for p in pts]
    )
    check(
        "near-slope",
        abs(fit.slope + 3.0) < 0.3,
        f"slope={fit.slope:.3f}+-{fit.slope_err:.3f}",
    )

    # MC vs deterministic momentum integral at one interior point.
    from .quadrature import McPlan as _Plan
    from .variance import momentum_integral_mc, momentum_integral_quad

    mc = momentum_integral_mc(0.02, 0.03, 10.0, 0.01, _Plan(seed=41, n_samples=400_000))
    det = momentum_integral_quad(0.02, 0.03, 10.0, 0.01, n_radial=40, n_angle=32)
    pull = (mc.value - det) / mc.err_est
    check("momentum-oracle-pull", abs(pull) < 4.0, f"pull={pull:+.2f} sigma")
    return checks


def _cmd_verify(args) -> int:
    start = time.time()
    runner = {"desk": _verify_desk, "smoke": _verify_smoke, "full": _verify_full}[
        args.level
    ]
    checks = runner()
    passed = all(c["passed"] for c in checks)
    verdict = {
        "level": args.level,
        "passed": passed,
        "n_checks": len(checks),
        "n_failed": sum(not c["passed"] for c in checks),
        "elapsed_s": round(time.time() - start, 3),
        "checks": checks,
    }
    text = json.dumps(verdict, indent=2) + "\n"
    if args.out:
        _atomic_write(Path(args.out), text)
    sys.stdout.write(text)
    return EXIT_OK if passed else EXIT_FAIL


# --------------------------------------------------------------------------
# Entry point
# --------------------------------------------------------------------------


def _add_common(sub, needs_out=True):
    sub.add_argument("--config", help="JSON configuration file")
    sub.add_argument("--seed", type=int, help="override RNG seed")
    sub.add_argument("--samples", type=int, help="override MC sample count")
    sub.add_argument("--model", choices=["drude", "plasma"], help="conduction model")
    sub.add_argument(
        "--kernel-variant",
        dest="kernel_variant",
        choices=["a", "b"],
        help="polarization-overlap power in the variance kernel",
    )
    sub.add_argument("--temperature", type=float, help="temperature [K]")
    sub.add_argument(
        "--z-grid",
        dest="z_grid",
        help="distances in plasma wavelengths: start:stop:n[:log|linear] or v1,v2,...",
    )
    if needs_out:
        sub.add_argument("--out", required=True, help="output CSV path")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="casimir-speckle",
        description="Mean atom-surface potential and its disorder-induced variance.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_mean = subs.add_parser("mean", help="mean potential over a distance grid")
    _add_common(p_mean)

    p_fvar = subs.add_parser("fvar", help="variance profile F(z) over a distance grid")
    _add_common(p_fvar)

    p_mat = subs.add_parser("material", help="derived scales and fluctuation strength")
    _add_common(p_mat, needs_out=False)
    p_mat.add_argument("--out", help="optional output JSON path")

    p_asym = subs.add_parser("asymptote", help="closed-form laws / calibration report")
    _add_common(p_asym, needs_out=False)
    p_asym.add_argument("--out", help="output CSV path (law curves)")
    p_asym.add_argument(
        "--regime",
        choices=["intermediate", "far", "thermal"],
        default="intermediate",
    )
    p_asym.add_argument(
        "--calibrate",
        action="store_true",
        help="report residual amplitude factors of an fvar CSV",
    )
    p_asym.add_argument("--data", help="fvar CSV to calibrate against")

    p_ver = subs.add_parser("verify", help="run self-checks")
    p_ver.add_argument(
        "level", nargs="?", choices=["smoke", "desk", "full"], default="smoke"
    )
    p_ver.add_argument("--out", help="optional JSON verdict path")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "mean":
            return _cmd_mean(args)
        if args.command == "fvar":
            return _cmd_fvar(args)
        if args.command == "material":
            return _cmd_material(args)
        if args.command == "asymptote":
            return _cmd_asymptote(args)
        if args.command == "verify":
            return _cmd_verify(args)
        parser.error(f"unknown command {args.command!r}")
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, FloatingPointError) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
