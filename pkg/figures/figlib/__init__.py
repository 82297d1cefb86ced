"""Batch figure regeneration for casimir-speckle sweep output.

This package deliberately does NOT import casimir_speckle: the only
coupling is the CSV file contract reproduced in CANONICAL_HEADER below and
the frozen asymptotic-law constants.  It draws what the CSV and the law
formulas provide -- no fitting, no reinterpretation of numbers.
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # headless batch rendering

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

__all__ = [
    "CANONICAL_HEADER",
    "FigureSpec",
    "OverlaySpec",
    "SchemaError",
    "SpecError",
    "SeriesSpec",
    "build_figure",
    "law_curve",
    "load_spec",
    "read_series_csv",
    "render_figure",
]

# The CSV contract of `casimir-speckle fvar` / `mean`, column for column.
CANONICAL_HEADER = [
    "z_over_lambda_p",
    "F",
    "F_err",
    "n_samples",
    "regime",
    "U_mean",
    "prefactor",
    "fingerprint",
]

# Frozen reference amplitudes of the three asymptotic windows (same numbers
# the producing package freezes; duplicated here on purpose so the figure
# layer stays import-independent).
C1 = 8.0e-5
C2 = 3.9e-5
C3 = 115.7

_MARKERS = ("o", "s", "D", "^", "v", "p")


class SpecError(ValueError):
    """The figure-spec JSON passed via --spec is malformed or incomplete."""


class SchemaError(ValueError):
    """A referenced CSV does not match the canonical column contract."""


@dataclass(frozen=True)
class SeriesSpec:
    csv: str
    label: str | None = None
    y_column: str = "F"
    err_column: str | None = "F_err"


@dataclass(frozen=True)
class OverlaySpec:
    """A dashed law curve.

    kind: 'intermediate' needs nothing extra; 'far' needs
    lambda_gamma_over_lambda_p; 'thermal' needs lambda_T_over_lambda_p and
    lambda_gamma_over_lambda_p.  All heights are in plasma wavelengths to
    match the CSV's x column.
    """

    kind: str
    lambda_gamma_over_lambda_p: float | None = None
    lambda_T_over_lambda_p: float | None = None
    label: str | None = None


@dataclass(frozen=True)
class FigureSpec:
    series: tuple[SeriesSpec, ...]
    output: str
    overlays: tuple[OverlaySpec, ...] = ()
    axes: str = "loglog"  # or "loglinear"
    title: str | None = None
    x_label: str = "z / lambda_p"
    y_label: str = "F(z)"
    x_range: tuple[float, float] | None = None
    figsize: tuple[float, float] = (6.4, 4.8)
    dpi: int = 150


def load_spec(path: str | os.PathLike) -> FigureSpec:
    """Parse and validate a FigureSpec JSON file."""
    try:
        raw = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise SpecError(f"spec file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"spec is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise SpecError("spec must be a JSON object")

    known = {
        "series", "output", "overlays", "axes", "title",
        "x_label", "y_label", "x_range", "figsize", "dpi",
    }
    unknown = sorted(set(raw) - known)
    if unknown:
        raise SpecError(f"unknown spec field: {unknown[0]}")

    series_raw = raw.get("series")
    if not series_raw or not isinstance(series_raw, list):
        raise SpecError("spec needs a non-empty 'series' list")
    series = []
    for i, s in enumerate(series_raw):
        if not isinstance(s, dict) or "csv" not in s:
            raise SpecError(f"series[{i}] needs a 'csv' path")
        extra = sorted(set(s) - {"csv", "label", "y_column", "err_column"})
        if extra:
            raise SpecError(f"series[{i}] has unknown field: {extra[0]}")
        series.append(SeriesSpec(**s))

    overlays = []
    for i, o in enumerate(raw.get("overlays", [])):
        if not isinstance(o, dict) or "kind" not in o:
            raise SpecError(f"overlays[{i}] needs a 'kind'")
        extra = sorted(
            set(o)
            - {"kind", "lambda_gamma_over_lambda_p", "lambda_T_over_lambda_p", "label"}
        )
        if extra:
            raise SpecError(f"overlays[{i}] has unknown field: {extra[0]}")
        ov = OverlaySpec(**o)
        _validate_overlay(ov, i)
        overlays.append(ov)

    output = raw.get("output")
    if not output or not isinstance(output, str):
        raise SpecError("spec needs an 'output' image path")
    if Path(output).suffix.lower() not in (".png", ".svg", ".pdf"):
        raise SpecError("output must end in .png, .svg, or .pdf")

    axes = raw.get("axes", "loglog")
    if axes not in ("loglog", "loglinear"):
        raise SpecError("axes must be 'loglog' or 'loglinear'")

    x_range = raw.get("x_range")
    if x_range is not None:
        if (
            not isinstance(x_range, list)
            or len(x_range) != 2
            or not all(isinstance(v, (int, float)) for v in x_range)
            or not 0 < x_range[0] < x_range[1]
        ):
            raise SpecError("x_range must be [lo, hi] with 0 < lo < hi")
        x_range = (float(x_range[0]), float(x_range[1]))

    figsize = raw.get("figsize", [6.4, 4.8])
    dpi = raw.get("dpi", 150)

    return FigureSpec(
        series=tuple(series),
        output=output,
        overlays=tuple(overlays),
        axes=axes,
        title=raw.get("title"),
        x_label=raw.get("x_label", "z / lambda_p"),
        y_label=raw.get("y_label", "F(z)"),
        x_range=x_range,
        figsize=(float(figsize[0]), float(figsize[1])),
        dpi=int(dpi),
    )


def _validate_overlay(ov: OverlaySpec, index: int) -> None:
    if ov.kind not in ("intermediate", "far", "thermal"):
        raise SpecError(
            f"overlays[{index}].kind must be intermediate, far, or thermal"
        )
    if ov.kind == "far" and not ov.lambda_gamma_over_lambda_p:
        raise SpecError(
            f"overlays[{index}] (far) needs lambda_gamma_over_lambda_p"
        )
    if ov.kind == "thermal" and (
        not ov.lambda_T_over_lambda_p or not ov.lambda_gamma_over_lambda_p
    ):
        raise SpecError(
            f"overlays[{index}] (thermal) needs lambda_T_over_lambda_p "
            "and lambda_gamma_over_lambda_p"
        )


def read_series_csv(path: str | os.PathLike, series: SeriesSpec | None = None):
    """Read one sweep CSV, enforcing the canonical schema.

    Returns (x, y, yerr) float lists; yerr is None when the series turns
    error bars off (err_column null).
    """
    series = series or SeriesSpec(csv=str(path))
    try:
        fh = open(path, newline="")
    except FileNotFoundError:
        raise SchemaError(f"csv not found: {path}") from None
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file (no header)") from None
        for got, want in zip(header, CANONICAL_HEADER):
            if got != want:
                raise SchemaError(
                    f"{path}: column '{got}' where '{want}' belongs"
                )
        if len(header) < len(CANONICAL_HEADER):
            missing = CANONICAL_HEADER[len(header)]
            raise SchemaError(f"{path}: missing column '{missing}'")
        if len(header) > len(CANONICAL_HEADER):
            raise SchemaError(
                f"{path}: unexpected column '{header[len(CANONICAL_HEADER)]}'"
            )
        idx = {name: i for i, name in enumerate(header)}
        if series.y_column not in idx:
            raise SchemaError(f"{path}: missing column '{series.y_column}'")
        if series.err_column is not None and series.err_column not in idx:
            raise SchemaError(f"{path}: missing column '{series.err_column}'")
        x, y, yerr = [], [], []
        for row in reader:
            if not row:
                continue
            x.append(float(row[idx["z_over_lambda_p"]]))
            y.append(float(row[idx[series.y_column]]))
            if series.err_column is not None:
                yerr.append(float(row[idx[series.err_column]]))
    if not x:
        raise SchemaError(f"{path}: no data rows")
    return x, y, (yerr if series.err_column is not None else None)


def law_curve(ov: OverlaySpec, z_bars):
    """Evaluate the requested frozen asymptotic law at heights z/lambda_p."""
    if ov.kind == "intermediate":
        return [C1 / zb**4 for zb in z_bars]
    if ov.kind == "far":
        lg = float(ov.lambda_gamma_over_lambda_p)
        return [C2 * (1.0 / lg) ** 4 * (lg / zb) ** 4.5 for zb in z_bars]
    # thermal: cubic rise under an 8 pi exponential decay in z/lambda_T
    lt = float(ov.lambda_T_over_lambda_p)
    lg = float(ov.lambda_gamma_over_lambda_p)
    amp = C3 * (1.0 / lt) ** 4 / math.sqrt(1.0 + lt / lg)
    return [
        amp * (zb / lt) ** 3 * math.exp(-8.0 * math.pi * zb / lt) for zb in z_bars
    ]


def _overlay_grid(spec: FigureSpec, x_all):
    lo = spec.x_range[0] if spec.x_range else min(x_all)
    hi = spec.x_range[1] if spec.x_range else max(x_all)
    n = 200
    if spec.axes == "loglog":
        step = (math.log(hi) - math.log(lo)) / (n - 1)
        return [math.exp(math.log(lo) + step * i) for i in range(n)]
    step = (hi - lo) / (n - 1)
    return [lo + step * i for i in range(n)]


def build_figure(spec: FigureSpec):
    """Assemble the matplotlib Figure without writing it.

    Returns (fig, series_lines, overlay_lines) where series_lines[i] is the
    data Line2D of series i (its xydata is exactly what the CSV holds) and
    overlay_lines[j] the dashed law Line2D of overlay j.
    """
    plt.rcParams["svg.hashsalt"] = "casimir-speckle-figures"
    fig, ax = plt.subplots(figsize=spec.figsize)
    series_lines = []
    x_all = []
    for i, s in enumerate(spec.series):
        x, y, yerr = read_series_csv(s.csv, s)
        x_all.extend(x)
        container = ax.errorbar(
            x,
            y,
            yerr=yerr,
            fmt=_MARKERS[i % len(_MARKERS)],
            markersize=4,
            capsize=2,
            linestyle="none",
            label=s.label or Path(s.csv).stem,
        )
        series_lines.append(container.lines[0])

    overlay_lines = []
    for ov in spec.overlays:
        grid = _overlay_grid(spec, x_all)
        (line,) = ax.plot(
            grid,
            law_curve(ov, grid),
            linestyle="--",
            linewidth=1.2,
            color="0.25",
            label=ov.label or ov.kind,
        )
        overlay_lines.append(line)

    if spec.axes == "loglog":
        ax.set_xscale("log")
    ax.set_yscale("log")
    if spec.x_range:
        ax.set_xlim(*spec.x_range)
    ax.set_xlabel(spec.x_label)
    ax.set_ylabel(spec.y_label)
    if spec.title:
        ax.set_title(spec.title)
    ax.legend(frameon=False, fontsize=9)
    fig.tight_layout()
    return fig, series_lines, overlay_lines


def render_figure(spec: FigureSpec) -> str:
    """Validate inputs, draw, and write the image.  Returns the output path.

    All CSVs are read (and therefore schema-checked) before anything is
    written, so a failing spec never leaves a partial image behind.
    """
    fig, _, _ = build_figure(spec)
    try:
        out = Path(spec.output)
        if out.parent and not out.parent.exists():
            raise SpecError(f"output directory does not exist: {out.parent}")
        # strip the embedded timestamps so identical specs give identical bytes
        suffix = out.suffix.lower()
        metadata = None
        if suffix == ".svg":
            metadata = {"Date": None}
        elif suffix == ".pdf":
            metadata = {"CreationDate": None}
        fig.savefig(out, dpi=spec.dpi, metadata=metadata)
    finally:
        plt.close(fig)
    return str(spec.output)
