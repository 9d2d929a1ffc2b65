"""Deterministic rendering of solver CSVs into publication-style figures.

Five kinds, one per documented CSV schema:

  heatmap    map.csv             log10 max growth rate over (V1, W1)
  eigscatter eigenvalues.csv     linearization spectrum in the complex plane
  profile    profile.csv         |phi_j(x)| and the local power flux
  spacetime  snapshot_t*.csv...  |psi_j(x, t)| assembled from snapshots
  timeseries trace.csv           powers and peak amplitudes against time

Rendering is read-only and reproducible: fixed figure sizes, fixed
colormaps, fixed dpi, no timestamps.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["FigureSpec", "RenderInfo", "SchemaMismatch", "render", "KINDS"]

KINDS = ("heatmap", "eigscatter", "profile", "spacetime", "timeseries")

LOG_FLOOR = 1e-8
DPI = 100
HEAT_CMAP = "viridis"
MARKER_COLOR = "#0000ff"
SNAPSHOT_NAME = re.compile(r"snapshot_t([0-9]+(?:\.[0-9]+)?)\.csv$")

_SCHEMAS = {
    "heatmap": ("V1", "W1", "max_im", "log10_max_im", "status"),
    "eigscatter": ("re_eig", "im_eig"),
    "profile": ("x", "re_phi1", "im_phi1", "re_phi2", "im_phi2", "s1", "s2"),
    "spacetime": ("x", "re_psi1", "im_psi1", "re_psi2", "im_psi2"),
    "timeseries": ("t", "P1", "P2", "P", "amax1", "amax2"),
}


class SchemaMismatch(Exception):
    """An input CSV does not carry the columns its figure kind declares."""


@dataclass(frozen=True)
class FigureSpec:
    """What to render: input CSVs, figure kind, labels, output path."""

    kind: str
    inputs: tuple[Path, ...]
    output: Path
    xlabel: Optional[str] = None
    ylabel: Optional[str] = None


@dataclass(frozen=True)
class RenderInfo:
    """What was rendered, for callers that verify the output."""

    output: Path
    cells: int = 0
    points: int = 0
    extras: dict = field(default_factory=dict)


def _read_csv(path: Path, kind: str) -> dict[str, list[str]]:
    path = Path(path)
    if not path.exists():
        raise SchemaMismatch(f"input file not found: {path}")
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in _SCHEMAS[kind]:
            if column not in header:
                raise SchemaMismatch(
                    f"{path.name} lacks column {column!r} required by kind {kind!r}"
                )
        table: dict[str, list[str]] = {name: [] for name in header}
        for row in reader:
            for name in header:
                table[name].append(row[name])
    return table


def _floats(table: dict[str, list[str]], column: str) -> np.ndarray:
    return np.array([float(v) for v in table[column]])


def _new_axes(figsize):
    fig, ax = plt.subplots(figsize=figsize, dpi=DPI)
    return fig, ax


def _finish(fig, spec: FigureSpec) -> None:
    Path(spec.output).parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.output, dpi=DPI, metadata={"Software": None})
    plt.close(fig)


def _render_heatmap(spec: FigureSpec) -> RenderInfo:
    table = _read_csv(spec.inputs[0], "heatmap")
    v = _floats(table, "V1")
    w = _floats(table, "W1")
    log_rate = _floats(table, "log10_max_im")
    status = table["status"]

    v_values = np.unique(v)
    w_values = np.unique(w)
    cells = len(v)
    if len(v_values) * len(w_values) != cells:
        raise SchemaMismatch(
            f"{Path(spec.inputs[0]).name} is not a full rectangular sweep: "
            f"{len(v_values)} x {len(w_values)} grid vs {cells} rows"
        )
    grid = np.full((len(w_values), len(v_values)), np.nan)
    iv = np.searchsorted(v_values, v)
    iw = np.searchsorted(w_values, w)
    ok = np.array([s == "ok" for s in status])
    grid[iw[ok], iv[ok]] = log_rate[ok]

    fig, ax = _new_axes((6.0, 4.8))
    masked = np.ma.masked_invalid(grid)
    cmap = plt.get_cmap(HEAT_CMAP).copy()
    cmap.set_bad("lightgray")
    mesh = ax.pcolormesh(
        v_values,
        w_values,
        masked,
        shading="nearest",
        cmap=cmap,
        vmin=np.log10(LOG_FLOOR),
        vmax=max(float(np.nanmax(grid)), np.log10(LOG_FLOOR) + 1) if ok.any() else 0.0,
    )
    fig.colorbar(mesh, ax=ax, label="log10 max |Im|")
    ax.set_xlabel(spec.xlabel or "V1")
    ax.set_ylabel(spec.ylabel or "W1")
    _finish(fig, spec)
    return RenderInfo(output=spec.output, cells=cells, points=int(ok.sum()))


def _render_eigscatter(spec: FigureSpec) -> RenderInfo:
    table = _read_csv(spec.inputs[0], "eigscatter")
    re_eig = _floats(table, "re_eig")
    im_eig = _floats(table, "im_eig")

    fig, ax = _new_axes((4.8, 4.8))
    ax.scatter(re_eig, im_eig, s=6, c=MARKER_COLOR, marker="o", linewidths=0)
    half_width = 1.05 * max(float(np.max(np.abs(re_eig))), 1e-12)
    ax.set_xlim(-half_width, half_width)
    im_span = 1.05 * max(float(np.max(np.abs(im_eig))), 1e-12)
    ax.set_ylim(-im_span, im_span)
    ax.axvline(0.0, color="0.8", linewidth=0.6, zorder=0)
    ax.set_xlabel(spec.xlabel or "Re")
    ax.set_ylabel(spec.ylabel or "Im")
    # the pixel column of Re = 0, for symmetry checks on the raster
    fig.canvas.draw()
    x_zero_px = float(ax.transData.transform((0.0, 0.0))[0])
    _finish(fig, spec)
    return RenderInfo(
        output=spec.output,
        points=len(re_eig),
        extras={"x_zero_px": x_zero_px},
    )


def _render_profile(spec: FigureSpec) -> RenderInfo:
    table = _read_csv(spec.inputs[0], "profile")
    x = _floats(table, "x")
    mod1 = np.hypot(_floats(table, "re_phi1"), _floats(table, "im_phi1"))
    mod2 = np.hypot(_floats(table, "re_phi2"), _floats(table, "im_phi2"))
    s1 = _floats(table, "s1")
    s2 = _floats(table, "s2")

    fig, (top, bottom) = plt.subplots(2, 1, figsize=(6.0, 6.0), dpi=DPI, sharex=True)
    top.plot(x, mod1, color="tab:blue", label="|phi1|")
    top.plot(x, mod2, color="tab:orange", label="|phi2|")
    top.set_ylabel("modulus")
    top.legend(loc="upper right")
    bottom.plot(x, s1, color="tab:blue", label="flux 1")
    bottom.plot(x, s2, color="tab:orange", label="flux 2")
    bottom.set_xlabel(spec.xlabel or "x")
    bottom.set_ylabel(spec.ylabel or "power flux")
    bottom.legend(loc="upper right")
    _finish(fig, spec)
    return RenderInfo(output=spec.output, points=len(x))


def _snapshot_time(path: Path) -> float:
    match = SNAPSHOT_NAME.search(Path(path).name)
    if not match:
        raise SchemaMismatch(
            f"{Path(path).name} does not look like snapshot_t<time>.csv; "
            "the snapshot time is read from the filename"
        )
    return float(match.group(1))


def _render_spacetime(spec: FigureSpec) -> RenderInfo:
    entries = sorted(((_snapshot_time(p), p) for p in spec.inputs), key=lambda e: e[0])
    times = np.array([t for t, _ in entries])
    rows1, rows2 = [], []
    x = None
    for _, path in entries:
        table = _read_csv(path, "spacetime")
        x_here = _floats(table, "x")
        if x is None:
            x = x_here
        elif x_here.shape != x.shape or not np.allclose(x_here, x):
            raise SchemaMismatch(f"{Path(path).name} has a different spatial grid")
        rows1.append(np.hypot(_floats(table, "re_psi1"), _floats(table, "im_psi1")))
        rows2.append(np.hypot(_floats(table, "re_psi2"), _floats(table, "im_psi2")))

    fig, axes = plt.subplots(1, 2, figsize=(8.0, 4.2), dpi=DPI, sharey=True)
    for ax, rows, tag in ((axes[0], rows1, "|psi1|"), (axes[1], rows2, "|psi2|")):
        mesh = ax.pcolormesh(x, times, np.array(rows), shading="nearest", cmap=HEAT_CMAP)
        fig.colorbar(mesh, ax=ax, label=tag)
        ax.set_xlabel(spec.xlabel or "x")
    axes[0].set_ylabel(spec.ylabel or "t")
    _finish(fig, spec)
    return RenderInfo(output=spec.output, cells=len(times) * len(x), points=len(times))


def _render_timeseries(spec: FigureSpec) -> RenderInfo:
    table = _read_csv(spec.inputs[0], "timeseries")
    t = _floats(table, "t")

    fig, (top, bottom) = plt.subplots(2, 1, figsize=(6.0, 6.0), dpi=DPI, sharex=True)
    top.plot(t, _floats(table, "P1"), color="tab:blue", label="P1")
    top.plot(t, _floats(table, "P2"), color="tab:orange", label="P2")
    top.plot(t, _floats(table, "P"), color="tab:green", label="P")
    top.set_ylabel("power")
    top.legend(loc="best")
    bottom.plot(t, _floats(table, "amax1"), color="tab:blue", label="peak |psi1|")
    bottom.plot(t, _floats(table, "amax2"), color="tab:orange", label="peak |psi2|")
    bottom.set_xlabel(spec.xlabel or "t")
    bottom.set_ylabel(spec.ylabel or "peak amplitude")
    bottom.legend(loc="best")
    _finish(fig, spec)
    return RenderInfo(output=spec.output, points=len(t))


_RENDERERS = {
    "heatmap": _render_heatmap,
    "eigscatter": _render_eigscatter,
    "profile": _render_profile,
    "spacetime": _render_spacetime,
    "timeseries": _render_timeseries,
}


def render(spec: FigureSpec) -> RenderInfo:
    """Render one figure; returns counts the caller can verify.

    Raises
    ------
    SchemaMismatch
        If an input is missing, lacks a declared column, or (spacetime)
        mixes spatial grids.
    """
    if spec.kind not in _RENDERERS:
        raise SchemaMismatch(f"unknown figure kind {spec.kind!r}; choose from {KINDS}")
    if not spec.inputs:
        raise SchemaMismatch("at least one input CSV is required")
    if spec.kind != "spacetime" and len(spec.inputs) != 1:
        raise SchemaMismatch(f"kind {spec.kind!r} takes exactly one input CSV")
    return _RENDERERS[spec.kind](spec)
