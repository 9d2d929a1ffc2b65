"""Result serialization: CSV schemas and the JSON run manifest.

All numeric output uses 17 significant digits and a '.' decimal
separator so files round-trip exactly and never depend on locale.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

import numpy as np

from . import __version__
from .config import RunConfig
from .evolution import EvolutionTrace
from .grid import GridSpec
from .model import EqualAmplitudes, FixedA1
from .stability import MapResult

__all__ = [
    "fmt",
    "write_map_csv",
    "write_trace_csv",
    "write_snapshots",
    "write_eigenvalues_csv",
    "write_profile_csv",
    "write_manifest",
    "snapshot_filename",
]

TRACE_HEADER = "t,P1,P2,P,amax1,amax2"
MAP_HEADER = "V1,W1,max_im,log10_max_im,status"
SNAPSHOT_HEADER = "x,re_psi1,im_psi1,re_psi2,im_psi2"
EIGENVALUES_HEADER = "re_eig,im_eig"
PROFILE_HEADER = "x,re_phi1,im_phi1,re_phi2,im_phi2,s1,s2"


def fmt(value: float) -> str:
    """Round-trip-safe decimal rendering (17 significant digits)."""
    return f"{value:.17g}"


def _write_rows(path: Path, header: str, rows: Iterable[Iterable[float]]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) if not isinstance(v, str) else v for v in row) + "\n")


def write_map_csv(result: MapResult, path: Path) -> None:
    """One row per cell, the V grid varying fastest within each W row."""
    rows = []
    for iw, w in enumerate(result.w_values):
        for iv, v in enumerate(result.v_values):
            rows.append(
                (
                    float(v),
                    float(w),
                    float(result.max_im[iw, iv]),
                    float(result.log10_max_im[iw, iv]),
                    str(result.status[iw, iv]),
                )
            )
    _write_rows(Path(path), MAP_HEADER, rows)


def write_trace_csv(trace: EvolutionTrace, path: Path) -> None:
    rows = zip(
        trace.times, trace.power1, trace.power2, trace.power_total, trace.amax1, trace.amax2
    )
    _write_rows(Path(path), TRACE_HEADER, ((float(a) for a in row) for row in rows))


def snapshot_filename(t: float) -> str:
    return f"snapshot_t{t:.6f}.csv"


def write_snapshots(trace: EvolutionTrace, grid: GridSpec, out_dir: Path) -> list[Path]:
    paths = []
    for snap in trace.snapshots:
        path = Path(out_dir) / snapshot_filename(snap.t)
        rows = zip(grid.x, snap.psi1.real, snap.psi1.imag, snap.psi2.real, snap.psi2.imag)
        _write_rows(path, SNAPSHOT_HEADER, ((float(a) for a in row) for row in rows))
        paths.append(path)
    return paths


def write_eigenvalues_csv(eigenvalues: np.ndarray, path: Path) -> None:
    _write_rows(
        Path(path),
        EIGENVALUES_HEADER,
        ((float(e.real), float(e.imag)) for e in np.asarray(eigenvalues)),
    )


def write_profile_csv(
    grid: GridSpec,
    phi1: np.ndarray,
    phi2: np.ndarray,
    s1: np.ndarray,
    s2: np.ndarray,
    path: Path,
) -> None:
    rows = zip(grid.x, phi1.real, phi1.imag, phi2.real, phi2.imag, s1, s2)
    _write_rows(Path(path), PROFILE_HEADER, ((float(a) for a in row) for row in rows))


def config_as_dict(config: RunConfig) -> dict:
    """All run parameters with defaults materialized, for the manifest."""
    amplitude: dict[str, object]
    if isinstance(config.amplitude, FixedA1):
        amplitude = {"mode": "fixed_a1", "amp1": config.amplitude.amp1}
    elif isinstance(config.amplitude, EqualAmplitudes):
        amplitude = {"mode": "equal"}
    else:  # pragma: no cover - modes are a closed union
        amplitude = {"mode": repr(config.amplitude)}
    out = {
        "mode": config.mode,
        "model": {
            "a1": config.model.a1,
            "a2": config.model.a2,
            "v1": config.model.v1,
            "v2": config.model.v2,
            "w1": config.model.w1,
            "w2": config.model.w2,
            "nu1": config.model.nu1,
            "nu2": config.model.nu2,
        },
        "amplitude": amplitude,
        "grid": {"half_length": config.grid.half_length, "n_points": config.grid.n_points},
        "stability": {"threshold": config.threshold},
        "evolve": {
            "dt": config.dt,
            "t_end": config.t_end,
            "seed": config.seed,
            "noise_amplitude": config.noise_amplitude,
            "complex_noise": config.complex_noise,
            "sample_every": config.sample_every,
            "snapshot_times": list(config.snapshot_times),
        },
        "schedule": {
            "ramp_end": config.ramp_end,
            "hold_end": config.hold_end,
            "ramps": {k: list(v) for k, v in config.schedules.items()},
        },
    }
    if config.map_v is not None:
        out["map"] = {
            "v_min": config.map_v[0],
            "v_max": config.map_v[1],
            "v_count": config.map_v[2],
            "w_min": config.map_w[0],
            "w_max": config.map_w[1],
            "w_count": config.map_w[2],
        }
    return out


def write_manifest(
    config: RunConfig,
    results: dict,
    outputs: list[Path],
    flags: dict,
    path: Path,
) -> None:
    payload = {
        "package": "ptgpe",
        "version": __version__,
        "config": config_as_dict(config),
        "results": results,
        "outputs": [str(Path(p).name) for p in outputs],
        "flags": flags,
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
