"""Synthetic schema-conformant CSVs plus real solver outputs (when available)."""

from __future__ import annotations

import shutil
import subprocess
from pathlib import Path

import numpy as np
import pytest

HAVE_SOLVER = shutil.which("ptgpe") is not None


def write_csv(path: Path, header: str, rows) -> Path:
    lines = [header]
    lines += [",".join(f"{v:.17g}" if not isinstance(v, str) else v for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture
def synthetic_map_csv(tmp_path):
    rows = []
    for w in np.linspace(-0.5, 0.5, 4):
        for v in np.linspace(0.0, 2.0, 5):
            bad = v > 1.8
            rate = np.nan if bad else 10 ** (-6 + 2 * abs(w))
            rows.append(
                (
                    v,
                    w,
                    rate,
                    np.nan if bad else np.log10(max(rate, 1e-8)),
                    "no_real_amplitude" if bad else "ok",
                )
            )
    return write_csv(tmp_path / "map.csv", "V1,W1,max_im,log10_max_im,status", rows)


@pytest.fixture
def synthetic_eig_csv(tmp_path):
    rng = np.random.default_rng(5)
    reals = rng.uniform(-50, 50, 200)
    quads = rng.uniform(0.5, 30, 25) + 1j * rng.uniform(0.01, 2, 25)
    eigs = np.concatenate(
        [reals.astype(complex), quads, -np.conj(quads), np.conj(quads), -quads]
    )
    rows = [(e.real, e.imag) for e in eigs]
    return write_csv(tmp_path / "eigenvalues.csv", "re_eig,im_eig", rows)


@pytest.fixture
def synthetic_trace_csv(tmp_path):
    t = np.linspace(0, 100, 201)
    p1 = 0.5 + 0.01 * np.sin(t / 10)
    p2 = 1.5 + 0.02 * np.cos(t / 7)
    rows = list(zip(t, p1, p2, p1 + p2, np.sqrt(p1), np.sqrt(p2)))
    return write_csv(tmp_path / "trace.csv", "t,P1,P2,P,amax1,amax2", rows)


@pytest.fixture
def synthetic_profile_csv(tmp_path):
    x = np.linspace(-20, 20, 128)
    mod = 0.8 / np.cosh(x)
    rows = list(zip(x, mod, 0 * x, 0.5 * mod, 0 * x, 0.1 * mod**3, 0.05 * mod**3))
    return write_csv(
        tmp_path / "profile.csv", "x,re_phi1,im_phi1,re_phi2,im_phi2,s1,s2", rows
    )


@pytest.fixture
def synthetic_snapshots(tmp_path):
    x = np.linspace(-20, 20, 64)
    paths = []
    for t in (0.0, 5.0, 10.0):
        width = 1.0 + 0.05 * t
        mod = 0.8 / np.cosh(x / width)
        paths.append(
            write_csv(
                tmp_path / f"snapshot_t{t:.6f}.csv",
                "x,re_psi1,im_psi1,re_psi2,im_psi2",
                list(zip(x, mod, 0 * x, 0.5 * mod, 0 * x)),
            )
        )
    return paths


def run_solver(args: list[str], cwd: Path) -> None:
    subprocess.run(["ptgpe", *args], cwd=cwd, check=True, capture_output=True, text=True)


@pytest.fixture(scope="session")
def solver_outputs(tmp_path_factory):
    """Real smoke outputs from the installed solver CLI, shared per session."""
    if not HAVE_SOLVER:
        pytest.skip("ptgpe CLI not installed")
    root = tmp_path_factory.mktemp("solver")
    base = [
        "--set", "model.a1=1", "--set", "model.a2=1",
        "--set", "model.v1=1", "--set", "model.v2=1",
        "--set", "model.w1=0.25", "--set", "model.w2=0.25",
        "--set", "amplitude.amp1=0.5",
    ]
    run_solver(
        ["map", *base, "--set", "grid.n_points=32",
         "--set", "map.v_min=0.5", "--set", "map.v_max=3", "--set", "map.v_count=10",
         "--set", "map.w_min=0", "--set", "map.w_max=0.6", "--set", "map.w_count=10",
         "--out", str(root / "map")],
        cwd=root,
    )
    run_solver(
        ["stability", *base, "--set", "grid.n_points=64", "--out", str(root / "stab")],
        cwd=root,
    )
    run_solver(
        ["evolve", *base, "--set", "grid.n_points=64", "--set", "evolve.t_end=2",
         "--set", "evolve.snapshot_times=0, 1, 2", "--out", str(root / "run")],
        cwd=root,
    )
    return root
