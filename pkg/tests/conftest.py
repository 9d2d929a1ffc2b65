"""Shared fixtures: canonical parameter sets and cached spectra.

The five canonical parameter sets exercised throughout: focusing
stable/unstable, defocusing stable/unstable, and the small-potential
oscillating case.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pytest

from ptgpe import (
    FixedA1,
    GridSpec,
    ModelParams,
    SolitonSolution,
    assemble_stability_matrix,
    eigenspectrum,
    make_grid,
    solve_amplitudes,
)


@dataclass(frozen=True)
class CanonicalSet:
    name: str
    a: float
    v: float
    w: float
    amp1: float = 0.5

    def params(self) -> ModelParams:
        return ModelParams(a1=self.a, a2=self.a, v1=self.v, v2=self.v, w1=self.w, w2=self.w)

    def solution(self) -> SolitonSolution:
        return solve_amplitudes(self.params(), FixedA1(self.amp1))


CANONICAL_SETS = (
    CanonicalSet("focusing-stable", a=1.0, v=1.0, w=0.25),
    CanonicalSet("focusing-unstable", a=1.0, v=1.0, w=0.55),
    CanonicalSet("defocusing-stable", a=-1.0, v=8.0, w=3.0),
    CanonicalSet("defocusing-unstable", a=-1.0, v=8.0, w=2.0),
    CanonicalSet("oscillating", a=1.0, v=0.01, w=0.06),
)


@pytest.fixture(scope="session")
def grid256() -> GridSpec:
    return make_grid(20.0, 256)


@pytest.fixture(scope="session")
def grid128() -> GridSpec:
    return make_grid(20.0, 128)


@pytest.fixture(scope="session")
def grid64() -> GridSpec:
    return make_grid(20.0, 64)


class SpectrumCache:
    """Eigenspectra of the canonical solitons, computed once per session."""

    def __init__(self):
        self._store: dict[tuple[str, int], np.ndarray] = {}
        self._matrices: dict[tuple[str, int], object] = {}

    def matrix(self, cset: CanonicalSet, grid: GridSpec):
        key = (cset.name, grid.n_points)
        if key not in self._matrices:
            sol = cset.solution()
            self._matrices[key] = assemble_stability_matrix(sol, sol.params, grid)
        return self._matrices[key]

    def eigenvalues(self, cset: CanonicalSet, grid: GridSpec) -> np.ndarray:
        key = (cset.name, grid.n_points)
        if key not in self._store:
            self._store[key] = eigenspectrum(self.matrix(cset, grid))
        return self._store[key]


@pytest.fixture(scope="session")
def spectra() -> SpectrumCache:
    return SpectrumCache()


def multiset_max_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Largest matched distance of an optimal one-to-one pairing of two
    complex multisets.

    Optimal assignment keeps near-degenerate clusters paired correctly
    (greedy matching can cross twins and report their splitting instead).
    """
    from scipy.optimize import linear_sum_assignment

    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    assert a.size == b.size
    dist = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(dist)
    return float(dist[rows, cols].max())
