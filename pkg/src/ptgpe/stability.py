"""Linear stability of the solitons: eigenproblem assembly and analysis.

Perturbing a stationary state with small eigenmodes (f_j, g_j) and
linearizing yields a 4N x 4N dense non-Hermitian eigenproblem whose
eigenvalues' imaginary parts are perturbation growth rates.  This module
assembles that operator on the collocation grid, computes its full
spectrum, classifies stability against a threshold, and sweeps
(v_1, w_1) maps.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConvergenceFailure, InvalidValue, NoRealAmplitude, PtgpeError
from .grid import GridSpec, diff_matrix_2
from .model import (
    AmplitudeMode,
    ModelParams,
    SolitonSolution,
    sample_soliton,
    scarf_potential,
    solve_amplitudes,
    tie_potentials,
)

__all__ = [
    "StabilityMatrix",
    "StabilityReport",
    "MapResult",
    "assemble_stability_matrix",
    "eigenspectrum",
    "classify",
    "zero_mode_residuals",
    "stability_report",
    "scan_map",
    "DEFAULT_THRESHOLD",
    "LOG_FLOOR",
    "MAP_WORKERS_ENV",
]

DEFAULT_THRESHOLD = 1e-4
LOG_FLOOR = 1e-8
MAX_ORDER = 4096
MAP_WORKERS_ENV = "PTGPE_MAP_WORKERS"

CELL_OK = "ok"
CELL_NO_AMPLITUDE = "no_real_amplitude"
CELL_EIG_FAILED = "eig_failed"


@dataclass(frozen=True)
class StabilityMatrix:
    """Assembled 4N x 4N linearization with its provenance."""

    matrix: np.ndarray
    grid: GridSpec
    params: ModelParams
    fields: tuple[np.ndarray, np.ndarray]

    @property
    def order(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class StabilityReport:
    """Spectrum summary: growth rate, classification, and zero-mode health."""

    eigenvalues: np.ndarray
    max_im: float
    classification: str  # "stable" | "unstable"
    threshold: float
    zero_mode_residuals: Optional[tuple[float, float]] = None
    n_points: Optional[int] = None
    half_length: Optional[float] = None

    @property
    def is_stable(self) -> bool:
        return self.classification == "stable"


def assemble_stability_matrix(
    fields: tuple[np.ndarray, np.ndarray] | SolitonSolution,
    params: ModelParams,
    grid: GridSpec,
    d2: Optional[np.ndarray] = None,
) -> StabilityMatrix:
    """Assemble the dense linearization about a stationary state.

    Block rows/columns are ordered (f1, g1, f2, g2).  Diagonal blocks are
    L_j = -nu_j + D2 + diag(U_j + nonlinear terms) and their entrywise
    conjugates; off-diagonal blocks are diagonal matrices of products of
    the field samples.

    Parameters
    ----------
    fields : pair of arrays or SolitonSolution
        Sampled stationary state (phi_1, phi_2).
    d2 : ndarray, optional
        Precomputed second-derivative matrix; built per call otherwise.
    """
    if isinstance(fields, SolitonSolution):
        phi1, phi2 = sample_soliton(fields, grid)
    else:
        phi1 = np.asarray(fields[0], dtype=complex)
        phi2 = np.asarray(fields[1], dtype=complex)
    n = grid.n_points
    if phi1.shape != (n,) or phi2.shape != (n,):
        raise InvalidValue(
            f"field shapes {phi1.shape}, {phi2.shape} do not match grid n_points {n}"
        )
    if d2 is None:
        d2 = diff_matrix_2(grid)
    elif d2.shape != (n, n):
        raise InvalidValue(f"d2 shape {d2.shape} does not match grid n_points {n}")

    a1, v1, w1, nu1 = params.component(1)
    a2, v2, w2, nu2 = params.component(2)
    u1 = scarf_potential(v1, w1, grid.x)
    u2 = scarf_potential(v2, w2, grid.x)
    dens1 = np.abs(phi1) ** 2
    dens2 = np.abs(phi2) ** 2

    eye = np.eye(n)
    l1 = -nu1 * eye + d2 + np.diag(u1 + 2.0 * a1 * dens1 + a1 * dens2)
    l2 = -nu2 * eye + d2 + np.diag(u2 + a2 * dens1 + 2.0 * a2 * dens2)

    c1, c2 = np.conj(phi1), np.conj(phi2)
    d = np.diag
    matrix = np.block(
        [
            [l1, d(a1 * phi1**2), d(a1 * phi1 * c2), d(a1 * phi1 * phi2)],
            [d(-a1 * c1**2), -np.conj(l1), d(-a1 * c1 * c2), d(-a1 * c1 * phi2)],
            [d(a2 * c1 * phi2), d(a2 * phi1 * phi2), l2, d(a2 * phi2**2)],
            [d(-a2 * c1 * c2), d(-a2 * phi1 * c2), d(-a2 * c2**2), -np.conj(l2)],
        ]
    )
    return StabilityMatrix(matrix=matrix, grid=grid, params=params, fields=(phi1, phi2))


def eigenspectrum(mat: StabilityMatrix, with_vectors: bool = False):
    """All eigenvalues of the assembled operator (dense nonsymmetric solve).

    Uses LAPACK's Hessenberg-plus-shifted-QR path via numpy.  Vectors are
    only computed when requested (zero-mode diagnostics); classification
    needs eigenvalues alone.

    Raises
    ------
    InvalidValue
        If the matrix order exceeds the desk-scale guard (4096).
    ConvergenceFailure
        If the QR iteration does not converge.
    """
    if mat.order > MAX_ORDER:
        raise InvalidValue(
            f"matrix order {mat.order} exceeds the desk-scale guard {MAX_ORDER}"
        )
    try:
        if with_vectors:
            eigs, vecs = np.linalg.eig(mat.matrix)
            return eigs, vecs
        return np.linalg.eigvals(mat.matrix)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"dense eigensolve failed: {exc}") from exc


def classify(
    eigs: np.ndarray,
    threshold: float = DEFAULT_THRESHOLD,
    zero_mode_residuals: Optional[tuple[float, float]] = None,
    grid: Optional[GridSpec] = None,
) -> StabilityReport:
    """Classify a spectrum: stable iff max |Im| does not exceed `threshold`."""
    eigs = np.asarray(eigs)
    if eigs.size == 0:
        raise InvalidValue("cannot classify an empty eigenvalue list")
    if threshold <= 0:
        raise InvalidValue(f"threshold must be positive, got {threshold}")
    max_im = float(np.max(np.abs(eigs.imag)))
    return StabilityReport(
        eigenvalues=eigs,
        max_im=max_im,
        classification="stable" if max_im <= threshold else "unstable",
        threshold=threshold,
        zero_mode_residuals=zero_mode_residuals,
        n_points=grid.n_points if grid is not None else None,
        half_length=grid.half_length if grid is not None else None,
    )


def zero_mode_residuals(mat: StabilityMatrix) -> tuple[float, float]:
    """Sup-norms of the operator applied to the two phase-rotation modes.

    At an exact stationary state the vectors (phi_1, -phi_1*, 0, 0) and
    (0, 0, phi_2, -phi_2*) are annihilated up to discretization error.
    """
    phi1, phi2 = mat.fields
    zero = np.zeros_like(phi1)
    v1 = np.concatenate([phi1, -np.conj(phi1), zero, zero])
    v2 = np.concatenate([zero, zero, phi2, -np.conj(phi2)])
    return (
        float(np.max(np.abs(mat.matrix @ v1))),
        float(np.max(np.abs(mat.matrix @ v2))),
    )


def stability_report(
    sol: SolitonSolution,
    grid: GridSpec,
    threshold: float = DEFAULT_THRESHOLD,
    d2: Optional[np.ndarray] = None,
) -> StabilityReport:
    """Assemble, eigensolve, and classify one soliton in a single call."""
    mat = assemble_stability_matrix(sol, sol.params, grid, d2=d2)
    eigs = eigenspectrum(mat)
    return classify(
        eigs,
        threshold=threshold,
        zero_mode_residuals=zero_mode_residuals(mat),
        grid=grid,
    )


@dataclass(frozen=True)
class MapResult:
    """max |Im| over a (v_1, w_1) parameter rectangle, with cell status."""

    v_values: np.ndarray
    w_values: np.ndarray
    max_im: np.ndarray  # shape (len(w_values), len(v_values)); NaN on failure
    log10_max_im: np.ndarray
    status: np.ndarray  # dtype object, same shape
    threshold: float

    def cell_count(self) -> int:
        return self.max_im.size


def _map_workers() -> int:
    env = os.environ.get(MAP_WORKERS_ENV)
    if env:
        try:
            n = int(env)
        except ValueError as exc:
            raise InvalidValue(f"{MAP_WORKERS_ENV} must be an integer, got {env!r}") from exc
        if n < 1:
            raise InvalidValue(f"{MAP_WORKERS_ENV} must be >= 1, got {n}")
        return n
    return os.cpu_count() or 1


def scan_map(
    v_range: tuple[float, float, int],
    w_range: tuple[float, float, int],
    template: ModelParams,
    mode: AmplitudeMode,
    grid: GridSpec,
    threshold: float = DEFAULT_THRESHOLD,
    workers: Optional[int] = None,
) -> MapResult:
    """Sweep max |Im| over a rectangle of tied potentials (v1=v2, w1=w2).

    Each cell solves the amplitude constraint, assembles the
    linearization, and eigensolves; cells that admit no real amplitude or
    whose eigensolve fails are recorded as sentinel NaN with a status
    string instead of aborting the sweep.  Cells are independent and run
    on a thread pool (LAPACK releases the GIL); results are collected by
    cell index so the output is deterministic.
    """
    v_min, v_max, v_count = v_range
    w_min, w_max, w_count = w_range
    if v_count < 2 or w_count < 2:
        raise InvalidValue("map needs at least 2 samples per axis")
    if template.a1 != template.a2:
        raise InvalidValue(
            "map cells tie v1=v2 and w1=w2, which requires a1 = a2 "
            f"(got a1={template.a1}, a2={template.a2})"
        )
    v_values = np.linspace(v_min, v_max, v_count)
    w_values = np.linspace(w_min, w_max, w_count)
    d2 = diff_matrix_2(grid)

    max_im = np.full((w_count, v_count), np.nan)
    status = np.full((w_count, v_count), CELL_OK, dtype=object)

    def cell(iw: int, iv: int):
        params = tie_potentials(template, float(v_values[iv]), float(w_values[iw]))
        try:
            sol = solve_amplitudes(params, mode)
        except NoRealAmplitude:
            return iw, iv, np.nan, CELL_NO_AMPLITUDE
        try:
            mat = assemble_stability_matrix(sol, params, grid, d2=d2)
            eigs = eigenspectrum(mat)
        except PtgpeError:
            return iw, iv, np.nan, CELL_EIG_FAILED
        return iw, iv, float(np.max(np.abs(eigs.imag))), CELL_OK

    n_workers = workers if workers is not None else _map_workers()
    tasks = [(iw, iv) for iw in range(w_count) for iv in range(v_count)]
    if n_workers == 1:
        results = [cell(iw, iv) for iw, iv in tasks]
    else:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            results = list(pool.map(lambda t: cell(*t), tasks))
    for iw, iv, value, st in results:
        max_im[iw, iv] = value
        status[iw, iv] = st

    with np.errstate(invalid="ignore"):
        log10 = np.log10(np.maximum(max_im, LOG_FLOOR))
    return MapResult(
        v_values=v_values,
        w_values=w_values,
        max_im=max_im,
        log10_max_im=log10,
        status=status,
        threshold=threshold,
    )
