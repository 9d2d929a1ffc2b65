"""Scarf-II potentials, the analytic bright-soliton family, and diagnostics.

The two-component model couples a cubic nonlinearity of strength a_j to a
complex potential U_j(x) = v_j sech^2(x) + i w_j sech(x) tanh(x).  For
propagation constants fixed at 1 it supports the closed-form soliton
family

    phi_j(x) = A_j sech(x) exp(i (w_j/3) arctan(sinh x)),

whose amplitudes obey (18 + w_j^2 - 9 v_j) / (9 a_j) = A_1^2 + A_2^2 for
both j.  This module solves that constraint, samples the profiles, and
computes the power and Poynting-flux diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Union

import numpy as np

from .errors import InconsistentConstraints, InvalidValue, NoRealAmplitude
from .grid import GridSpec, spectral_derivative

__all__ = [
    "ModelParams",
    "AmplitudeMode",
    "FixedA1",
    "EqualAmplitudes",
    "SolitonSolution",
    "scarf_potential",
    "solve_amplitudes",
    "sample_soliton",
    "stationary_residual",
    "power",
    "poynting",
]


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the coupled equations.

    a1, a2 : nonlinearity (interaction) coefficients
    v1, v2 : real potential depths
    w1, w2 : gain-loss strengths (imaginary part of the potential)
    nu1, nu2 : propagation constants; the analytic family requires 1
    """

    a1: float
    a2: float
    v1: float
    v2: float
    w1: float
    w2: float
    nu1: float = 1.0
    nu2: float = 1.0

    def component(self, j: int) -> tuple[float, float, float, float]:
        """(a, v, w, nu) for component j in {1, 2}."""
        if j == 1:
            return self.a1, self.v1, self.w1, self.nu1
        if j == 2:
            return self.a2, self.v2, self.w2, self.nu2
        raise InvalidValue(f"component index must be 1 or 2, got {j}")


@dataclass(frozen=True)
class FixedA1:
    """Pin the first amplitude; the second follows from the constraint."""

    amp1: float

    def __post_init__(self):
        if not np.isfinite(self.amp1) or self.amp1 < 0:
            raise InvalidValue(f"fixed amplitude must be finite and >= 0, got {self.amp1}")


@dataclass(frozen=True)
class EqualAmplitudes:
    """Split the constraint evenly: A1 = A2."""


AmplitudeMode = Union[FixedA1, EqualAmplitudes]


def scarf_potential(v: float, w: float, x):
    """Complex Scarf-II potential v*sech^2(x) + i*w*sech(x)*tanh(x).

    PT-symmetric by construction: U(-x) = conj(U(x)).  Accepts scalars
    or arrays for x.
    """
    s = 1.0 / np.cosh(x)
    return v * s**2 + 1j * w * s * np.tanh(x)


@dataclass(frozen=True)
class SolitonSolution:
    """Amplitudes plus closed-form profile evaluators for the soliton family."""

    params: ModelParams
    amp1: float
    amp2: float

    def component(self, j: int, x) -> np.ndarray:
        """Profile phi_j evaluated at x (scalar or array)."""
        amp = (self.amp1, self.amp2)[j - 1]
        _, _, w, _ = self.params.component(j)
        return amp / np.cosh(x) * np.exp(1j * (w / 3.0) * np.arctan(np.sinh(x)))

    def constraint_values(self) -> tuple[float, float]:
        """(18 + w_j^2 - 9 v_j)/(9 a_j) for j = 1, 2."""
        return (
            _constraint_sum(self.params, 1),
            _constraint_sum(self.params, 2),
        )


def _constraint_sum(params: ModelParams, j: int) -> float:
    a, v, w, _ = params.component(j)
    return (18.0 + w**2 - 9.0 * v) / (9.0 * a)


def solve_amplitudes(
    params: ModelParams,
    mode: AmplitudeMode,
    rel_tol: float = 1e-9,
) -> SolitonSolution:
    """Solve the amplitude constraint for the analytic soliton family.

    The constraint fixes S = A1^2 + A2^2 through either component's
    parameters; both instances must agree within `rel_tol` (relative).
    S is then taken from component 1 and split according to `mode`.

    Raises
    ------
    InconsistentConstraints
        If the two instances disagree beyond `rel_tol`.
    NoRealAmplitude
        If S < 0, or S < A1^2 in FixedA1 mode.
    """
    if params.a1 == 0 or params.a2 == 0:
        raise InvalidValue("nonlinearity coefficients must be nonzero for soliton construction")
    if params.nu1 != 1.0 or params.nu2 != 1.0:
        raise InvalidValue(
            "the analytic soliton family requires nu1 = nu2 = 1 "
            f"(got nu1={params.nu1}, nu2={params.nu2})"
        )
    s1 = _constraint_sum(params, 1)
    s2 = _constraint_sum(params, 2)
    scale = max(abs(s1), abs(s2))
    mismatch = 0.0 if scale == 0 else abs(s1 - s2) / scale
    if mismatch > rel_tol:
        raise InconsistentConstraints(
            f"amplitude constraint instances disagree: {s1:.9g} (j=1) vs {s2:.9g} (j=2), "
            f"relative mismatch {mismatch:.3g} > {rel_tol:.3g}",
            mismatch=mismatch,
        )
    s = s1
    if isinstance(mode, FixedA1):
        rem = s - mode.amp1**2
        if rem < 0:
            raise NoRealAmplitude(
                f"A1^2 + A2^2 = {s:.9g} leaves no real A2 for A1 = {mode.amp1}"
            )
        amp1, amp2 = mode.amp1, float(np.sqrt(rem))
    elif isinstance(mode, EqualAmplitudes):
        if s < 0:
            raise NoRealAmplitude(f"A1^2 + A2^2 = {s:.9g} < 0 admits no real amplitudes")
        amp1 = amp2 = float(np.sqrt(s / 2.0))
    else:
        raise InvalidValue(f"unknown amplitude mode: {mode!r}")
    return SolitonSolution(params=params, amp1=amp1, amp2=amp2)


def sample_soliton(sol: SolitonSolution, grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Sample both soliton components at the grid nodes."""
    return sol.component(1, grid.x), sol.component(2, grid.x)


def stationary_residual(
    fields: tuple[np.ndarray, np.ndarray],
    params: ModelParams,
    grid: GridSpec,
) -> tuple[float, float]:
    """Sup-norm residuals of the stationary equations for both components.

    r_j = phi_j'' + a_j (|phi_1|^2 + |phi_2|^2) phi_j + U_j phi_j - nu_j phi_j
    with the second derivative taken spectrally.
    """
    phi1 = np.asarray(fields[0], dtype=complex)
    phi2 = np.asarray(fields[1], dtype=complex)
    density = np.abs(phi1) ** 2 + np.abs(phi2) ** 2
    out = []
    for j, phi in ((1, phi1), (2, phi2)):
        a, v, w, nu = params.component(j)
        r = (
            spectral_derivative(phi, 2, grid)
            + a * density * phi
            + scarf_potential(v, w, grid.x) * phi
            - nu * phi
        )
        out.append(float(np.max(np.abs(r))))
    return out[0], out[1]


def power(field: np.ndarray, grid: GridSpec) -> float:
    """Integrated density dx * sum(|field|^2) on the periodic grid.

    The rectangle rule is spectrally accurate for smooth periodic
    integrands, so no higher-order quadrature is needed.
    """
    field = np.asarray(field)
    if field.shape != (grid.n_points,):
        raise InvalidValue(
            f"field shape {field.shape} does not match grid n_points {grid.n_points}"
        )
    return float(grid.spacing * np.sum(np.abs(field) ** 2))


def poynting(field: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Local power flux (i/2)(phi phi_x* - phi* phi_x) = Im(phi* phi_x).

    Computed with the spectral first derivative; returns the exactly real
    form, discarding the roundoff-level imaginary residue.
    """
    field = np.asarray(field, dtype=complex)
    if field.shape != (grid.n_points,):
        raise InvalidValue(
            f"field shape {field.shape} does not match grid n_points {grid.n_points}"
        )
    dfield = spectral_derivative(field, 1, grid)
    return np.imag(np.conj(field) * dfield)


def with_potentials(params: ModelParams, grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Sampled potentials (U_1, U_2) for the given parameters."""
    return (
        scarf_potential(params.v1, params.w1, grid.x),
        scarf_potential(params.v2, params.w2, grid.x),
    )


def tie_potentials(params: ModelParams, v: float, w: float) -> ModelParams:
    """Copy of `params` with both potentials set to (v, w)."""
    return replace(params, v1=v, v2=v, w1=w, w2=w)
