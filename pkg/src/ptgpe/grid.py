"""Uniform periodic grid and Fourier spectral differentiation.

The spatial substrate for everything else in the package: a uniform grid
on [-L, L) with N points, wavenumbers in transform ordering, an FFT-based
spectral derivative, and the equivalent dense second-derivative
collocation matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidValue

__all__ = ["GridSpec", "make_grid", "spectral_derivative", "diff_matrix_2"]


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid on [-L, L) with Fourier wavenumbers.

    Attributes
    ----------
    half_length : float
        Half the domain length L; nodes live on [-L, L).
    n_points : int
        Number of nodes N (even).
    x : ndarray
        Nodes x_i = -L + 2*L*i/N for i = 0..N-1.
    k : ndarray
        Wavenumbers pi*n/L for n = -N/2..N/2-1, stored in transform
        (FFT) ordering: non-negative frequencies first, then negative.
    """

    half_length: float
    n_points: int
    x: np.ndarray
    k: np.ndarray

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_length / self.n_points

    @property
    def k_max(self) -> float:
        """Largest wavenumber magnitude, pi*N/(2L)."""
        return np.pi * self.n_points / (2.0 * self.half_length)


def make_grid(half_length: float, n_points: int) -> GridSpec:
    """Build a periodic grid with N equispaced nodes on [-L, L).

    Parameters
    ----------
    half_length : float
        Domain half-length L > 0.
    n_points : int
        Even number of nodes, at least 16.

    Raises
    ------
    InvalidValue
        If L is not a positive finite number, or N is odd or below 16.
    """
    if not np.isfinite(half_length) or half_length <= 0:
        raise InvalidValue(f"half_length must be positive and finite, got {half_length}")
    n_points = int(n_points)
    if n_points < 16:
        raise InvalidValue(f"n_points must be at least 16, got {n_points}")
    if n_points % 2 != 0:
        raise InvalidValue(f"n_points must be even, got {n_points}")
    half_length = float(half_length)
    dx = 2.0 * half_length / n_points
    x = -half_length + dx * np.arange(n_points)
    k = 2.0 * np.pi * np.fft.fftfreq(n_points, d=dx)
    x.flags.writeable = False
    k.flags.writeable = False
    return GridSpec(half_length=half_length, n_points=n_points, x=x, k=k)


def _check_length(field: np.ndarray, grid: GridSpec) -> None:
    if field.shape[-1] != grid.n_points:
        raise InvalidValue(
            f"field length {field.shape[-1]} does not match grid n_points {grid.n_points}"
        )


def spectral_derivative(field: np.ndarray, order: int, grid: GridSpec) -> np.ndarray:
    """Differentiate a periodic field spectrally: ifft((i k)^order fft(field)).

    For odd orders the Nyquist mode is zeroed so real inputs stay real;
    for even orders that mode carries k = -pi*N/(2L) as usual.

    Works on the last axis, so stacked fields of shape (m, N) are fine.
    """
    field = np.asarray(field)
    _check_length(field, grid)
    if order % 2:
        k = grid.k.copy()
        k[grid.n_points // 2] = 0.0
    else:
        k = grid.k
    return np.fft.ifft((1j * k) ** order * np.fft.fft(field, axis=-1), axis=-1)


def diff_matrix_2(grid: GridSpec) -> np.ndarray:
    """Dense second-derivative collocation matrix for the periodic grid.

    Returns the real symmetric circulant D2 with D2 @ v equal to
    spectral_derivative(v, 2, grid) for every v, to machine precision.
    Built once per grid by transforming the identity; callers that need
    it repeatedly should keep a reference.
    """
    n = grid.n_points
    columns = np.fft.fft(np.eye(n), axis=0)
    d2 = np.fft.ifft(-(grid.k**2)[:, None] * columns, axis=0)
    # analytically real and symmetric; drop the roundoff-level imaginary part
    return np.ascontiguousarray(d2.real)
