"""Unitary DFTs on d-dimensional grids and Dirichlet kernels.

Signals are numpy arrays whose shape is the grid ``(N_1, ..., N_d)``.
Flattening is always row-major (last index fastest), which is the same
order ``numpy.kron`` uses, so separable transforms and Kronecker
assembly agree index for index.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DimensionError, ParameterError

__all__ = [
    "DirichletParams",
    "check_grid",
    "dft_matrix_1d",
    "dft_forward",
    "dft_inverse",
    "dirichlet_1d",
    "dirichlet_md",
    "dirichlet_table",
]


@dataclass(frozen=True)
class DirichletParams:
    """Ambient length ``n_ambient`` and band half-width ``k_band``."""

    n_ambient: int
    k_band: int

    def __post_init__(self):
        if self.n_ambient < 2:
            raise ParameterError(f"N must be >= 2, got N={self.n_ambient}")
        if self.k_band < 0:
            raise ParameterError(f"K must be >= 0, got K={self.k_band}")
        if not 2 * self.k_band + 1 < self.n_ambient:
            raise ParameterError(
                f"band bound 2K+1 < N violated: K={self.k_band}, N={self.n_ambient}"
            )

    @property
    def w(self) -> float:
        """Bandwidth (2K+1)/(2N), always in (0, 1/2)."""
        return (2 * self.k_band + 1) / (2 * self.n_ambient)


def check_grid(shape: Sequence[int]) -> tuple[int, ...]:
    shape = tuple(int(n) for n in shape)
    if len(shape) == 0:
        raise DimensionError("grid must have at least one axis")
    if any(n < 2 for n in shape):
        raise DimensionError(f"every grid length must be >= 2, got {shape}")
    return shape


@lru_cache(maxsize=64)
def _dft_matrix(n: int) -> np.ndarray:
    idx = np.arange(n)
    # integer product mod n keeps the phase exact for large n
    phase = np.outer(idx, idx) % n
    f = np.exp(-2j * np.pi * phase / n) / np.sqrt(n)
    f.setflags(write=False)
    return f


def dft_matrix_1d(n_ambient: int) -> np.ndarray:
    """Unitary N x N DFT matrix with entry exp(-2j*pi*n*m/N)/sqrt(N)."""
    if n_ambient < 2:
        raise DimensionError(f"DFT length must be >= 2, got {n_ambient}")
    return _dft_matrix(int(n_ambient)).copy()


def _apply_along_axes(x: np.ndarray, mats) -> np.ndarray:
    out = np.asarray(x, dtype=complex)
    for axis, mat in enumerate(mats):
        # contract mat's column index with the chosen axis, then put it back
        out = np.moveaxis(np.tensordot(mat, out, axes=([1], [axis])), 0, axis)
    return out


def dft_forward(x, method: str = "matrix") -> np.ndarray:
    """Multidimensional unitary DFT of a signal on the grid ``x.shape``.

    Parameters
    ----------
    x : array_like
        Signal values; the array shape is the grid.
    method : {"matrix", "fft"}
        ``"matrix"`` applies the explicit DFT matrix along each axis and
        is the reference path.  ``"fft"`` uses ``numpy.fft`` with
        orthonormal scaling.

    Returns
    -------
    numpy.ndarray
        Complex coefficients on the same grid.
    """
    x = np.asarray(x)
    check_grid(x.shape)
    if method == "fft":
        return np.fft.fftn(x, norm="ortho")
    if method != "matrix":
        raise ValueError(f"unknown method {method!r}")
    return _apply_along_axes(x, [_dft_matrix(n) for n in x.shape])


def dft_inverse(xhat, method: str = "matrix") -> np.ndarray:
    """Inverse of :func:`dft_forward` (conjugate-transpose matrices)."""
    xhat = np.asarray(xhat)
    check_grid(xhat.shape)
    if method == "fft":
        return np.fft.ifftn(xhat, norm="ortho")
    if method != "matrix":
        raise ValueError(f"unknown method {method!r}")
    return _apply_along_axes(xhat, [_dft_matrix(n).conj().T for n in xhat.shape])


def dirichlet_1d(p: DirichletParams, n) -> float | np.ndarray:
    """Dirichlet kernel sum_{k=-K}^{K} exp(2j*pi*k*n/N) in closed form.

    Accepts an integer or an integer array of lags. The n = 0 (mod N)
    branch is an integer test, never a floating-point one.
    """
    n_arr = np.asarray(n)
    if not np.issubdtype(n_arr.dtype, np.integer):
        raise TypeError("Dirichlet kernel lags must be integers")
    N = p.n_ambient
    r = np.mod(n_arr, N)
    on_lattice = r == 0
    # reduce to the representative in (-N/2, N/2] so the sines stay small-argument
    r = np.where(r > N // 2, r - N, r).astype(float)
    safe = np.where(on_lattice, 1.0, r)
    val = np.sin(np.pi * (2 * p.k_band + 1) * safe / N) / np.sin(np.pi * safe / N)
    val = np.where(on_lattice, float(2 * p.k_band + 1), val)
    if val.ndim == 0:
        return float(val)
    return val


def dirichlet_table(p: DirichletParams) -> np.ndarray:
    """Kernel values at lags 0..N-1."""
    return dirichlet_1d(p, np.arange(p.n_ambient))


def dirichlet_md(ps: Sequence[DirichletParams], n: Sequence[int]) -> float:
    """Product of 1D Dirichlet kernels, one factor per axis."""
    if len(ps) != len(n):
        raise DimensionError(
            f"got {len(ps)} kernel parameter sets but a {len(n)}-dimensional lag"
        )
    out = 1.0
    for p, ni in zip(ps, n):
        out *= dirichlet_1d(p, int(ni))
    return out
