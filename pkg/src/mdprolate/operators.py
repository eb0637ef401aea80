"""Time-limiting and band-limiting projections on d-dimensional grids.

The band-limit is available through two independent routes, the
Fourier route ``F^{-1} 1_K F`` and a direct circular convolution with
the Dirichlet kernel, so each can be checked against the other.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import DimensionError, ParameterError
from .transform import DirichletParams, check_grid, dft_forward, dft_inverse, dirichlet_1d

__all__ = [
    "BoxSpec",
    "BandSpec",
    "time_limit",
    "band_limit_fourier",
    "band_limit_convolution",
    "band_indicator",
]


@dataclass(frozen=True)
class BoxSpec:
    """Index box ``[0, M_1) x ... x [0, M_d)`` inside the grid.

    ``identity_time_limit`` admits ``M_i == N_i`` so the time-limit
    becomes the identity; it exists for known-answer tests only.
    """

    grid: tuple[int, ...]
    widths: tuple[int, ...]
    identity_time_limit: bool = field(default=False, compare=False)

    def __post_init__(self):
        grid = check_grid(self.grid)
        widths = tuple(int(m) for m in self.widths)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "widths", widths)
        if len(widths) != len(grid):
            raise DimensionError(f"box has {len(widths)} widths for a {len(grid)}-d grid")
        for m, n in zip(widths, grid):
            if m < 1:
                raise ParameterError(f"box width must be >= 1, got M={m}")
            if m > n or (m == n and not self.identity_time_limit):
                raise ParameterError(f"time bound M < N violated: M={m}, N={n}")


@dataclass(frozen=True)
class BandSpec:
    """Centered frequency cube ``{-K_i..K_i}`` (indices stored mod N_i)."""

    grid: tuple[int, ...]
    half_widths: tuple[int, ...]

    def __post_init__(self):
        grid = check_grid(self.grid)
        ks = tuple(int(k) for k in self.half_widths)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "half_widths", ks)
        if len(ks) != len(grid):
            raise DimensionError(f"band has {len(ks)} half-widths for a {len(grid)}-d grid")
        for n, k in zip(grid, ks):
            DirichletParams(n, k)  # validates 2K+1 < N

    @property
    def bandwidths(self) -> tuple[float, ...]:
        return tuple((2 * k + 1) / (2 * n) for n, k in zip(self.grid, self.half_widths))

    @property
    def kernels(self) -> tuple[DirichletParams, ...]:
        return tuple(DirichletParams(n, k) for n, k in zip(self.grid, self.half_widths))


def _check_signal(x, grid) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.shape != tuple(grid):
        raise DimensionError(f"signal shape {x.shape} does not match grid {tuple(grid)}")
    return x


def _axis_mask(n: int, lo_hi) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    mask[lo_hi] = True
    return mask


def _outer_and(masks) -> np.ndarray:
    d = len(masks)
    shaped = [m.reshape([-1 if i == a else 1 for i in range(d)]) for a, m in enumerate(masks)]
    return reduce(np.logical_and, shaped)


def _box_mask(box: BoxSpec) -> np.ndarray:
    masks = [_axis_mask(n, slice(0, m)) for n, m in zip(box.grid, box.widths)]
    return _outer_and(masks)


def band_indicator(band: BandSpec) -> np.ndarray:
    """Boolean indicator of the band on the frequency grid."""
    masks = []
    for n, k in zip(band.grid, band.half_widths):
        idx = np.arange(-k, k + 1) % n
        masks.append(_axis_mask(n, idx))
    return _outer_and(masks)


def time_limit(x, box: BoxSpec) -> np.ndarray:
    """Zero every sample outside the index box."""
    x = _check_signal(x, box.grid)
    return np.where(_box_mask(box), x, 0.0)


def band_limit_fourier(x, band: BandSpec, method: str = "matrix") -> np.ndarray:
    """Band-limit via DFT, coefficient mask, inverse DFT."""
    x = _check_signal(x, band.grid)
    xhat = dft_forward(x, method=method)
    return dft_inverse(np.where(band_indicator(band), xhat, 0.0), method=method)


def _circulant(p: DirichletParams) -> np.ndarray:
    n = p.n_ambient
    idx = np.arange(n)
    return dirichlet_1d(p, idx[:, None] - idx[None, :])


def band_limit_convolution(x, band: BandSpec) -> np.ndarray:
    """Band-limit as circular convolution with the product Dirichlet kernel.

    out[n] = (1 / prod N_i) * sum_m x[m] * prod_i D_i(n_i - m_i).
    The kernel is separable, so the sum is carried out one axis at a time.
    """
    x = _check_signal(x, band.grid)
    out = x
    for axis, p in enumerate(band.kernels):
        c = _circulant(p) / p.n_ambient
        out = np.moveaxis(np.tensordot(c, out, axes=([1], [axis])), 0, axis)
    return out
