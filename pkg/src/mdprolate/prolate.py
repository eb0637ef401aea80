"""Prolate matrix assembly.

In 1D the prolate matrix is the M x M symmetric Toeplitz matrix with
entries D_W(m - n) / N.  In d dimensions it is the Kronecker product of
the per-axis 1D matrices, axis 1 outermost (row-major multi-indices).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, DimensionError, ParameterError
from .transform import DirichletParams, dirichlet_1d

__all__ = [
    "ProlateParams",
    "KernelTable",
    "ProlateMatrix1D",
    "kernel_table",
    "prolate_matrix_1d",
    "prolate_matrix_md",
    "DEFAULT_MD_CAP",
]

DEFAULT_MD_CAP = 4096


@dataclass(frozen=True)
class ProlateParams:
    """Per-axis triples (N_i, M_i, K_i).

    ``identity_time_limit`` allows ``M_i == N_i`` (time-limit is the
    identity, so the prolate matrix is the band-limit itself).  It is
    meant for known-answer tests.
    """

    n: tuple[int, ...]
    m: tuple[int, ...]
    k: tuple[int, ...]
    identity_time_limit: bool = False

    def __post_init__(self):
        n, m, k = (tuple(int(v) for v in t) for t in (self.n, self.m, self.k))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "k", k)
        if not (len(n) == len(m) == len(k)) or len(n) == 0:
            raise DimensionError(
                f"need one (N, M, K) triple per axis, got {len(n)} N, {len(m)} M, {len(k)} K"
            )
        for ni, mi, ki in zip(n, m, k):
            if ni < 2:
                raise ParameterError(f"N must be >= 2, got N={ni}")
            if mi < 1:
                raise ParameterError(f"M must be >= 1, got M={mi}")
            if mi > ni or (mi == ni and not self.identity_time_limit):
                raise ParameterError(f"time bound M < N violated: N={ni}, M={mi}")
            if ki < 0 or not 2 * ki + 1 < ni:
                raise ParameterError(
                    f"K-bound violated: need 0 <= K and 2K+1 < N "
                    f"(K <= floor((N-1)/2) with strict band), got N={ni}, K={ki}"
                )

    @classmethod
    def isotropic(cls, n: int, m: int, k: int, d: int = 1, **kw) -> "ProlateParams":
        return cls((n,) * d, (m,) * d, (k,) * d, **kw)

    @property
    def d(self) -> int:
        return len(self.n)

    @property
    def w(self) -> tuple[float, ...]:
        return tuple((2 * ki + 1) / (2 * ni) for ni, ki in zip(self.n, self.k))

    @property
    def mw(self) -> tuple[float, ...]:
        return tuple(mi * wi for mi, wi in zip(self.m, self.w))

    @property
    def tbw_product(self) -> float:
        """prod_i 2 M_i W_i, the trace of the prolate matrix."""
        return prod(2 * x for x in self.mw)

    @property
    def size(self) -> int:
        return prod(self.m)

    @property
    def is_isotropic(self) -> bool:
        return len(set(zip(self.n, self.m, self.k))) == 1

    def axis(self, i: int) -> "ProlateParams":
        return ProlateParams(
            (self.n[i],), (self.m[i],), (self.k[i],), identity_time_limit=self.identity_time_limit
        )

    def axes(self) -> Iterable["ProlateParams"]:
        return (self.axis(i) for i in range(self.d))

    def rank_1d(self) -> int:
        """Exact rank of the 1D matrix: min(M, 2K+1)."""
        self._require_1d()
        return min(self.m[0], 2 * self.k[0] + 1)

    def unit_count_1d(self) -> int:
        """Exact number of eigenvalues equal to 1: max(0, M + 2K + 1 - N)."""
        self._require_1d()
        return max(0, self.m[0] + 2 * self.k[0] + 1 - self.n[0])

    def _require_1d(self):
        if self.d != 1:
            raise DimensionError(f"expected 1D parameters, got d={self.d}")

    def as_dict(self) -> dict:
        return {"n": list(self.n), "m": list(self.m), "k": list(self.k), "w": list(self.w)}


@dataclass(frozen=True)
class KernelTable:
    """values[delta] = D_W(delta) / N for delta = 0..M-1."""

    params: ProlateParams
    values: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class ProlateMatrix1D:
    params: ProlateParams
    matrix: np.ndarray = field(repr=False)

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))


def kernel_table(params: ProlateParams) -> KernelTable:
    params._require_1d()
    n, m, k = params.n[0], params.m[0], params.k[0]
    vals = dirichlet_1d(DirichletParams(n, k), np.arange(m)) / n
    vals = np.atleast_1d(np.asarray(vals, dtype=float))
    vals[0] = (2 * k + 1) / n
    vals.setflags(write=False)
    return KernelTable(params, vals)


def prolate_matrix_1d(params: ProlateParams) -> ProlateMatrix1D:
    """Dense M x M symmetric Toeplitz prolate matrix for one axis."""
    table = kernel_table(params).values
    idx = np.arange(len(table))
    # index the stored table by |m - n| so symmetry and Toeplitz structure are exact
    a = table[np.abs(idx[:, None] - idx[None, :])]
    a.setflags(write=False)
    return ProlateMatrix1D(params, a)


def prolate_matrix_md(params: ProlateParams, cap: int = DEFAULT_MD_CAP) -> np.ndarray:
    """Kronecker product of per-axis prolate matrices (axis 1 outermost).

    Raises
    ------
    CapacityError
        If prod M_i exceeds ``cap``; use ``spectral.spectrum_md`` instead,
        which never forms this matrix.
    """
    if params.size > cap:
        raise CapacityError(
            f"prolate matrix would have {params.size} rows (cap {cap}); "
            "use spectral.spectrum_md for the product spectrum instead"
        )
    factors: Sequence[np.ndarray] = [prolate_matrix_1d(p).matrix for p in params.axes()]
    return reduce(np.kron, factors[1:], np.array(factors[0]))
