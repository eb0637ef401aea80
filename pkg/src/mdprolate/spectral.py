"""Eigenvalue spectra of prolate matrices and the counting functions.

Eigenvalue indices are 0-based everywhere: ``eigenvalues[0]`` is the
largest.

Two facts about the 1D matrix hold exactly and are used to deflate
solver noise. The matrix is V V^* with V an M x (2K+1) block of the
unitary DFT matrix, so its rank is min(M, 2K+1). It has exactly
max(0, M + 2K + 1 - N) eigenvalues equal to 1, by the CS decomposition
of the unitary DFT. The computed eigenvalues at those positions are
checked to lie within ``STRUCTURAL_TOL`` of 0 (resp. 1) and then set
exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Optional

import numpy as np
import scipy.linalg

from .errors import CapacityError, ContractError, DomainError
from .prolate import ProlateParams, prolate_matrix_1d

__all__ = [
    "Spectrum",
    "CountReport",
    "eig_symmetric",
    "spectrum_1d",
    "spectrum_md",
    "count_above",
    "count_transition",
    "count_report",
    "multiplicity_report",
    "CLAMP_TOL",
    "STRUCTURAL_TOL",
]

SYMMETRY_TOL = 1e-12
RESIDUAL_TOL = 1e-10
CLAMP_TOL = 1e-10
STRUCTURAL_TOL = 1e-10
DEFAULT_PRODUCT_CAP = 1 << 24


@dataclass(frozen=True)
class Spectrum:
    """Non-increasing eigenvalues plus bookkeeping.

    ``clamp`` is the largest amount any value moved when clamped into
    [0, 1]; ``deflation`` the largest move when structural zeros/ones
    were set exactly.
    """

    eigenvalues: np.ndarray
    source: str
    params: Optional[ProlateParams] = None
    eigenvectors: Optional[np.ndarray] = field(default=None, repr=False)
    clamp: float = 0.0
    deflation: float = 0.0

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)

    def __len__(self):
        return len(self.eigenvalues)

    @property
    def total(self) -> float:
        return float(np.sum(self.eigenvalues))


@dataclass(frozen=True)
class CountReport:
    """m_eps = #{lambda > eps}; n_eps = #{eps < lambda < 1 - eps} (None if eps >= 1/2)."""

    epsilon: float
    m_eps: int
    n_eps: Optional[int]
    nearest_gap: float


def _check_symmetric(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ContractError(f"expected a square matrix, got shape {a.shape}")
    asym = np.max(np.abs(a - a.T)) if a.size else 0.0
    if asym > SYMMETRY_TOL:
        raise ContractError(f"matrix is not symmetric: max |A - A^T| = {asym:.3e}")
    return a


def _clamp(values: np.ndarray) -> tuple[np.ndarray, float]:
    lo, hi = values.min(initial=0.0), values.max(initial=0.0)
    if lo < -CLAMP_TOL or hi > 1 + CLAMP_TOL:
        raise ContractError(
            f"eigenvalues outside [0, 1] beyond solver noise: min={lo:.3e}, max={hi:.3e}"
        )
    clipped = np.clip(values, 0.0, 1.0)
    return clipped, float(np.max(np.abs(clipped - values), initial=0.0))


def eig_symmetric(a, vectors: bool = False, source: str = "dense") -> Spectrum:
    """Dense symmetric eigendecomposition (LAPACK ``syevd`` via scipy).

    Eigenvalues are returned sorted non-increasing.  With
    ``vectors=True`` the columns of ``eigenvectors`` match, and each pair
    is checked for relative residual <= 1e-10 and orthonormality.  No
    clamping happens here; the values are the solver's.
    """
    a = _check_symmetric(a)
    if vectors:
        vals, vecs = scipy.linalg.eigh(a)
        vals, vecs = vals[::-1].copy(), vecs[:, ::-1].copy()
        scale = max(1.0, float(np.max(np.abs(vals), initial=0.0)))
        resid = np.linalg.norm(a @ vecs - vecs * vals, axis=0) / scale
        if resid.size and resid.max() > RESIDUAL_TOL:
            raise ContractError(f"eigenpair residual {resid.max():.3e} exceeds {RESIDUAL_TOL}")
        ortho = np.max(np.abs(vecs.T @ vecs - np.eye(len(vals))), initial=0.0)
        if ortho > RESIDUAL_TOL:
            raise ContractError(f"eigenvectors not orthonormal: {ortho:.3e}")
        vecs.setflags(write=False)
        return Spectrum(vals, source, eigenvectors=vecs)
    vals = scipy.linalg.eigh(a, eigvals_only=True)[::-1].copy()
    return Spectrum(vals, source)


def _deflate(values: np.ndarray, params: ProlateParams) -> tuple[np.ndarray, float]:
    rank, ones = params.rank_1d(), params.unit_count_1d()
    out = values.copy()
    moved = 0.0
    if rank < len(out):
        tail = out[rank:]
        moved = float(np.max(np.abs(tail)))
        if moved > STRUCTURAL_TOL:
            raise ContractError(f"structural zero eigenvalues off by {moved:.3e}")
        out[rank:] = 0.0
    if ones:
        head = out[:ones]
        off = float(np.max(np.abs(head - 1.0)))
        if off > STRUCTURAL_TOL:
            raise ContractError(f"structural unit eigenvalues off by {off:.3e}")
        out[:ones] = 1.0
        moved = max(moved, off)
    return out, moved


def spectrum_1d(params: ProlateParams, vectors: bool = False, deflate: bool = True) -> Spectrum:
    """Eigenvalues (and optionally eigenvectors) of the 1D prolate matrix.

    The eigenvalues sum to 2MW.  With ``deflate`` the exactly known zero
    and unit eigenvalues are set exactly (see module docstring).
    """
    params._require_1d()
    raw = eig_symmetric(prolate_matrix_1d(params).matrix, vectors=vectors)
    vals, clamp = _clamp(raw.eigenvalues)
    moved = 0.0
    if deflate:
        vals, moved = _deflate(vals, params)
    return Spectrum(vals, "dense-1d", params, raw.eigenvectors, clamp=clamp, deflation=moved)


def _product(spectra: list[np.ndarray], cap: int) -> np.ndarray:
    count = prod(len(s) for s in spectra)
    if count > cap:
        raise CapacityError(f"product spectrum has {count} values (cap {cap})")
    out = spectra[0]
    for s in spectra[1:]:
        # row-major: earlier axes vary slowest, matching numpy.kron
        out = np.multiply.outer(out, s).ravel()
    return out


def _sort_desc(values: np.ndarray) -> np.ndarray:
    # stable on ties, so equal products keep multi-index order
    return values[np.argsort(-values, kind="stable")]


def spectrum_md(params: ProlateParams, cap: int = DEFAULT_PRODUCT_CAP) -> Spectrum:
    """All products of per-axis 1D eigenvalues, sorted non-increasing.

    The Kronecker matrix itself is never formed.
    """
    parts = [spectrum_1d(p) for p in params.axes()]
    vals = _sort_desc(_product([p.eigenvalues for p in parts], cap))
    return Spectrum(
        vals,
        "dense-1d" if params.d == 1 else "product-d",
        params,
        clamp=max(p.clamp for p in parts),
        deflation=max(p.deflation for p in parts),
    )


def _values(s) -> np.ndarray:
    return np.asarray(s.eigenvalues if isinstance(s, Spectrum) else s, dtype=float)


def _nearest_gap(values: np.ndarray, eps: float) -> float:
    if values.size == 0:
        return float("inf")
    return float(min(np.min(np.abs(values - eps)), np.min(np.abs(values - (1 - eps)))))


def count_report(s, eps: float) -> CountReport:
    """Both counts at once; ``n_eps`` is None when eps >= 1/2."""
    if not 0 < eps < 1:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    vals = _values(s)
    m = int(np.count_nonzero(vals > eps))
    n = int(np.count_nonzero((vals > eps) & (vals < 1 - eps))) if eps < 0.5 else None
    return CountReport(float(eps), m, n, _nearest_gap(vals, eps))


def count_above(s, eps: float) -> CountReport:
    """m_eps: strict count of eigenvalues above eps."""
    return count_report(s, eps)


def count_transition(s, eps: float) -> CountReport:
    """n_eps: strict count of eigenvalues inside (eps, 1 - eps)."""
    if not 0 < eps < 0.5:
        raise DomainError(f"eps must lie in (0, 1/2) for the transition count, got {eps}")
    return count_report(s, eps)


def multiplicity_report(s, tol: float) -> list[tuple[float, int]]:
    """Group eigenvalues into clusters of near-equal values.

    Consecutive sorted values join a cluster when
    ``|a - b| <= tol * max(|a|, |b|)``.  The test is relative, so that
    products of small eigenvalues are not lumped together merely for
    being small.  Exact zeros form their own cluster.  Returns
    (representative value, multiplicity) in non-increasing order.
    """
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    vals = np.sort(_values(s))[::-1]
    out: list[tuple[float, int]] = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i < len(vals):
            a, b = vals[i - 1], vals[i]
            if abs(a - b) <= tol * max(abs(a), abs(b)):
                continue
        out.append((float(vals[start]), i - start))
        start = i
    return out
