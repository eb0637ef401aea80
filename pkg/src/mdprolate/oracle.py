"""Brute-force reconstructions used to cross-check the production path.

Everything here is assembled from explicit DFT matrices and diagonal
0/1 indicators.  Nothing is imported from the kernel-table or
product-spectrum code.  The size caps keep these O(N^3) paths out of
production use.
"""
from __future__ import annotations

from functools import reduce
from math import prod

import numpy as np
import scipy.linalg

from .errors import CapacityError, ContractError
from .prolate import ProlateParams
from .transform import dft_matrix_1d

__all__ = [
    "ORACLE_N_CAP",
    "ORACLE_KRON_CAP",
    "projection_matrices",
    "prolate_via_projections",
    "prolate_md_via_projections",
    "kronecker_spectrum_oracle",
    "concentration_duality_check",
]

ORACLE_N_CAP = 256
ORACLE_KRON_CAP = 1024
IMAG_TOL = 1e-12


def _indicator(n: int, idx) -> np.ndarray:
    v = np.zeros(n)
    v[np.asarray(idx) % n] = 1.0
    return v


def projection_matrices(n: int, m: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Explicit N x N time-limit T_M and band-limit F^* diag(1_K) F."""
    if n > ORACLE_N_CAP:
        raise CapacityError(f"oracle limited to N <= {ORACLE_N_CAP}, got N={n}")
    f = dft_matrix_1d(n)
    t = np.diag(_indicator(n, np.arange(m)))
    b = f.conj().T @ np.diag(_indicator(n, np.arange(-k, k + 1))) @ f
    return t, b


def _real(a: np.ndarray) -> np.ndarray:
    resid = float(np.max(np.abs(a.imag), initial=0.0))
    if resid > IMAG_TOL:
        raise ContractError(f"oracle product has imaginary residue {resid:.3e}")
    return a.real.copy()


def prolate_via_projections(params: ProlateParams) -> np.ndarray:
    """Leading M x M block of T_M B_K T_M from explicit matrices."""
    params._require_1d()
    n, m, k = params.n[0], params.m[0], params.k[0]
    t, b = projection_matrices(n, m, k)
    return _real((t @ b @ t)[:m, :m])


def prolate_md_via_projections(params: ProlateParams) -> np.ndarray:
    """d-dimensional prolate matrix from Kronecker-assembled full projections.

    Builds the prod N_i square DFT, band indicator and box indicator,
    multiplies them out and restricts to the box indices (row-major).
    """
    total = prod(params.n)
    if total > ORACLE_KRON_CAP:
        raise CapacityError(f"oracle limited to prod N_i <= {ORACLE_KRON_CAP}, got {total}")
    f = reduce(np.kron, [dft_matrix_1d(n) for n in params.n])
    band = reduce(np.kron, [_indicator(n, np.arange(-k, k + 1)) for n, k in zip(params.n, params.k)])
    box = reduce(np.kron, [_indicator(n, np.arange(m)) for n, m in zip(params.n, params.m)])
    b = f.conj().T @ (band[:, None] * f)
    a = box[:, None] * b * box[None, :]
    keep = np.flatnonzero(box)
    return _real(a[np.ix_(keep, keep)])


def kronecker_spectrum_oracle(params: ProlateParams) -> np.ndarray:
    """Eigenvalues of the explicitly assembled Kronecker matrix, non-increasing."""
    if params.size > ORACLE_KRON_CAP:
        raise CapacityError(f"oracle limited to prod M_i <= {ORACLE_KRON_CAP}, got {params.size}")
    blocks = [prolate_via_projections(p) for p in params.axes()]
    a = reduce(np.kron, blocks)
    return scipy.linalg.eigvalsh(a)[::-1]


def concentration_duality_check(params: ProlateParams, n_vectors: int = 200, seed: int = 0,
                                tol: float = 1e-10) -> dict:
    """Check TBT / BTB spectral duality and the Rayleigh bound on random bandlimited vectors.

    Returns a dict with the measured quantities and a ``passed`` flag.
    """
    params._require_1d()
    n, m, k = params.n[0], params.m[0], params.k[0]
    t, b = projection_matrices(n, m, k)
    tbt_vals, tbt_vecs = scipy.linalg.eigh((t @ b @ t + (t @ b @ t).conj().T) / 2)
    tbt = tbt_vals[::-1]
    btb = scipy.linalg.eigvalsh((b @ t @ b + (b @ t @ b).conj().T) / 2)[::-1]
    # nonzero spectra coincide; both have N eigenvalues so compare all of them
    spectrum_gap = float(np.max(np.abs(tbt - btb)))
    lam_max = float(tbt[0])

    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, n_vectors)) + 1j * rng.standard_normal((n, n_vectors))
    x = b @ z
    ratios = np.linalg.norm(t @ x, axis=0) ** 2 / np.linalg.norm(x, axis=0) ** 2
    best = float(ratios.max())
    # the top eigenvector, band-limited, attains the maximum concentration
    x_top = b @ tbt_vecs[:, -1]
    top = float(np.linalg.norm(t @ x_top) ** 2 / np.linalg.norm(x_top) ** 2)
    return {
        "spectrum_gap": spectrum_gap,
        "lambda_max": lam_max,
        "max_concentration": best,
        "top_vector_concentration": top,
        "passed": spectrum_gap <= tol and best <= lam_max + tol and abs(top - lam_max) <= tol,
    }
