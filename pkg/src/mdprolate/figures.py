"""Data behind the spectrum figures: fixed time-bandwidth sweeps,
eigenvalue-versus-MW curves and the 2D tensor-product multiplicities."""
from __future__ import annotations

import math
from collections import defaultdict
from typing import Iterable, Optional, Sequence

import numpy as np
import scipy.linalg

from .prolate import ProlateParams, prolate_matrix_1d
from .series import FigureSeries, make_metadata
from .spectral import count_report, multiplicity_report, spectrum_1d

__all__ = [
    "FIGURES",
    "params_for_tbw",
    "params_for_tbw_and_w",
    "fixed_tbw_vs_n",
    "spectra_vs_n",
    "eig_vs_mw",
    "tensor_multiplicity",
    "product_classes",
]

# (N, target W) for the 2MW ~ 270 trio; exact triples are reconstructed
# by params_for_tbw_and_w and echoed in the metadata.
SPECTRA_VS_N_DEFAULT = ((400, 0.45), (800, 0.22), (1200, 0.15))


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def params_for_tbw(n: int, tbw: float, max_ratio: float = 0.8) -> ProlateParams:
    """Triple (N, M, K) with 2MW closest to ``tbw`` and M <= max_ratio * N.

    Ties go to the larger M, then the smaller K.
    """
    best = None
    for m in range(1, int(max_ratio * n) + 1):
        # 2MW = M (2K+1) / N; the best odd 2K+1 is near tbw N / M
        centre = (tbw * n / m - 1) / 2
        for k in {math.floor(centre), math.ceil(centre)}:
            if k < 0 or not 2 * k + 1 < n:
                continue
            err = abs(m * (2 * k + 1) / n - tbw)
            key = (round(err, 12), -m, k)
            if best is None or key < best[0]:
                best = (key, m, k)
    if best is None:
        raise ValueError(f"no admissible (M, K) for N={n}")
    return ProlateParams.isotropic(n, best[1], best[2])


def params_for_tbw_and_w(n: int, w: float, tbw: float) -> ProlateParams:
    """K from the target W, then M from the target 2MW."""
    k = _round_half_up((2 * n * w - 1) / 2)
    m = _round_half_up(tbw * n / (2 * k + 1))
    return ProlateParams.isotropic(n, min(m, n - 1), k)


def _spectrum_rows(params: ProlateParams, n_eig: Optional[int], cols: dict):
    lam = spectrum_1d(params).eigenvalues
    if n_eig is not None:
        lam = lam[:n_eig]
    n, m, k = params.n[0], params.m[0], params.k[0]
    for i, v in enumerate(lam):
        cols["n"].append(n)
        cols["m"].append(m)
        cols["k"].append(k)
        cols["two_mw"].append(2 * params.mw[0])
        cols["index"].append(i)
        cols["eigenvalue"].append(float(v))
    return count_report(spectrum_1d(params), 0.5).m_eps


def fixed_tbw_vs_n(tbw: float = 5.0, n_list: Sequence[int] = (64, 128, 256, 512),
                   n_eig: Optional[int] = 100) -> FigureSeries:
    """First ``n_eig`` eigenvalues for increasing N at (nearly) fixed 2MW."""
    cols = defaultdict(list)
    summary = []
    for n in sorted(n_list):
        p = params_for_tbw(n, tbw)
        m_half = _spectrum_rows(p, n_eig, cols)
        summary.append({"n": n, "m": p.m[0], "k": p.k[0], "two_mw": 2 * p.mw[0], "m_half": m_half})
    counts = [s["m_half"] for s in summary]
    meta = make_metadata({"tbw": tbw, "n_list": sorted(n_list), "n_eig": n_eig},
                         summary=summary, m_half_spread=max(counts) - min(counts))
    return FigureSeries("fixed-tbw-vs-N", dict(cols), meta)


def spectra_vs_n(tbw: float = 270.0, configs: Iterable[tuple[int, float]] = SPECTRA_VS_N_DEFAULT,
                 n_eig: Optional[int] = None) -> FigureSeries:
    """Spectra at 2MW ~ tbw for several (N, W) configurations."""
    cols = defaultdict(list)
    summary = []
    for n, w in sorted(configs):
        p = params_for_tbw_and_w(n, w, tbw)
        m_half = _spectrum_rows(p, n_eig, cols)
        summary.append({"n": n, "m": p.m[0], "k": p.k[0], "w": p.w[0],
                        "two_mw": 2 * p.mw[0], "m_half": m_half})
    meta = make_metadata({"tbw": tbw, "configs": [list(c) for c in sorted(configs)], "n_eig": n_eig},
                         summary=summary)
    return FigureSeries("spectra-vs-N", dict(cols), meta)


def eig_vs_mw(n: int = 1000, m: int = 800, k_max: int = 199, band_max: Optional[int] = None,
              band_step: int = 1) -> FigureSeries:
    """lambda^(k) as a function of MW for eigenvalue indices k = 0..k_max.

    The band half-width sweeps 0..band_max (default: the largest K with
    2MW < 400 and 2K+1 < N).
    """
    if band_max is None:
        band_max = max(kb for kb in range((n - 2) // 2 + 1)
                       if 2 * kb + 1 < n and m * (2 * kb + 1) / n < 400)
    k_max = min(k_max, m - 1)
    cols = defaultdict(list)
    for kb in range(0, band_max + 1, band_step):
        p = ProlateParams.isotropic(n, m, kb)
        lam = spectrum_1d(p).eigenvalues[: k_max + 1]
        for i, v in enumerate(lam):
            cols["k_band"].append(kb)
            cols["mw"].append(p.mw[0])
            cols["index"].append(i)
            cols["eigenvalue"].append(float(v))
    meta = make_metadata({"n": n, "m": m, "k_max": k_max, "band_max": band_max, "band_step": band_step})
    return FigureSeries("eig-vs-mw", dict(cols), meta)


def product_classes(lam: np.ndarray, tol: float = 1e-12) -> list[dict]:
    """Group the d = 2 products lam_i lam_j into near-equal classes.

    Each class lists its value and the (i, j) index pairs it contains.
    Grouping uses the same relative rule as ``multiplicity_report``.
    """
    lam = np.asarray(lam, dtype=float)
    m = len(lam)
    vals = np.multiply.outer(lam, lam).ravel()
    order = np.argsort(-vals, kind="stable")
    classes: list[dict] = []
    for pos in order:
        v = float(vals[pos])
        pair = (int(pos // m), int(pos % m))
        if classes:
            last = classes[-1]
            ref = last["last"]
            if abs(ref - v) <= tol * max(abs(ref), abs(v)):
                last["pairs"].append(pair)
                last["last"] = v
                continue
        classes.append({"value": v, "pairs": [pair], "last": v})
    for c in classes:
        c.pop("last")
        c["multiplicity"] = len(c["pairs"])
        c["diagonal"] = all(i == j for i, j in c["pairs"])
    return classes


def tensor_multiplicity(n: int = 64, m: int = 16, k: int = 4, tol: float = 1e-12) -> FigureSeries:
    """Distinct eigenvalues of A (x) A with their multiplicities.

    Classes equal to exactly zero come from the null space of A (rank
    min(M, 2K+1)) and are flagged rather than checked.
    """
    p = ProlateParams.isotropic(n, m, k)
    lam = spectrum_1d(p).eigenvalues
    classes = product_classes(lam, tol)
    cols = defaultdict(list)
    off_diag_ok = True
    for rank, c in enumerate(classes):
        i, j = c["pairs"][0]
        null = c["value"] == 0.0
        cols["class"].append(rank)
        cols["value"].append(c["value"])
        cols["multiplicity"].append(c["multiplicity"])
        cols["i"].append(i)
        cols["j"].append(j)
        cols["diagonal"].append(int(c["diagonal"]))
        cols["null"].append(int(null))
        if not null and not c["diagonal"]:
            expected = {(i, j), (j, i)}
            off_diag_ok &= c["multiplicity"] == 2 and set(c["pairs"]) == expected
    nonnull = [c for c in classes if c["value"] != 0.0]
    meta = make_metadata(
        {"n": n, "m": m, "k": k, "tol": tol},
        one_d_spectrum=[float(v) for v in lam],
        rank=p.rank_1d(),
        classes=len(classes),
        off_diagonal_classes=sum(1 for c in nonnull if not c["diagonal"]),
        off_diagonal_all_multiplicity_two=bool(off_diag_ok),
        one_d_multiplicities=[mult for _, mult in multiplicity_report(lam, tol)],
    )
    return FigureSeries("tensor-multiplicity", dict(cols), meta)


FIGURES = {
    "fixed-tbw-vs-N": fixed_tbw_vs_n,
    "spectra-vs-N": spectra_vs_n,
    "eig-vs-mw": eig_vs_mw,
    "tensor-multiplicity": tensor_multiplicity,
}
