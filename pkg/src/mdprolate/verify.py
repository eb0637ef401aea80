"""Parameter sweeps for the verification checks and the JSON report format."""
from __future__ import annotations

import math
from typing import Iterable, Optional, Sequence

import numpy as np

from . import bounds, nodal
from .bounds import BoundReport, Verdict
from .errors import ParameterError
from .oracle import ORACLE_N_CAP, concentration_duality_check
from .prolate import ProlateParams
from .spectral import spectrum_1d

__all__ = [
    "CHECKS",
    "KARNIK_EPS",
    "PROP_GAMMAS",
    "default_sweep",
    "chi_grid",
    "build_grid",
    "run_checks",
    "make_report",
]

CHECKS = ("cross-index", "prop1d", "karnik", "main-theorem", "nodal", "chi")
KARNIK_EPS = (0.4, 0.1, 0.01, 1e-4)
PROP_GAMMAS = (0.01, 0.5, 0.9)
DEFAULT_SWEEP_N = (16, 24, 32, 48, 64, 96, 128, 160, 192, 256, 320, 384, 448, 512)


def default_sweep() -> list[ProlateParams]:
    """Deterministic 1D grid with N <= 512 and varied M/N and W."""
    out = []
    for n in DEFAULT_SWEEP_N:
        ms = sorted({max(2, n // 8), n // 4, n // 2, (3 * n) // 4, n - 1})
        ks = sorted({1, max(1, n // 16), n // 8, n // 4, (n - 3) // 2})
        for m in ms:
            for k in ks:
                if 0 <= k and 2 * k + 1 < n and m < n:
                    out.append(ProlateParams.isotropic(n, m, k))
    return out


def build_grid(ns: Sequence[int] = (), ms: Sequence[int] = (), ks: Sequence[int] = (),
               k_all: bool = False) -> list[ProlateParams]:
    """Cartesian 1D grid; with ``k_all`` every valid K for each N is used."""
    if not ns:
        return default_sweep()
    out = []
    for n in ns:
        m_list = ms or [n // 2]
        k_list = range((n - 2) // 2 + 1) if k_all else (ks or [max(1, n // 8)])
        for m in m_list:
            for k in k_list:
                if 2 * k + 1 < n:
                    out.append(ProlateParams.isotropic(n, m, k))
    return out


def chi_grid(points: int = 10_000, d_max: int = 6, slack: float = 1e-12) -> list[Verdict]:
    """Both parts of the chi lemma on a log-spaced eps grid times d = 1..d_max."""
    per_d = max(1, -(-points // d_max))
    eps = np.concatenate([np.logspace(-12, math.log10(0.5), per_d // 2, endpoint=False),
                          np.linspace(0.5, 1 - 1e-6, per_d - per_d // 2)])
    worst_i, worst_ii = -math.inf, -math.inf
    first_fail = None
    for e in eps:
        e = float(e)
        if e <= 0.5:
            gap = bounds.chi(e) - 2 * math.log(1 / e)
            worst_i = max(worst_i, gap)
            if gap > slack and first_fail is None:
                first_fail = {"part": "i", "eps": e}
        for d in range(1, d_max + 1):
            lhs, rhs, _ = bounds.chi_root_bound_check(e, d)
            worst_ii = max(worst_ii, lhs - rhs)
            if lhs - rhs > slack and first_fail is None:
                first_fail = {"part": "ii", "eps": e, "d": d}
    n_pts = len(eps) * d_max
    status = "fail" if first_fail else "pass"
    return [Verdict("chi", status, {"points": n_pts, "d_max": d_max},
                    {"max_excess_i": worst_i, "max_excess_ii": worst_ii, "first_fail": first_fail})]


def run_checks(which: str, grid: Iterable[ProlateParams], eps: Optional[Sequence[float]] = None,
               gammas: Optional[Sequence[float]] = None, d: int = 2, seed: int = 0,
               main_grid: Optional[Sequence[ProlateParams]] = None):
    """Run one named check (or ``"all"``) and return a list of Verdict/BoundReport."""
    names = CHECKS if which == "all" else (which,)
    grid = list(grid)
    results: list = []
    spectra = {}

    def spec(p):
        if p not in spectra:
            spectra[p] = spectrum_1d(p)
        return spectra[p]

    for name in names:
        if name == "cross-index":
            results += [bounds.verify_cross_index(p, spec(p)) for p in grid]
        elif name == "karnik":
            for p in grid:
                results += [bounds.verify_karnik(p, e, spec(p)) for e in (eps or KARNIK_EPS) if e < 0.5]
        elif name == "prop1d":
            for p in grid:
                results += [bounds.verify_prop_1d(p, g, spec(p)) for g in (gammas or PROP_GAMMAS)]
        elif name == "main-theorem":
            if main_grid is None:
                mg = [ProlateParams.isotropic(n, m, k, d) for n, m, k in bounds.MAIN_THEOREM_GRID]
            else:
                mg = list(main_grid)
            pinned = bounds.MAIN_THEOREM_PINNED if d == 2 else None
            for p in mg:
                results += [bounds.verify_main_theorem(p, e, pinned=pinned)
                            for e in (eps or bounds.MAIN_THEOREM_EPS)]
        elif name == "nodal":
            results += [nodal.nodal_count_check(p) for p in grid]
        elif name == "chi":
            results += chi_grid()
        else:
            raise ParameterError(f"unknown check {name!r}; valid: all, {', '.join(CHECKS)}")
    if which == "all":
        for p in grid:
            if p.n[0] <= ORACLE_N_CAP:
                out = concentration_duality_check(p, seed=seed)
                results.append(Verdict("duality", "pass" if out["passed"] else "fail",
                                       p.as_dict(), out))
    return results


def _status(r) -> str:
    if isinstance(r, BoundReport):
        return "pass" if r.passed else "fail"
    return r.status


def _check_name(r) -> str:
    if isinstance(r, BoundReport):
        return next(iter(r.verdicts)) if "prop_1d" in r.verdicts else "main-theorem"
    return r.check


def make_report(params: dict, results: list) -> dict:
    """Top-level report {params, results[], slack[], verdict}."""
    rows, slack = [], []
    for r in results:
        row = r.as_dict()
        row["check"] = _check_name(r)
        row["status"] = _status(r)
        rows.append(row)
        if isinstance(r, BoundReport):
            for key, value in r.slack.items():
                slack.append({"check": row["check"], "params": r.params, "epsilon": r.epsilon,
                              "name": key, "value": value})
        else:
            for key in ("slack", "slack_above", "slack_below"):
                if key in r.details:
                    slack.append({"check": r.check, "params": r.params,
                                  "epsilon": r.details.get("eps"), "name": key,
                                  "value": r.details[key]})
    failed = [row for row in rows if row["status"] == "fail"]
    return {
        "params": params,
        "results": rows,
        "slack": slack,
        "verdict": "fail" if failed else "pass",
        "summary": {
            "total": len(rows),
            "failed": len(failed),
            "inapplicable": sum(row["status"] == "inapplicable" for row in rows),
        },
    }
