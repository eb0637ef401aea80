"""Closed-form eigenvalue-count bounds and the harnesses that check them.

All logarithms are natural.  Verification helpers return a
:class:`Verdict` (or a :class:`BoundReport`) instead of raising, so
sweeps can collect every outcome; callers decide what is fatal.
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError, ParameterError
from .prolate import ProlateParams
from .spectral import Spectrum, count_report, spectrum_1d, spectrum_md

log = logging.getLogger(__name__)

EULER_GAMMA = 0.5772156649
STRADDLE_TOL = 1e-9

# Largest |m_eps - (2MW)^2| / B_2 and n_eps / B_2 seen over MAIN_THEOREM_GRID
# on the first full run; regressions may not exceed these by more than 10%.
MAIN_THEOREM_PINNED = {"m_ratio": 1.5323, "n_ratio": 3.3432}

# isotropic (N, M, K) per axis with MW > 1, swept at every eps below
MAIN_THEOREM_GRID = [
    (32, 16, 3), (64, 32, 4), (64, 48, 10), (96, 60, 9), (128, 64, 15),
    (128, 96, 20), (160, 100, 12), (200, 120, 30), (256, 128, 31), (256, 200, 50),
]
MAIN_THEOREM_EPS = (0.4, 0.1, 0.01, 1e-4)


def _check_eps(eps: float, hi: float = 1.0):
    if not 0 < eps < hi:
        raise DomainError(f"eps must lie in (0, {hi:g}), got {eps}")


def r_eps(mw: float, eps: float) -> float:
    """1D transition-band width bound (2/pi^2) log(100 MW + 25) log(5/(eps(1-eps))) + 7."""
    if mw <= 0:
        raise DomainError(f"MW must be positive, got {mw}")
    _check_eps(eps)
    return 2 / math.pi**2 * math.log(100 * mw + 25) * math.log(5 / (eps * (1 - eps))) + 7


def chi(eps: float) -> float:
    _check_eps(eps)
    return math.log(1 / (eps * (1 - eps)))


def chi_root_bound_check(eps: float, d: int) -> tuple[float, float, float]:
    """Return (chi(eps^(1/d)), (2 + log d / log 4) chi(eps), ratio)."""
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    lhs = chi(eps ** (1 / d))
    rhs = (2 + math.log(d) / math.log(4)) * chi(eps)
    return lhs, rhs, lhs / rhs


def b_d(mw: float, eps: float, d: int) -> float:
    """log(MW) log(1/eps) max{[log(MW) log(1/eps)]^(d-1), (2MW)^(d-1)}."""
    if mw <= 1:
        raise DomainError(f"B_d needs MW > 1 so that log(MW) > 0, got MW={mw}")
    _check_eps(eps)
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    base = math.log(mw) * math.log(1 / eps)
    return base * max(base ** (d - 1), (2 * mw) ** (d - 1))


def tau_eps(mw: float, eps: float, d: int, c: float) -> float:
    """Binomial remainder sum_j C(d, j+1) (2MW)^(d-1-j) (c R_eps)^(j+1)."""
    if c < 0:
        raise DomainError(f"c must be nonnegative, got {c}")
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    r = c * r_eps(mw, eps)
    return sum(math.comb(d, j + 1) * (2 * mw) ** (d - 1 - j) * r ** (j + 1) for j in range(d))


def slepian_sigmoid(k, m: int, w: float):
    """Slepian's sigmoid approximation of the k-th 1D eigenvalue.

    ``k`` may be a scalar or an array of (0-based) indices.
    """
    if not 0 < w < 0.5:
        raise DomainError(f"W must lie in (0, 1/2), got {w}")
    arg = 8 * m * math.sin(2 * math.pi * w)
    if arg <= 0:
        raise DomainError(f"log argument 8 M sin(2 pi W) must be positive, got {arg}")
    denom = math.log(arg) + EULER_GAMMA
    if denom <= 0:
        raise DomainError(f"sigmoid scale log(8 M sin(2 pi W)) + gamma is nonpositive: {denom}")
    x = -math.pi**2 * (2 * m * w - np.asarray(k, dtype=float) - 0.5) / denom
    # 1/(1+e^x) written via tanh to avoid overflow for large |x|
    out = 0.5 * (1 - np.tanh(x / 2))
    return float(out) if np.ndim(out) == 0 else out


@dataclass
class Verdict:
    check: str
    status: str  # "pass" | "fail" | "inapplicable"
    params: dict
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class BoundReport:
    """Observed counts against the predicted quantities for one (params, eps)."""

    params: dict
    epsilon: float
    observed: dict
    predicted: dict
    slack: dict
    verdicts: dict
    events: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v != "fail" for v in self.verdicts.values())

    def as_dict(self) -> dict:
        return asdict(self)


def stabilize_eps(values: np.ndarray, eps: float, tol: float = STRADDLE_TOL) -> tuple[float, Optional[dict]]:
    """Move eps off an eigenvalue it (nearly) coincides with.

    When some eigenvalue lies within ``tol`` of eps or 1 - eps, eps is
    shifted by half the distance to the next distinct eigenvalue above
    the straddled one.  Returns the new eps and an event record (None if
    nothing moved).
    """
    vals = np.unique(np.asarray(values, dtype=float))
    if vals.size == 0:
        return eps, None
    for target in (eps, 1 - eps):
        near = vals[np.abs(vals - target) < tol]
        if near.size:
            lam = float(near.max())
            above = vals[vals > lam + tol]
            step = (float(above.min()) - lam) / 2 if above.size else (1 - lam) / 2
            new = eps + step if target == eps else eps - step
            if not 0 < new < 1:
                return eps, None
            event = {"eps": eps, "new_eps": new, "straddled": lam}
            log.info("eps %.6g straddles eigenvalue %.6g; using %.6g", eps, lam, new)
            return new, event
    return eps, None


def _cross_index_applicable(params: ProlateParams) -> Optional[int]:
    f = math.floor(2 * params.mw[0])
    if f - 1 < 0 or f + 1 > params.m[0] - 1:
        return None
    return f


def verify_cross_index(params: ProlateParams, spectrum: Optional[Spectrum] = None) -> Verdict:
    """lambda[floor(2MW) - 1] >= 1/2 >= lambda[floor(2MW) + 1] (0-based)."""
    params._require_1d()
    f = _cross_index_applicable(params)
    pd = params.as_dict()
    if f is None:
        return Verdict("cross-index", "inapplicable", pd, {"reason": "floor(2MW) +- 1 out of range"})
    lam = (spectrum or spectrum_1d(params)).eigenvalues
    upper, lower = float(lam[f - 1]), float(lam[f + 1])
    ok = upper >= 0.5 >= lower
    return Verdict("cross-index", "pass" if ok else "fail", pd,
                   {"index": f, "lambda_above": upper, "lambda_below": lower,
                    "slack_above": upper - 0.5, "slack_below": 0.5 - lower})


def verify_karnik(params: ProlateParams, eps: float, spectrum: Optional[Spectrum] = None) -> Verdict:
    """1D transition count n_eps <= R_eps(MW), constants as printed."""
    params._require_1d()
    _check_eps(eps, 0.5)
    lam = (spectrum or spectrum_1d(params)).eigenvalues
    eps_used, event = stabilize_eps(lam, eps)
    rep = count_report(lam, eps_used)
    bound = r_eps(params.mw[0], eps)
    details = {"eps": eps, "eps_used": eps_used, "n_eps": rep.n_eps, "bound": bound,
               "slack": rep.n_eps / bound, "nearest_gap": rep.nearest_gap}
    if event:
        details["event"] = event
    return Verdict("karnik", "pass" if rep.n_eps <= bound else "fail", params.as_dict(), details)


def verify_prop_1d(params: ProlateParams, gamma: float, spectrum: Optional[Spectrum] = None) -> BoundReport:
    """|#{lambda > gamma} - 2MW| <= R_gamma(MW) + 2."""
    params._require_1d()
    _check_eps(gamma)
    lam = (spectrum or spectrum_1d(params)).eigenvalues
    g, event = stabilize_eps(lam, gamma)
    rep = count_report(lam, g)
    tbw = 2 * params.mw[0]
    r = r_eps(params.mw[0], gamma)
    dev = abs(rep.m_eps - tbw)
    return BoundReport(
        params=params.as_dict(),
        epsilon=gamma,
        observed={"m_eps": rep.m_eps, "n_eps": rep.n_eps, "deviation": dev},
        predicted={"two_mw_pow_d": tbw, "r_eps": r, "allowed": r + 2},
        slack={"deviation_over_allowed": dev / (r + 2)},
        verdicts={"prop_1d": "pass" if dev <= r + 2 else "fail"},
        events=[event] if event else [],
    )


def verify_main_theorem(params: ProlateParams, eps: float, d: Optional[int] = None,
                        pinned: Optional[dict] = None) -> BoundReport:
    """Empirical constants |m_eps - (2MW)^d| / B_d and n_eps / B_d.

    ``params`` may be given per axis (isotropic) or as a single 1D triple
    with ``d``.  The theorem's constant is existential, so the only hard
    checks are finiteness and, when ``pinned`` ratios are supplied, that
    the observed ratios stay within 10% of them.
    """
    if d is not None and params.d == 1 and d > 1:
        params = ProlateParams.isotropic(params.n[0], params.m[0], params.k[0], d,
                                         identity_time_limit=params.identity_time_limit)
    if not params.is_isotropic:
        raise ParameterError("main-theorem check needs isotropic (N, M, K) on every axis")
    d = params.d
    _check_eps(eps)
    lam = spectrum_md(params).eigenvalues
    e, event = stabilize_eps(lam, eps)
    rep = count_report(lam, e)
    mw = params.mw[0]
    target = (2 * mw) ** d
    predicted = {"two_mw_pow_d": target, "r_eps": r_eps(mw, eps)}
    observed = {"m_eps": rep.m_eps, "n_eps": rep.n_eps, "m_deviation": abs(rep.m_eps - target)}
    slack: dict = {}
    verdicts: dict = {}
    if mw > 1:
        bd = b_d(mw, eps, d)
        predicted["b_d"] = bd
        slack["m_ratio"] = observed["m_deviation"] / bd
        if rep.n_eps is not None:
            slack["n_ratio"] = rep.n_eps / bd
        verdicts["finite"] = "pass" if all(math.isfinite(v) for v in slack.values()) else "fail"
        for key, ref in (pinned or {}).items():
            if ref is not None and key in slack:
                verdicts[f"{key}_regression"] = "pass" if slack[key] <= 1.1 * ref else "fail"
    else:
        verdicts["finite"] = "inapplicable"
    return BoundReport(params.as_dict(), eps, observed, predicted, slack, verdicts,
                       [event] if event else [])


def main_theorem_sweep(pinned: Optional[dict] = None) -> list[BoundReport]:
    """Run the d = 2 harness over MAIN_THEOREM_GRID x MAIN_THEOREM_EPS."""
    return [
        verify_main_theorem(ProlateParams.isotropic(n, m, k, 2), eps, pinned=pinned)
        for n, m, k in MAIN_THEOREM_GRID
        for eps in MAIN_THEOREM_EPS
    ]


def lemma_sandwich(params: ProlateParams, eps: float) -> tuple[int, int, int]:
    """(#{1D > eps^(1/d)})^d, m_eps in d dims, (#{1D > eps})^d for isotropic params."""
    if not params.is_isotropic:
        raise ParameterError("sandwich check needs isotropic parameters")
    _check_eps(eps)
    one = spectrum_1d(params.axis(0)).eigenvalues
    d = params.d
    lo = int(np.count_nonzero(one > eps ** (1 / d))) ** d
    hi = int(np.count_nonzero(one > eps)) ** d
    mid = count_report(spectrum_md(params), eps).m_eps
    return lo, mid, hi
