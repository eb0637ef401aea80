"""Nodal set of the 1D Dirichlet kernel on an M-point window.

D_W(delta) = sin(pi (2K+1) delta / N) / sin(pi delta / N) vanishes for
0 < |delta| < N exactly when N divides (2K+1) * delta.  Membership is
decided with that integer congruence, never by thresholding floats.

Two counts are kept apart:

* ``count``: the number of distinct signed lags +-delta with
  0 < delta <= M-1 at which the kernel vanishes.  The closed form
  2 floor(2W(M-1)) is a statement about this count.
* ``pairs``: every (m, n) in the window with D_W(n - m) = 0.  A lag
  delta contributes M - delta pairs in each orientation.

The positive zero lags are the multiples of N / gcd(2K+1, N), so the
exact count is 2 floor(gcd(2K+1, N) (M-1) / N).  That agrees with
2 floor(2W(M-1)) when (2K+1) divides N.  It can differ otherwise, and
:func:`nodal_count_check` reports such instances as failures.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .prolate import ProlateParams
from .bounds import Verdict

__all__ = [
    "NodalSet",
    "zero_lags",
    "nodal_set",
    "nodal_count_formula",
    "exact_nodal_count",
    "nodal_count_check",
    "nodal_sweep",
]


@dataclass(frozen=True)
class NodalSet:
    params: ProlateParams
    lags: tuple[int, ...]  # positive zero lags, ascending
    pairs: np.ndarray = field(repr=False)  # shape (P, 2), rows (m, n), m != n

    @property
    def count(self) -> int:
        return 2 * len(self.lags)

    @property
    def pair_count(self) -> int:
        return len(self.pairs)


def _nmk(params: ProlateParams) -> tuple[int, int, int]:
    params._require_1d()
    n, m, k = params.n[0], params.m[0], params.k[0]
    if not (m < n or (m == n and params.identity_time_limit)):
        raise ParameterError(f"nodal set needs M < N, got N={n}, M={m}")
    return n, m, k


def zero_lags(n: int, k: int, max_lag: int) -> np.ndarray:
    """Positive lags delta <= max_lag with N | (2K+1) delta."""
    delta = np.arange(1, max_lag + 1, dtype=np.int64)
    return delta[((2 * k + 1) * delta) % n == 0]


def nodal_set(params: ProlateParams) -> NodalSet:
    n, m, k = _nmk(params)
    lags = zero_lags(n, k, m - 1)
    rows = []
    for d in lags:
        start = np.arange(m - d)
        fwd = np.column_stack([start, start + d])
        rows.extend([fwd, fwd[:, ::-1]])
    pairs = np.concatenate(rows) if rows else np.empty((0, 2), dtype=np.int64)
    pairs.setflags(write=False)
    return NodalSet(params, tuple(int(d) for d in lags), pairs)


def nodal_count_formula(params: ProlateParams) -> int:
    """2 floor(2W(M-1)) computed in integers: 2 floor((2K+1)(M-1)/N)."""
    n, m, k = _nmk(params)
    return 2 * (((2 * k + 1) * (m - 1)) // n)


def exact_nodal_count(params: ProlateParams) -> int:
    """2 floor(gcd(2K+1, N)(M-1)/N), the true signed-lag count."""
    n, m, k = _nmk(params)
    return 2 * ((math.gcd(2 * k + 1, n) * (m - 1)) // n)


def nodal_count_check(params: ProlateParams) -> Verdict:
    """Enumerated count == 2 floor(2W(M-1)) and |count - 2 floor(2MW)| <= 2."""
    n, m, k = _nmk(params)
    ns = nodal_set(params)
    formula = nodal_count_formula(params)
    centre = 2 * ((m * (2 * k + 1)) // n)
    closed_ok = ns.count == formula
    centre_ok = abs(ns.count - centre) <= 2
    return Verdict(
        "nodal",
        "pass" if closed_ok and centre_ok else "fail",
        params.as_dict(),
        {
            "count": ns.count,
            "pair_count": ns.pair_count,
            "formula": formula,
            "two_floor_2mw": centre,
            "exact_count": exact_nodal_count(params),
            "formula_matches": closed_ok,
            "within_two": centre_ok,
        },
    )


def nodal_sweep(n_values, m_rule=None):
    """Vectorised count check over every valid (M, K) for each N.

    ``m_rule(N)`` may restrict M to an iterable; by default every
    1 <= M < N is used.  Yields one dict per (N, K) with the arrays of
    M values and booleans for both conditions.
    """
    for n in n_values:
        ms = np.arange(1, n) if m_rule is None else np.asarray(list(m_rule(n)), dtype=np.int64)
        for k in range((n - 2) // 2 + 1):
            if not 2 * k + 1 < n:
                continue
            lags = zero_lags(n, k, n - 1)
            # count of zero lags <= M-1, for every M at once
            count = 2 * np.searchsorted(lags, ms - 1, side="right")
            formula = 2 * (((2 * k + 1) * (ms - 1)) // n)
            centre = 2 * ((ms * (2 * k + 1)) // n)
            yield {
                "n": n,
                "k": k,
                "m": ms,
                "count": count,
                "formula_matches": count == formula,
                "within_two": np.abs(count - centre) <= 2,
            }
