"""Acceptance criteria, one test per criterion.

Each test records a one-line verdict through the ``criterion`` fixture;
the lines are printed in the "acceptance criteria" section of the
terminal summary.  Run with ``pytest tests/test_acceptance.py -v``.
"""
import itertools
import math
import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mdprolate.bounds import (
    MAIN_THEOREM_PINNED,
    main_theorem_sweep,
    slepian_sigmoid,
    verify_cross_index,
    verify_karnik,
    verify_prop_1d,
)
from mdprolate.figures import fixed_tbw_vs_n, tensor_multiplicity
from mdprolate.nodal import nodal_sweep
from mdprolate.operators import (
    BandSpec,
    BoxSpec,
    band_limit_convolution,
    band_limit_fourier,
    time_limit,
)
from mdprolate.oracle import kronecker_spectrum_oracle, prolate_via_projections
from mdprolate.prolate import ProlateParams, prolate_matrix_1d
from mdprolate.spectral import count_report, spectrum_1d, spectrum_md
from mdprolate.verify import chi_grid, default_sweep

pytestmark = pytest.mark.acceptance
P = ProlateParams.isotropic

SWEEP = default_sweep()


def test_01_trace_identity(criterion):
    t0 = time.perf_counter()
    grid = [P(n, m, k) for n in (16, 50, 128, 333, 512, 1024)
            for m in sorted({2, n // 5, n // 2, n - 1})
            for k in sorted({0, n // 20, n // 6, (n - 3) // 2})]
    err1 = max(abs(spectrum_1d(p).total - 2 * p.mw[0]) for p in grid)
    grid2 = [p for p in grid if p.m[0] <= 400]
    err2 = max(abs(spectrum_md(P(p.n[0], p.m[0], p.k[0], d=2)).total - (2 * p.mw[0]) ** 2) for p in grid2)
    dt = time.perf_counter() - t0
    ok = len(grid) >= 50 and err1 <= 1e-9 and err2 <= 1e-8 and dt <= 120
    criterion("1. trace identity", ok,
              f"{len(grid)} 1D / {len(grid2)} 2D instances, max err {err1:.2e} / {err2:.2e}, {dt:.1f}s")
    assert ok


def _all_triples(ns):
    for n in ns:
        for m in range(1, n + 1):
            for k in range((n - 2) // 2 + 1):
                yield P(n, m, k, identity_time_limit=(m == n))


def test_02_oracle_equivalence(criterion):
    t0 = time.perf_counter()
    triples = list(_all_triples((8, 10, 16, 32, 64)))
    err1 = max(float(np.max(np.abs(prolate_matrix_1d(p).matrix - prolate_via_projections(p))))
               for p in triples)
    axes = [P(n, m, k) for n in (8, 10, 16, 32) for m in sorted({1, n // 4, n // 2, n - 1})
            for k in sorted({0, n // 8, (n - 3) // 2})]
    pairs = [ProlateParams((a.n[0], b.n[0]), (a.m[0], b.m[0]), (a.k[0], b.k[0]))
             for a, b in itertools.combinations_with_replacement(axes, 2) if a.m[0] * b.m[0] <= 1024]
    err2 = max(float(np.max(np.abs(spectrum_md(p).eigenvalues - kronecker_spectrum_oracle(p))))
               for p in pairs)
    dt = time.perf_counter() - t0
    ok = err1 <= 1e-12 and err2 <= 1e-9 and dt <= 300
    criterion("2. oracle equivalence", ok,
              f"{len(triples)} 1D triples max {err1:.1e}, {len(pairs)} d=2 pairs max {err2:.1e}, {dt:.1f}s")
    assert ok


_PROJ = {"count": 0, "worst": 0.0}


@st.composite
def _instances(draw):
    d = draw(st.integers(1, 3))
    grid = tuple(draw(st.integers(3, 24 if d < 3 else 10)) for _ in range(d))
    widths = tuple(draw(st.integers(1, n - 1)) for n in grid)
    ks = tuple(draw(st.integers(0, (n - 2) // 2)) for n in grid)
    seed = draw(st.integers(0, 2**32 - 1))
    return grid, widths, ks, seed


@settings(max_examples=250, deadline=None, derandomize=True)
@given(_instances())
def _projection_laws(inst):
    grid, widths, ks, seed = inst
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(grid) + 1j * rng.standard_normal(grid)
    y = rng.standard_normal(grid) + 1j * rng.standard_normal(grid)
    box, band = BoxSpec(grid, widths), BandSpec(grid, ks)
    tx, bx = time_limit(x, box), band_limit_fourier(x, band)
    errs = [
        np.max(np.abs(time_limit(tx, box) - tx)),
        np.max(np.abs(band_limit_fourier(bx, band) - bx)),
        abs(np.vdot(y, tx) - np.vdot(time_limit(y, box), x)),
        abs(np.vdot(y, bx) - np.vdot(band_limit_fourier(y, band), x)),
        np.max(np.abs(bx - band_limit_convolution(x, band))),
    ]
    _PROJ["count"] += 1
    _PROJ["worst"] = max(_PROJ["worst"], float(max(errs)))


def test_03_projection_laws(criterion):
    t0 = time.perf_counter()
    _PROJ.update(count=0, worst=0.0)
    _projection_laws()
    dt = time.perf_counter() - t0
    ok = _PROJ["count"] >= 200 and _PROJ["worst"] <= 1e-11 and dt <= 60
    criterion("3. projection laws", ok,
              f"{_PROJ['count']} instances, worst residual {_PROJ['worst']:.1e}, {dt:.1f}s")
    assert ok


def test_04_cross_index(criterion):
    verdicts = [verify_cross_index(p) for p in SWEEP]
    applicable = [v for v in verdicts if v.status != "inapplicable"]
    fails = [v for v in applicable if v.status == "fail"]
    ok = len(applicable) >= 100 and not fails and max(p.n[0] for p in SWEEP) <= 512
    criterion("4. cross-index", ok, f"{len(applicable)} applicable, {len(fails)} failures")
    assert ok


def test_05_karnik(criterion):
    verdicts = [verify_karnik(p, e) for p in SWEEP for e in (0.4, 0.1, 0.01, 1e-4)]
    fails = [v for v in verdicts if v.status == "fail"]
    worst = max(v.details["slack"] for v in verdicts)
    criterion("5. 1D transition bound", not fails,
              f"{len(verdicts)} checks, {len(fails)} failures, max n/R {worst:.3f}")
    assert not fails


def test_06_prop_1d(criterion):
    reports = [verify_prop_1d(p, g) for p in SWEEP for g in (0.01, 0.5, 0.9)]
    fails = [r for r in reports if not r.passed]
    worst = max(r.slack["deviation_over_allowed"] for r in reports)
    criterion("6. 1D count proposition", not fails,
              f"{len(reports)} checks, {len(fails)} failures, max dev/allowed {worst:.3f}")
    assert not fails


def test_07_main_theorem_d2(criterion):
    reports = main_theorem_sweep(MAIN_THEOREM_PINNED)
    m_ratio = max(r.slack["m_ratio"] for r in reports)
    n_ratio = max(r.slack["n_ratio"] for r in reports if "n_ratio" in r.slack)
    below = all(r.observed["m_deviation"] <= MAIN_THEOREM_PINNED["m_ratio"] * 1.1 * r.predicted["b_d"]
                and r.observed["n_eps"] <= MAIN_THEOREM_PINNED["n_ratio"] * 1.1 * r.predicted["b_d"]
                for r in reports)
    ok = all(r.passed for r in reports) and below
    criterion("7. main theorem d=2 regression", ok,
              f"{len(reports)} cases, m ratio {m_ratio:.4f} (pinned {MAIN_THEOREM_PINNED['m_ratio']}), "
              f"n ratio {n_ratio:.4f} (pinned {MAIN_THEOREM_PINNED['n_ratio']})")
    assert ok


def test_08_degenerate(criterion):
    eps_grid = np.linspace(0.0101, 0.9899, 97)
    bad = []
    for n in (8, 9, 16, 31, 64):
        for k in range((n - 2) // 2 + 1):
            one = spectrum_1d(P(n, n, k, identity_time_limit=True)).eigenvalues
            expected = np.array([1.0] * (2 * k + 1) + [0.0] * (n - 2 * k - 1))
            if np.max(np.abs(one - expected)) > 1e-12:
                bad.append(("spectrum", n, k))
            for d in (1, 2, 3):
                if n**d > 40_000:
                    continue
                lam = spectrum_md(P(n, n, k, d=d, identity_time_limit=True))
                for e in eps_grid:
                    rep = count_report(lam, float(e))
                    if rep.m_eps != (2 * k + 1) ** d or (rep.n_eps is not None and rep.n_eps != 0):
                        bad.append(("count", n, k, d, float(e)))
    criterion("8. degenerate known answer", not bad, f"{len(bad)} mismatches")
    assert not bad


def test_09_nodal(criterion):
    total = fails = 0
    first = None
    for row in nodal_sweep(range(2, 513)):
        ok = row["formula_matches"] & row["within_two"]
        total += ok.size
        nbad = int(ok.size - np.count_nonzero(ok))
        if nbad and first is None:
            first = (row["n"], int(row["m"][~ok][0]), row["k"])
        fails += nbad
    detail = f"{total} instances, {fails} failures"
    if first:
        detail += f", first N={first[0]} M={first[1]} K={first[2]}"
    criterion("9. nodal count", fails == 0, detail)
    assert fails == 0, detail


def test_10_figures(criterion):
    fixed = fixed_tbw_vs_n(tbw=5, n_list=(64, 128, 256, 512))
    tens = tensor_multiplicity(n=64, m=16, k=4, tol=1e-12)
    spread = fixed.metadata["m_half_spread"]
    ok = spread <= 1 and tens.metadata["off_diagonal_all_multiplicity_two"]
    criterion("10. figure reproduction", ok,
              f"m_0.5 spread {spread} across N, off-diagonal classes "
              f"{tens.metadata['off_diagonal_classes']} all multiplicity 2: "
              f"{tens.metadata['off_diagonal_all_multiplicity_two']}")
    assert ok


def _k_for_mw(n, m, mw):
    # 2K+1 = 2 N MW / M, rounded half up
    return math.floor((2 * n * mw / m - 1) / 2 + 0.5)


def test_11_sigmoid(criterion):
    t0 = time.perf_counter()
    n, m = 1000, 800
    worst = {}
    for target in (5, 10, 20):
        p = P(n, m, _k_for_mw(n, m, target))
        lam = spectrum_1d(p).eigenvalues
        sel = np.flatnonzero((lam > 0.2) & (lam < 0.8))
        sig = slepian_sigmoid(sel, m, p.w[0])
        worst[round(p.mw[0], 3)] = float(np.max(np.abs(lam[sel] - sig))) if sel.size else 0.0
    dt = time.perf_counter() - t0
    ok = max(worst.values()) <= 0.1 and dt <= 120
    criterion("11. sigmoid approximation", ok,
              ", ".join(f"MW={k}: {v:.4f}" for k, v in worst.items()) + f", {dt:.1f}s")
    assert ok


def test_12_chi_lemma(criterion):
    t0 = time.perf_counter()
    (v,) = chi_grid(points=10_000, d_max=6, slack=1e-12)
    dt = time.perf_counter() - t0
    ok = v.passed and v.params["points"] >= 10_000 and dt <= 1.0
    criterion("12. chi lemma grid", ok, f"{v.params['points']} points, {dt:.3f}s")
    assert ok
