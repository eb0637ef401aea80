import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mdprolate.errors import CapacityError, DimensionError, ParameterError
from mdprolate.oracle import prolate_md_via_projections, prolate_via_projections
from mdprolate.prolate import (
    ProlateParams,
    kernel_table,
    prolate_matrix_1d,
    prolate_matrix_md,
)

P = ProlateParams.isotropic


def test_params_validation():
    with pytest.raises(ParameterError, match="M < N"):
        P(8, 8, 1)
    with pytest.raises(ParameterError, match="K-bound"):
        P(10, 4, 5)
    with pytest.raises(DimensionError):
        ProlateParams((8, 8), (4,), (1, 1))
    assert P(8, 8, 1, identity_time_limit=True).m == (8,)


def test_params_derived():
    p = P(10, 4, 2)
    assert p.w == (0.25,)
    assert p.mw == (1.0,)
    assert p.tbw_product == 2.0
    q = ProlateParams((10, 8), (4, 3), (2, 1))
    assert q.d == 2 and q.size == 12 and not q.is_isotropic
    assert q.tbw_product == pytest.approx(2.0 * 3 * 3 / 8)


def test_kernel_table_dc():
    assert kernel_table(P(10, 4, 2)).values[0] == 0.5


def test_kernel_table_lag2():
    assert kernel_table(P(8, 4, 1)).values[2] == pytest.approx(0.125, abs=1e-15)


def test_kernel_table_even():
    p = P(16, 6, 3)
    a = prolate_matrix_1d(p).matrix
    assert a[0, 5] == a[5, 0] == kernel_table(p).values[5]


def test_trace_1d():
    assert prolate_matrix_1d(P(10, 4, 2)).trace == pytest.approx(2.0, abs=1e-14)


def test_entry_0_2():
    assert prolate_matrix_1d(P(8, 3, 1)).matrix[0, 2] == pytest.approx(0.125, abs=1e-15)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(3, 200), data=st.data())
def test_symmetric_toeplitz_exact(n, data):
    m = data.draw(st.integers(1, n - 1))
    k = data.draw(st.integers(0, (n - 2) // 2))
    a = prolate_matrix_1d(P(n, m, k)).matrix
    assert np.array_equal(a, a.T)
    assert np.array_equal(a[1:, 1:], a[:-1, :-1])
    assert abs(np.trace(a) - m * (2 * k + 1) / n) <= 1e-9


def test_matches_projection_oracle():
    for n, m, k in [(10, 4, 2), (16, 9, 3), (33, 20, 10), (64, 63, 31)]:
        p = P(n, m, k)
        assert np.max(np.abs(prolate_matrix_1d(p).matrix - prolate_via_projections(p))) <= 1e-12


def test_md_trace():
    a = prolate_matrix_md(P(10, 4, 2, d=2))
    assert np.trace(a) == pytest.approx(4.0, abs=1e-13)


def test_md_entry():
    a = prolate_matrix_md(P(8, 3, 1, d=2))
    # row (0,0) -> 0, column (2,2) -> 2*3 + 2 in row-major order
    assert a[0, 8] == pytest.approx(0.125**2, abs=1e-15)


def test_md_reduces_to_1d():
    p = P(12, 5, 2)
    np.testing.assert_array_equal(prolate_matrix_md(p), prolate_matrix_1d(p).matrix)


def test_md_anisotropic_matches_oracle():
    p = ProlateParams((8, 12), (5, 7), (1, 3))
    a = prolate_matrix_md(p)
    assert np.array_equal(a, a.T)
    assert np.max(np.abs(a - prolate_md_via_projections(p))) <= 1e-12


def test_md_cap():
    with pytest.raises(CapacityError, match="spectrum_md"):
        prolate_matrix_md(P(100, 70, 5, d=2))


@settings(max_examples=30, deadline=None)
@given(n=st.integers(3, 40), data=st.data())
def test_positive_semidefinite(n, data):
    m = data.draw(st.integers(1, n - 1))
    k = data.draw(st.integers(0, (n - 2) // 2))
    a = prolate_matrix_1d(P(n, m, k)).matrix
    x = np.random.default_rng(data.draw(st.integers(0, 2**31))).standard_normal(m)
    assert x @ a @ x >= -1e-10 * (x @ x)
