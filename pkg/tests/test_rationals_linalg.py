from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from doubleforms.rationals_linalg import (
    EchelonBasis, RatMatrix, as_rational, format_rational, nullspace_basis,
    parse_rational, rank, rref, sparse_nullspace, sparse_rank,
)

F = Fraction


def test_rref_example():
    R, piv = rref([[1, 1, 0], [0, 1, 1]])
    assert R.to_rows() == [[1, 0, -1], [0, 1, 1]]
    assert piv == (0, 1)


def test_rank_and_nullspace_example():
    M = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank(M) == 2
    ns = nullspace_basis(M)
    assert len(ns) == 1
    assert RatMatrix.from_rows(M).matvec(ns[0]) == [0, 0, 0]


def test_fraction_entries_stay_exact():
    R, _ = rref([[F(1, 3), F(2, 3)], [F(1, 2), F(1, 5)]])
    assert R.to_rows() == [[1, 0], [0, 1]]


def test_serialization():
    assert format_rational(F(-1, 2)) == "-1/2"
    assert format_rational(F(3)) == "3"
    assert parse_rational(" -1/2 ") == F(-1, 2)
    assert as_rational("4/6") == F(2, 3)
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)


def test_matrix_shape_errors():
    with pytest.raises(ValueError):
        RatMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(ValueError):
        RatMatrix.identity(2).matvec([1, 2, 3])


def test_echelon_basis_incremental():
    eb = EchelonBasis()
    assert eb.add({0: F(1), 1: F(1)})
    assert eb.add({1: F(1)})
    assert not eb.add({0: F(2), 1: F(5)})
    assert eb.contains({0: F(3)})
    assert len(eb.rows()) == 2


matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=1, max_size=5))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_nullity(M):
    cols = len(M[0])
    ns = nullspace_basis(M)
    assert rank(M) + len(ns) == cols
    A = RatMatrix.from_rows(M)
    for v in ns:
        assert all(x == 0 for x in A.matvec(v))
    assert rank(ns) == len(ns) if ns else True


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rref_idempotent_and_sparse_agrees(M):
    R, piv = rref(M)
    R2, piv2 = rref(R)
    assert R2 == R and piv2 == piv
    rows = RatMatrix.from_rows(M).sparse_rows()
    assert sparse_rank(rows) == rank(M)
    assert len(sparse_nullspace(rows, len(M[0]))) == len(M[0]) - rank(M)
