from fractions import Fraction
from math import prod

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form

from arithstar.exact_linalg import (
    IntMatrix,
    all_minors_gcds,
    det,
    det_cofactor,
    minors_gcd,
    rational_sum,
    snf,
)


def small_matrices(max_dim=4, bound=9):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            )
        )
    )


def square_matrices(max_dim=5, bound=20):
    return st.integers(1, max_dim).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=n, max_size=n
        )
    )


def sympy_diag(rows):
    m = smith_normal_form(Matrix(rows))
    k = min(m.shape)
    return tuple(abs(int(m[i, i])) for i in range(k))


def test_snf_known():
    m = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert snf(m).diagonal == (2, 6, 12)


def test_snf_zero_and_rank():
    res = snf(IntMatrix.from_rows([[0, 0], [0, 0]]))
    assert res.diagonal == (0, 0) and res.rank == 0
    res = snf(IntMatrix.from_rows([[1, 2], [2, 4]]))
    assert res.invariant_factors == (1,)


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_snf_matches_sympy(rows):
    res = snf(IntMatrix.from_rows(rows))
    assert res.diagonal == sympy_diag(rows)


@settings(max_examples=100, deadline=None)
@given(small_matrices())
def test_snf_divisibility_chain(rows):
    f = snf(IntMatrix.from_rows(rows)).invariant_factors
    assert all(a > 0 for a in f)
    assert all(b % a == 0 for a, b in zip(f, f[1:]))


@settings(max_examples=150, deadline=None)
@given(square_matrices())
def test_determinants_agree(rows):
    m = IntMatrix.from_rows(rows)
    expected = int(Matrix(rows).det())
    assert det(m) == expected
    assert det_cofactor(m) == expected


@settings(max_examples=60, deadline=None)
@given(small_matrices(max_dim=4))
def test_minors_gcds_are_partial_products(rows):
    m = IntMatrix.from_rows(rows)
    d = all_minors_gcds(m)
    diag = snf(m).diagonal
    assert d[0] == 1
    for k in range(1, len(d)):
        assert d[k] == prod(diag[:k])


def test_minors_gcd_range():
    m = IntMatrix.identity(3)
    assert minors_gcd(m, 0) == 1
    assert minors_gcd(m, 3) == 1
    with pytest.raises(ValueError):
        minors_gcd(m, 4)


def test_matrix_basics():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    b = IntMatrix.identity(2)
    assert (a @ b) == a
    assert a.matvec([1, 1]) == (3, 7)
    s = a.direct_sum(IntMatrix.diagonal([5]))
    assert s.to_rows() == [[1, 2, 0], [3, 4, 0], [0, 0, 5]]
    assert a.submatrix([1], [0, 1]).to_rows() == [[3, 4]]


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])


def test_rational_sum_exact():
    assert rational_sum(Fraction(1, x) for x in (2, 3, 6)) == 1
    assert rational_sum(Fraction(1, x) for x in (2, 3, 5)) == Fraction(31, 30)
