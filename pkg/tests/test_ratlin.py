from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from lcsnovikov.errors import DimensionMismatch
from lcsnovikov.ratlin import (Matrix, Quotient, Subspace, det, exact_at, image, inverse, kernel, quotient_map,
                               rank, rref, solve)

small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_rref_small_example():
    R, piv, r = rref(Matrix([[2, 4, 1], [1, 2, 0]]))
    assert r == 2 and piv == [0, 2] or tuple(piv) == (0, 2)
    assert R.rows[0] == (1, 2, 0)


def test_fractions_stay_exact():
    m = Matrix([[Fraction(1, 3), 1], [1, 3]])
    assert rank(m) == 1
    assert det(Matrix([[Fraction(1, 3), 0], [0, 3]])) == 1


def test_ragged_rows_rejected():
    with pytest.raises(DimensionMismatch):
        Matrix([[1, 2], [3]])


@given(matrices())
def test_rank_matches_sympy(rows):
    assert rank(Matrix(rows)) == sympy.Matrix(rows).rank()


@given(matrices())
def test_rank_nullity(rows):
    m = Matrix(rows)
    ker = kernel(m)
    assert ker.dim + rank(m) == m.ncols
    for v in ker.vectors():
        assert all(x == 0 for x in m.apply(v))


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_and_inverse(rows):
    m = Matrix(rows)
    d = det(m)
    assert d == sympy.Matrix(rows).det()
    if d:
        assert m @ inverse(m) == Matrix.identity(m.nrows)


@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_in_image(rows, coeffs):
    m = Matrix(rows)
    b = m.apply(coeffs[:m.ncols])
    x = solve(m, b)
    assert x is not None and m.apply(x) == tuple(b)


@given(st.lists(st.lists(small, min_size=4, max_size=4), max_size=4),
       st.lists(st.lists(small, min_size=4, max_size=4), max_size=4))
def test_intersection_dimension_formula(a, b):
    A, B = Subspace(4, a), Subspace(4, b)
    assert (A + B).dim + A.intersect(B).dim == A.dim + B.dim
    assert A.intersect(B).issubset(A) and A.intersect(B).issubset(B)


@given(st.lists(st.lists(small, min_size=4, max_size=4), max_size=4))
def test_subspace_canonical(vecs):
    # any spanning set gives the same stored basis
    S = Subspace(4, vecs)
    assert Subspace(4, list(reversed(vecs)) + [[0, 0, 0, 0]]) == S
    assert Subspace(4, S.vectors()) == S


@given(st.lists(st.lists(small, min_size=4, max_size=4), max_size=3), st.lists(small, min_size=4, max_size=4))
def test_quotient_representatives(mod_vecs, extra):
    mod = Subspace(4, mod_vecs)
    sub = mod + Subspace(4, [extra])
    Qt = Quotient(sub, mod)
    assert Qt.dim == sub.dim - mod.dim
    # representatives are independent modulo mod
    assert (mod + Subspace(4, Qt.representatives())).dim == sub.dim
    for v in mod.vectors():
        assert Qt.is_zero_class(v)


def test_quotient_map_and_exactness():
    # 0 -> Q -> Q^2 -> Q -> 0
    inc = Matrix([[1], [0]])
    proj = Matrix([[0, 1]])
    assert exact_at(inc, proj, 2)
    assert not exact_at(inc, Matrix([[1, 1]]), 2)
    src = Quotient(Subspace.full(2), Subspace(2, [[1, 0]]))
    tgt = Quotient(Subspace.full(1), Subspace(1))
    M = quotient_map(proj, src, tgt)
    assert rank(M) == 1


def test_image_is_column_space():
    assert image(Matrix([[1, 2], [2, 4]])).dim == 1
