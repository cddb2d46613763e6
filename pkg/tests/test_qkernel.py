from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qfusion.qkernel import (Matrix, in_span, inverse, kernel_basis, left_kernel, rank, rat,
                             reduced, rref, same_span, stack, subspace_intersection)

small = st.integers(-4, 4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    vals = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    den = draw(st.integers(1, 3))
    return Matrix([[Fraction(x, den) for x in row] for row in vals], c)


def test_rat_parses_literals():
    assert rat("3/4") == Fraction(3, 4)
    assert rat(-2) == Fraction(-2)
    assert rat(" -1/3 ") == Fraction(-1, 3)
    with pytest.raises(TypeError):
        rat(0.5)


def test_rref_proportional_rows():
    r, k, piv = rref(Matrix([[1, 2], [2, 4]]))
    assert (k, piv) == (1, [0])
    assert r.rows == ((1, 2),)


def test_rref_zero_and_identity():
    assert rref(Matrix([[0]]))[1] == 0
    eye = Matrix.identity(2)
    r, k, piv = rref(eye)
    assert r == eye and k == 2 and piv == [0, 1]


def test_rref_leading_ones_and_fractions():
    r, k, piv = rref(Matrix([[2, 4, 1], [1, 3, 0]]))
    assert k == 2 and piv == [0, 1]
    assert r.rows == ((1, 0, Fraction(3, 2)), (0, 1, Fraction(-1, 2)))


def test_kernel_examples():
    ker = kernel_basis(Matrix([[1, 1]]))
    assert ker.nrows == 1 and ker.rows[0][0] == -ker.rows[0][1] != 0
    assert kernel_basis(Matrix.identity(3)).nrows == 0
    m = Matrix([[1, 2, 3]])
    ker = kernel_basis(m)
    assert ker.nrows == 2 and rank(ker) == 2
    for v in ker.rows:
        assert m.apply(v) == (0,)


def test_subspace_intersection_examples():
    eye = Matrix.identity(2)
    assert subspace_intersection(eye, eye).nrows == 2
    assert subspace_intersection(Matrix([[1, 0]]), Matrix([[0, 1]])).nrows == 0
    got = subspace_intersection(eye, Matrix([[1, 1]]))
    assert got.rows == ((1, 1),)


def test_inverse_and_singular():
    m = Matrix([[2, 1], [1, 1]])
    assert m @ inverse(m) == Matrix.identity(2)
    with pytest.raises(ZeroDivisionError):
        inverse(Matrix([[1, 2], [2, 4]]))


def test_matrix_rejects_ragged_rows():
    with pytest.raises(ValueError):
        Matrix([[1, 2], [3]])


@given(matrices())
def test_rref_is_idempotent(m):
    r = reduced(m)
    assert reduced(r) == r if r.nrows else True


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).nrows == m.ncols


@given(matrices())
def test_kernel_vectors_are_annihilated(m):
    for v in kernel_basis(m).rows:
        assert not any(m.apply(v))


@given(matrices())
def test_left_kernel_annihilates_rows(m):
    for x in left_kernel(m).rows:
        combo = [sum((c * row[j] for c, row in zip(x, m.rows)), Fraction(0)) for j in range(m.ncols)]
        assert not any(combo)
    assert left_kernel(m).nrows == m.nrows - rank(m)


@given(matrices(max_cols=4), matrices(max_cols=4))
def test_intersection_dimension_formula(a, b):
    if a.ncols != b.ncols:
        return
    inter = subspace_intersection(a, b)
    assert inter.nrows == rank(a) + rank(b) - rank(stack(a, b))
    for v in inter.rows:
        assert in_span(a, v) and in_span(b, v)


@given(matrices())
def test_row_span_invariant_under_reduction(m):
    assert same_span(m, reduced(m)) if reduced(m).nrows else rank(m) == 0
    for row in m.rows:
        assert in_span(m, row)
