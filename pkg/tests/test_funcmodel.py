from __future__ import annotations

from fractions import Fraction
from math import prod

import pytest

from qfusion.funcmodel import (UnstableTruncation, chi, clebsch_gordan_filtration,
                               cyclic_span_dim, default_cap, divide_by_diagonal, fc_truncated,
                               free_hilbert_n2, gram_rank_n2, invariant_form, lower_op,
                               mt_character, pairing_n2, raise_op)
from qfusion.ideals import build_I0, ideal_at_point, quotient_char
from qfusion.poly import Poly
from qfusion.qkernel import Matrix, rank

PAIRS = [(a, b) for a in range(1, 4) for b in range(a, 4)]


def test_sl2_relations():
    for a in range(1, 6):
        E, F = raise_op(a), lower_op(a)
        H = Matrix([[2 * c - (a - 1) if r == c else 0 for c in range(a)] for r in range(a)], a)
        comm = E @ F
        diff = Matrix([[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(comm.rows, (F @ E).rows)], a)
        assert diff == H


def test_invariant_form_is_invariant():
    for a in range(1, 6):
        E, F = raise_op(a), lower_op(a)
        for X in (E, F):
            for c in range(a):
                for d in range(a):
                    lhs = sum(X[r, c] * invariant_form(a, r, d) for r in range(a))
                    rhs = sum(X[r, d] * invariant_form(a, c, r) for r in range(a))
                    assert lhs + rhs == 0


def test_clebsch_gordan_examples():
    f = clebsch_gordan_filtration(2, 2)
    assert f.dims() == [3, 1]
    (singlet,) = f.summands[1]
    assert singlet[1] == -singlet[2] != 0 and singlet[0] == singlet[3] == 0
    assert clebsch_gordan_filtration(1, 4).dims() == [4]
    assert clebsch_gordan_filtration(2, 3).dims() == [4, 2]


@pytest.mark.parametrize("a,b", [(2, 2), (2, 3), (3, 3), (3, 4), (1, 5)])
def test_summands_fill_the_product(a, b):
    f = clebsch_gordan_filtration(a, b)
    assert sum(f.dims()) == a * b
    assert rank(f.level(f.length - 1)) == a * b
    opp = clebsch_gordan_filtration(a, b, opposite=True)
    assert rank(opp.level(0)) == f.dims()[-1]


def test_fc_examples():
    assert fc_truncated((2, 2), 0).dim(0) == 3
    assert fc_truncated((2, 2), 1).dim(1) == 7
    fc = fc_truncated((3,), 3)
    assert [fc.dim(d) for d in range(4)] == [3, 3, 3, 3]
    with pytest.raises(ValueError):
        fc_truncated((1, 1, 1, 1), 1)


@pytest.mark.parametrize("A", PAIRS)
def test_two_factor_space_is_free(A):
    fc = fc_truncated(A, 5)
    assert [fc.dim(d) for d in range(6)] == [free_hilbert_n2(A, d) for d in range(6)]


def test_module_closed_under_multiplication():
    A = (2, 3)
    fc = fc_truncated(A, 3)
    for d in range(3):
        for P in fc.weights():
            block, up = fc.blocks[(d, P)], fc.blocks[(d + 1, P)]
            cols = {c: i for i, c in enumerate(up.columns())}
            for r in range(block.dim):
                for i in range(2):
                    v = [0] * len(cols)
                    for (m, c), x in block.element(r).items():
                        v[cols[(m[:i] + (m[i] + 1,) + m[i + 1:], c)]] = x
                    assert rank(list(up.basis.rows) + [v], len(cols)) == up.dim


def test_mt_examples():
    r = mt_character((2, 2), (0, 0))
    assert r.total == 4
    degree_dims = [sum(v for (P, d), v in r.table.items() if d == dd) for dd in range(2)]
    assert degree_dims == [3, 1]
    assert mt_character((2, 2), (1, -1)).total == 4
    for T in [(0, 0), (2, 2), (1, 5)]:
        assert mt_character((1, 1), T).total == 1


def test_unstable_cap_is_reported():
    with pytest.raises(UnstableTruncation):
        mt_character((3, 3), (0, 0), D=0)


@pytest.mark.parametrize("A", PAIRS)
def test_two_factor_quotients(A):
    target = prod(A)
    zero = mt_character(A, (0, 0))
    assert zero.total == target
    assert zero.table == quotient_char(build_I0(A))
    for T in [(1, -1), (3, 3), (Fraction(1, 2), 4)]:
        res = mt_character(A, T)
        assert res.total == target
        assert res.zdims() == quotient_char(ideal_at_point(A, T)).zdims()
    assert cyclic_span_dim(A, (1, -1)) == target


def test_three_factor_zero_point_table():
    A = (1, 2, 2)
    assert mt_character(A, (0, 0, 0)).table == quotient_char(build_I0(A))
    assert mt_character(A, (1, 2, 3)).total == 4


def test_pairing_examples():
    one = {((0, 0), (0, 0)): Fraction(1)}
    assert pairing_n2((1, 1), one, one) == Poly.one(2, "z")
    A = (2, 2)
    fc = fc_truncated(A, 1)
    hat = fc_truncated(A, 1, opposite=True)
    for f in fc.elements():
        for h in hat.elements():
            quotient = pairing_n2(A, f, h)
            diag = Poly(2, {(1, 0): 1, (0, 1): -1}, "z")
            assert quotient * diag == chi(A, f, h)


def test_divide_by_diagonal():
    diag = Poly(2, {(1, 0): 1, (0, 1): -1}, "z")
    p = Poly(2, {(2, 0): 3, (0, 1): 1}, "z")
    assert divide_by_diagonal(p * diag ** 2, 2) == p
    with pytest.raises(ArithmeticError):
        divide_by_diagonal(p, 1)


@pytest.mark.parametrize("A", PAIRS)
def test_gram_is_nondegenerate(A):
    for T in [(1, -1), (0, 0), (2, 2)]:
        assert gram_rank_n2(A, T) == prod(A)


def test_default_cap():
    assert default_cap((2, 2)) == 3
    assert default_cap((2, 2, 2)) == 7
