from __future__ import annotations

from itertools import combinations_with_replacement
from math import prod

import pytest

from qfusion.dualmodel import (box_partitions, dual_dimension_at_T, dual_dimension_limit,
                               dual_table_limit, dual_zdims_at_T, merge_expand,
                               monomial_symmetric)
from qfusion.ideals import gens_JA_limit, quotient_char
from qfusion.poly import Poly
from qfusion.qchar import char_recurrence


def multisets(max_sum):
    for n in range(1, max_sum + 1):
        for A in combinations_with_replacement(range(1, max_sum + 1), n):
            if sum(A) <= max_sum:
                yield A


def test_box_partitions():
    assert box_partitions(2, 1) == ((1, 1), (1, 0), (0, 0))
    assert box_partitions(3, 2, 3) == ((2, 1, 0), (1, 1, 1))
    assert box_partitions(0, 3) == ((),)


def test_merge_expand_examples():
    z = lambda i: Poly.var(2, i, "z")
    assert merge_expand(z(0) + z(1), 2) == Poly(1, {(1,): 2}, "z")
    assert merge_expand(z(0) * z(1), 2) == Poly(1, {(2,): 1}, "z")
    assert merge_expand(monomial_symmetric((1, 0)), 1) == Poly(2, {(1, 0): 1, (0, 1): 1}, "z")
    with pytest.raises(ValueError):
        merge_expand(z(0), 3)


def test_limit_examples():
    assert all(dual_dimension_limit((1, 1), 1, s) == 0 for s in range(3))
    assert [dual_dimension_limit((2, 2), 1, s) for s in range(2)] == [1, 1]
    for A in [(1,), (2, 3), (1, 1, 4)]:
        assert dual_dimension_limit(A, 0, 0) == 1


def test_at_point_examples():
    assert dual_dimension_at_T((1, 1), (0, 1), 1) == 0
    assert sum(dual_dimension_at_T((2, 2), (0, 1), k) for k in range(3)) == 4
    with pytest.raises(ValueError):
        dual_dimension_at_T((2, 2), (1, 1), 1)


@pytest.mark.parametrize("A", list(multisets(7)))
def test_three_routes_agree(A):
    dual = dual_table_limit(A)
    assert dual == char_recurrence(A) == quotient_char(gens_JA_limit(A))


@pytest.mark.parametrize("A", [(2, 2), (1, 2, 3), (3, 3), (2, 2, 2), (1, 1, 4)])
def test_z_graded_dims_match_limit(A):
    for T in [tuple(range(1, len(A) + 1)), tuple((-1) ** i * (i + 2) for i in range(len(A)))]:
        at = dual_zdims_at_T(A, T)
        assert at == dual_table_limit(A).zdims()
        assert sum(at) == prod(A)


def test_support_stays_in_range():
    A = (2, 3, 1)
    n = len(A)
    for k in range(5):
        assert dual_dimension_limit(A, k, k * (n - 1) + 1) == 0
