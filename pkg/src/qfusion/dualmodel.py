"""Graded duals of the quotients as spaces of symmetric polynomials.

A functional on the z-degree-k part of C[e_0..e_{n-1}]/J is encoded as the
symmetric polynomial sum_i theta(e_{i_1}...e_{i_k}) z_1^{i_1}...z_k^{i_k}.
Dimensions are computed in the basis of monomial symmetric polynomials m_lambda
with lambda inside the k x (n-1) box, as kernels of the linear conditions on
the diagonals.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .poly import Poly
from .qchar import CharTable
from .qkernel import Matrix, rank, rat


@lru_cache(maxsize=None)
def box_partitions(k: int, maxpart: int, s: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Weakly decreasing k-tuples with entries in [0, maxpart] (summing to s if given)."""
    out = []

    def rec(prefix, left, cap):
        if len(prefix) == k:
            if s is None or left == 0:
                out.append(tuple(prefix))
            return
        top = cap if s is None else min(cap, left)
        for x in range(top, -1, -1):
            rec(prefix + [x], None if s is None else left - x, x)

    if maxpart < 0:
        return ((),) if k == 0 and not s else ()
    rec([], s, maxpart)
    return tuple(out)


@lru_cache(maxsize=None)
def _orbit(lam: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(set(permutations(lam)), reverse=True))


def monomial_symmetric(lam: Sequence[int]) -> Poly:
    lam = tuple(lam)
    return Poly(len(lam), ((e, 1) for e in _orbit(lam)), symbol="z")


def merge_expand(f: Poly, i: int) -> Poly:
    """Set the first i variables of f equal to one new variable z.

    The result lives in 1 + (k - i) variables: z first, then the spectators.
    """
    k = f.nvars
    if not 0 <= i <= k:
        raise ValueError("merge count out of range")
    if i == 0:
        return Poly(k + 1, ((((0,) + e), c) for e, c in f.terms.items()), symbol="z")
    terms: dict = {}
    for e, c in f.terms.items():
        key = (sum(e[:i]),) + tuple(e[i:])
        terms[key] = terms.get(key, 0) + c
    return Poly(1 + k - i, terms, symbol="z")


def _merged_orbit(lam: tuple[int, ...], i: int) -> dict:
    out: dict = {}
    for e in _orbit(lam):
        key = (sum(e[:i]),) + e[i:]
        out[key] = out.get(key, 0) + 1
    return out


def dual_dimension_limit(A: Sequence[int], k: int, s: int) -> int:
    """Dimension of the degree-s symmetric polynomials in k variables meeting
    the divisibility conditions f(z,..,z, z_{i+1},..) ÷ z^{sum_p (i+1-a_p)_+}."""
    A = tuple(A)
    n = len(A)
    if k == 0:
        return 1 if s == 0 else 0
    basis = box_partitions(k, n - 1, s)
    if not basis:
        return 0
    rows: dict = {}
    for col, lam in enumerate(basis):
        for i in range(1, k + 1):
            d = sum(max(i + 1 - a, 0) for a in A)
            if d == 0:
                continue
            for key, cnt in _merged_orbit(lam, i).items():
                if key[0] < d:
                    rows.setdefault((i, key), {})[col] = cnt
    mat = [[r.get(c, 0) for c in range(len(basis))] for _, r in sorted(rows.items())]
    return len(basis) - (rank(mat, len(basis)) if mat else 0)


def dual_table_limit(A: Sequence[int]) -> CharTable:
    """All (k, s) dual dimensions; k runs until a z-degree with nothing left."""
    n = len(A)
    out = {}
    k = 0
    while True:
        alive = False
        for s in range(k * (n - 1) + 1):
            d = dual_dimension_limit(A, k, s)
            if d:
                out[(k, s)] = d
                alive = True
        if not alive:
            break
        k += 1
    return CharTable(out)


def dual_dimension_at_T(A: Sequence[int], T: Sequence, k: int) -> int:
    """Dimension of symmetric polynomials in k variables, degree < n in each,
    with f(t_j, .., t_j (a_j times), z_{a_j+1}, ..) = 0 whenever a_j <= k."""
    A = tuple(A)
    T = tuple(rat(t) for t in T)
    if len(set(T)) != len(T):
        raise ValueError("points of T must be pairwise distinct")
    n = len(A)
    if k == 0:
        return 1
    basis = box_partitions(k, n - 1)
    rows: dict = {}
    for col, lam in enumerate(basis):
        for j, (a, t) in enumerate(zip(A, T)):
            if a > k:
                continue
            powers = [t ** x for x in range(a * (n - 1) + 1)]
            acc: dict = {}
            for e in _orbit(lam):
                key = e[a:]
                acc[key] = acc.get(key, 0) + powers[sum(e[:a])]
            for key, v in acc.items():
                if v:
                    rows.setdefault((j, key), {})[col] = v
    mat = [[r.get(c, Fraction(0)) for c in range(len(basis))] for _, r in sorted(rows.items())]
    return len(basis) - (rank(Matrix(mat, len(basis))) if mat else 0)


def dual_zdims_at_T(A: Sequence[int], T: Sequence) -> list[int]:
    out = []
    k = 0
    while True:
        d = dual_dimension_at_T(A, T, k)
        if not d:
            return out
        out.append(d)
        k += 1
