from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import prod

import pytest

from qfusion.ideals import (IdealSpec, build_I0, coefficient_ideal_mismatches,
                            degeneration_mismatches, flow_mismatches, gens_IZ, gens_JA_limit,
                            gens_JA_T, gens_Jk_window, ideal_at_point, ideal_component,
                            limit_mismatches, low_ideal, opp, quotient_char, rho_check,
                            same_components, shift_ideal, st_flow, up_ideal, z_component)
from qfusion.poly import Poly, bidegree, coefficient_vector, monomial_basis, parse, widen
from qfusion.qchar import CharTable, char_recurrence
from qfusion.qkernel import in_span


def strs(spec, zmax=None):
    return sorted(str(g) for g in spec.generators
                  if zmax is None or sum(next(iter(g.terms))) <= zmax)


def small_multisets(max_sum, max_len=None):
    top = max_sum if max_len is None else max_len
    for n in range(1, top + 1):
        for A in combinations_with_replacement(range(1, max_sum + 1), n):
            if sum(A) <= max_sum:
                yield A


def test_ja_t_examples():
    assert strs(gens_JA_T((1, 1), (0, 1))) == ["1 * e_0", "1 * e_0 + 1 * e_1"]
    assert strs(gens_JA_T((2,), (0,))) == ["1 * e_0^2"]
    got = gens_JA_T((2, 2), (1, -1)).generators
    e0, e1 = Poly.var(2, 0), Poly.var(2, 1)
    assert set(got) == {(e0 + e1) ** 2, (e0 - e1) ** 2}


def test_ja_limit_examples():
    assert strs(gens_JA_limit((1,))) == ["1 * e_0"]
    spec = gens_JA_limit((1, 2))
    assert strs(spec, 2) == sorted(["1 * e_0", "1 * e_0^2", "2 * e_0 * e_1", "1 * e_1^2"])
    # higher powers add nothing: the quotient already vanishes from z-degree 2 on
    trimmed = IdealSpec(2, tuple(g for g in spec.generators if sum(next(iter(g.terms))) <= 2), "t")
    assert quotient_char(trimmed) == quotient_char(spec)
    gens = gens_JA_limit((2, 2)).generators
    by_zdeg = {}
    for g in gens:
        k, s = bidegree(next(iter(g.terms)))
        by_zdeg.setdefault(k, []).append(s)
    assert 1 not in by_zdeg
    assert by_zdeg[2] == [0, 1] and by_zdeg[3] == [0, 1, 2, 3]


def test_jk_window_examples():
    assert strs(gens_Jk_window(2, 3, 2)) == sorted(
        ["1 * e_0^2", "2 * e_0 * e_1", "2 * e_0 * e_2 + 1 * e_1^2"])
    assert strs(gens_Jk_window(3, 2, 0)) == ["1 * e_0^3"]
    assert quotient_char(gens_Jk_window(1, 5, 4), kmax=3) == CharTable.one()
    with pytest.raises(ValueError):
        gens_Jk_window(2, 2, 2)


def test_iz_examples():
    assert quotient_char(gens_IZ((1, 1), (3, 7))).total() == 1
    assert quotient_char(gens_IZ((2, 2), (1, -1))).total() == 4
    iz = quotient_char(gens_IZ((1, 2), (0, 1)))
    assert iz.zdims() == [1, 1]
    with pytest.raises(ValueError):
        gens_IZ((1, 2), (1, 1))


def test_component_examples():
    c = ideal_component(gens_JA_limit((1, 2)), (1, 0))
    assert c.dim == 1 and c.basis == ((1, 0),)
    for s in range(2):
        assert ideal_component(gens_JA_limit((2, 2)), (1, s)).dim == 0
    assert ideal_component(gens_JA_limit((3, 1)), (0, 0)).dim == 0
    with pytest.raises(ValueError):
        ideal_component(gens_JA_T((2, 2), (1, -1)), (2, 0))


def test_windowed_spec_refuses_high_qdegree():
    with pytest.raises(ValueError):
        ideal_component(gens_Jk_window(2, 4, 3), (2, 4))


def test_quotient_examples():
    assert quotient_char(gens_JA_limit((2, 2))) == char_recurrence((2, 2))
    for k in (1, 2, 3):
        for n in (1, 2, 3):
            assert quotient_char(gens_JA_limit((k,) * n)).total() == k ** n


def test_z_graded_quotient_for_non_bihomogeneous():
    t = quotient_char(gens_JA_T((2, 2), (1, -1)))
    assert not t.qgraded and t.zdims() == [1, 2, 1]


def test_opp_examples():
    spec = gens_JA_limit((1, 2))
    flipped = opp(spec)
    assert "1 * e_1" in strs(flipped)
    assert strs(opp(flipped)) == strs(spec)
    assert quotient_char(flipped) == quotient_char(spec).mirrored(2)


def test_build_i0_examples():
    spec = build_I0((1, 2))
    assert strs(spec, 2) == sorted(["1 * e_1", "1 * e_1^2", "2 * e_0 * e_1", "1 * e_0^2"])
    q = quotient_char(spec)
    assert q == CharTable({(0, 0): 1, (1, 0): 1}) and q.zdims() == [1, 1]
    assert quotient_char(build_I0((2, 2))) == char_recurrence((2, 2)).mirrored(2)


@pytest.mark.parametrize("A", [(1, 2), (2, 2), (1, 1, 2), (3, 2)])
def test_shift_examples(A):
    base = build_I0(A)
    k = sum(a - 1 for a in A) + 1
    assert shift_ideal(base, 0) is base
    for c in (1, -2, Fraction(1, 3)):
        moved = shift_ideal(base, c)
        assert quotient_char(moved).total() == prod(A)
        assert not same_components(shift_ideal(moved, -c), base, k)


def test_ideal_at_point_distinct_agrees_with_iz():
    for A, Z in [((2, 2), (1, -1)), ((1, 2, 3), (0, 1, 2)), ((3, 1), (5, Fraction(1, 2)))]:
        k = sum(a - 1 for a in A) + 1
        assert not same_components(ideal_at_point(A, Z), gens_IZ(A, Z), k)


def test_ideal_at_point_all_equal_is_a_shift():
    for A, c in [((2, 2), 3), ((1, 2, 2), -1), ((3, 2), Fraction(2, 5))]:
        k = sum(a - 1 for a in A) + 1
        at = ideal_at_point(A, (c,) * len(A))
        assert not same_components(at, shift_ideal(build_I0(A), c), k)


def test_ideal_at_point_dimension():
    for A, Z in [((2, 2, 1), (1, 1, 2)), ((3, 2, 2), (0, 4, 0)), ((2, 3), (7, 7))]:
        assert quotient_char(ideal_at_point(A, Z)).total() == prod(A)


def test_up_ideal_examples():
    spec = gens_JA_limit((2, 2))
    for k, pieces in up_ideal(spec, 3).items():
        for s, gb in pieces.items():
            assert gb.matrix == ideal_component(spec, (k, s)).matrix
    assert not degeneration_mismatches((2, 2), (1, -1))
    iz = gens_IZ((2, 3), (1, 2))
    for k, pieces in up_ideal(iz, 4).items():
        assert sum(gb.dim for gb in pieces.values()) == z_component(iz, k).dim


def test_st_flow_examples():
    spec = gens_IZ((2, 2), (1, 2))
    assert not same_components(st_flow(spec, 1), spec, 3)
    left = st_flow(st_flow(spec, 2), Fraction(1, 3))
    assert not same_components(left, st_flow(spec, Fraction(2, 3)), 3)
    assert not flow_mismatches((2, 2), (1, 2), 2)
    with pytest.raises(ValueError):
        st_flow(spec, 0)


def test_rho_examples():
    assert rho_check((1, 2), 0) == 0
    assert rho_check((1, 2), 1) == 1
    assert rho_check((1, 2, 5), 3) == 8
    with pytest.raises(ValueError):
        rho_check((1, 1), 0)


def test_rho_other_sign_convention_differs_by_parity():
    # with 1 / prod (z_b - z_a) the top value becomes (-1)^(n-1)
    for n in range(1, 6):
        Z = tuple(range(1, n + 1))
        assert (-1) ** (n - 1) * rho_check(Z, n - 1) == (-1) ** (n - 1)


def test_low_ideal_recovers_ja_limit():
    for A, T in [((2, 2), (1, -1)), ((1, 2, 3), (1, 2, 3)), ((3, 2), (2, -5))]:
        assert not limit_mismatches(A, T)
    pieces = low_ideal(gens_JA_T((2, 2), (1, -1)), 2)
    assert pieces[2][0].dim == 1


def test_coefficient_ideal_restricts_to_ja():
    assert not coefficient_ideal_mismatches(2, 3, 4)


def test_ideal_spec_validation():
    with pytest.raises(ValueError):
        IdealSpec(2, (Poly.var(3, 0),), "bad")
    with pytest.raises(ValueError):
        IdealSpec(2, (Poly.zero(2),), "bad")


@pytest.mark.parametrize("A", [A for A in small_multisets(6, 3)])
def test_ja_embeds_when_a_factor_is_added(A):
    a_new = max(A)
    small = gens_JA_limit(A)
    big = gens_JA_limit(tuple(sorted(A + (a_new,))))
    m = len(A) + 1
    for g in small.generators:
        d = bidegree(next(iter(g.terms)))
        comp = ideal_component(big, d)
        vec = coefficient_vector(widen(g, m), monomial_basis(m, d))
        assert in_span(comp.matrix, vec) if comp.dim else not any(vec)


@pytest.mark.parametrize("A", [A for A in small_multisets(7)])
def test_quotient_matches_recurrence_and_mirror(A):
    ja = quotient_char(gens_JA_limit(A))
    assert ja == char_recurrence(A)
    assert quotient_char(build_I0(A)) == ja.mirrored(len(A))


def test_generator_dump_parses_back():
    spec = gens_JA_limit((2, 3))
    lines = spec.dump().splitlines()
    assert [parse(x, 2) for x in lines] == list(spec.generators)
