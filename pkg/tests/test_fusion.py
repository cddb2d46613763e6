from __future__ import annotations

from fractions import Fraction
from math import prod

import pytest

from qfusion.fusion import (PRESETS, build_fusion, evaluation_operators, fusion_character,
                            graded_annihilator, tensor_basis, verify_thm31, z_preset)
from qfusion.ideals import build_I0, quotient_char
from qfusion.qchar import CharTable
from qfusion.qkernel import Matrix, rank


def test_presets():
    assert z_preset("integers", 3) == (1, 2, 3)
    assert z_preset("symmetric", 4) == (1, -1, 2, -2)
    assert z_preset("harmonic", 3) == (1, Fraction(1, 2), Fraction(1, 3))
    with pytest.raises(ValueError):
        z_preset("random", 2)


def test_operator_examples():
    (e0,) = evaluation_operators((2,), (5,))
    assert e0.apply((1, 0)) == (0, 1) and e0.apply((0, 1)) == (0, 0)
    for op in evaluation_operators((1, 1), (2, 3)):
        assert op == Matrix.zero(1, 1)
    ops = evaluation_operators((2, 3, 2), (1, -2, Fraction(1, 2)))
    for a in ops:
        for b in ops:
            assert a @ b == b @ a
    with pytest.raises(ValueError):
        evaluation_operators((2, 2), (1, 1))


def test_operators_raise_degree_by_one():
    A = (2, 3)
    basis = tensor_basis(A)
    for op in evaluation_operators(A, (1, 4)):
        for col, c in enumerate(basis):
            for row, d in enumerate(basis):
                if op[row, col]:
                    assert sum(d) == sum(c) + 1


def test_character_examples():
    for z in (0, 5, Fraction(-2, 3)):
        assert fusion_character((2,), (z,)) == CharTable({(0, 0): 1, (1, 0): 1})
    assert fusion_character((2, 2), (1, -1)) == quotient_char(build_I0((2, 2)))
    assert fusion_character((1, 1, 1, 1), (1, 2, 3, 4)) == CharTable.one()


@pytest.mark.parametrize("A,Z", [((2, 2), (1, -1)), ((1, 2), (0, 1)), ((3, 2, 2), (1, 2, 3))])
def test_verify_examples(A, Z):
    ok, report = verify_thm31(A, Z)
    assert ok, report.to_json()


@pytest.mark.parametrize("A", [(3, 2), (2, 2, 2), (1, 2, 4), (4, 1, 1)])
def test_z_independence_and_mass(A):
    tables = {fusion_character(A, z_preset(p, len(A))) for p in PRESETS}
    assert len(tables) == 1
    assert next(iter(tables)).total() == prod(A)


def test_filtration_exhausts_each_degree():
    A = (3, 2, 2)
    mod = build_fusion(A, (1, 2, 3))
    N = len(mod.basis)
    for k in range(mod.top_zdeg + 1):
        full = mod.level(k, k * (mod.n - 1))
        rk = rank(full, N)
        assert rk == sum(1 for c in mod.basis if sum(c) == k)


def test_annihilator_codim_is_character_entry():
    A = (2, 3)
    mod = build_fusion(A, (2, -1))
    ch = fusion_character(A, (2, -1))
    for k in range(4):
        for s in range(k + 1):
            ann = graded_annihilator(mod, k, s)
            assert ann.ncols - ann.nrows == ch[(k, s)]
