"""The fusion product as a filtered cyclic module over C[e_0, ..., e_{n-1}].

The module is ⊗ C[y_i]/(y_i^{a_i}) with e_j acting by multiplication with
sum_i z_i^j y_i and cyclic vector u = 1.  F_s is spanned by the images of
monomials of q-degree <= s; the associated graded gives a bigraded character.
Nothing here goes through ideal generators, so comparing with the quotient
ring of I(0) is an independent check.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from operator import mul
from typing import Sequence

from .ideals import build_I0, ideal_component, quotient_char
from .poly import monomial_basis
from .qchar import CharTable
from .qkernel import Matrix, left_kernel, rank, rat, rref

PRESETS = ("integers", "symmetric", "harmonic")


def z_preset(name: str, n: int) -> tuple[Fraction, ...]:
    """Named families of pairwise distinct rational points."""
    if name == "integers":
        return tuple(Fraction(i) for i in range(1, n + 1))
    if name == "symmetric":
        return tuple(Fraction((i // 2 + 1) * (-1) ** i) for i in range(n))
    if name == "harmonic":
        return tuple(Fraction(1, i) for i in range(1, n + 1))
    raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")


def tensor_basis(A: Sequence[int]) -> list[tuple[int, ...]]:
    """Exponent vectors c with 0 <= c_i < a_i, ordered by total degree then lex."""
    out = [()]
    for a in A:
        out = [c + (x,) for c in out for x in range(a)]
    return sorted(out, key=lambda c: (sum(c), c))


def _check_points(A, Z):
    Z = tuple(rat(z) for z in Z)
    if len(Z) != len(A):
        raise ValueError("A and Z must have equal length")
    if len(set(Z)) != len(Z):
        raise ValueError("points of Z must be pairwise distinct")
    if any(a < 1 for a in A):
        raise ValueError("entries of A must be positive")
    return Z


def evaluation_operators(A: Sequence[int], Z: Sequence) -> list[Matrix]:
    """Matrices of multiplication by sum_i z_i^j y_i, j = 0..n-1, on :func:`tensor_basis`.

    Column convention: ``op.apply(v)`` maps a coordinate vector to its image.
    """
    A = tuple(A)
    Z = _check_points(A, Z)
    basis = tensor_basis(A)
    index = {c: i for i, c in enumerate(basis)}
    N = len(basis)
    ops = []
    for j in range(len(A)):
        rows = [[Fraction(0)] * N for _ in range(N)]
        for col, c in enumerate(basis):
            for i, z in enumerate(Z):
                if c[i] + 1 < A[i]:
                    d = c[:i] + (c[i] + 1,) + c[i + 1:]
                    rows[index[d]][col] += z ** j
        ops.append(Matrix(rows, N))
    return ops


@dataclass
class FusionModule:
    """Images of all e-monomials on u, organised by bidegree."""

    A: tuple[int, ...]
    Z: tuple[Fraction, ...]
    basis: list = field(default_factory=list)
    images: dict = field(default_factory=dict)  # (k, s) -> list of vectors, monomial_basis order

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def top_zdeg(self) -> int:
        return sum(a - 1 for a in self.A)

    def level(self, k: int, s: int) -> list:
        """Spanning vectors of F_s in y-degree k."""
        return [v for t in range(min(s, k * (self.n - 1)) + 1)
                for v in self.images.get((k, t), ())]


def build_fusion(A: Sequence[int], Z: Sequence) -> FusionModule:
    A = tuple(A)
    ops = evaluation_operators(A, Z)
    mod = FusionModule(A, _check_points(A, Z), tensor_basis(A))
    n = len(A)
    u = tuple(Fraction(int(i == 0)) for i in range(len(mod.basis)))
    vec = {(0,) * n: u}
    for k in range(mod.top_zdeg + 2):
        for s in range(k * max(n - 1, 0) + 1):
            out = []
            for e in monomial_basis(n, (k, s)):
                if e not in vec:
                    j = next(i for i, x in enumerate(e) if x)
                    prev = e[:j] + (e[j] - 1,) + e[j + 1:]
                    vec[e] = ops[j].apply(vec[prev])
                out.append(vec[e])
            mod.images[(k, s)] = out
    return mod


def _rank(vectors: list, ncols: int) -> int:
    return rank(vectors, ncols) if vectors else 0


def fusion_character(A: Sequence[int], Z: Sequence) -> CharTable:
    """dim F_s - dim F_{s-1} in each y-degree k."""
    mod = build_fusion(A, Z)
    N = len(mod.basis)
    entries = {}
    for k in range(mod.top_zdeg + 1):
        prev = 0
        for s in range(k * max(mod.n - 1, 0) + 1):
            r = _rank(mod.level(k, s), N)
            if r > prev:
                entries[(k, s)] = r - prev
            prev = r
    return CharTable(entries)


def graded_annihilator(mod: FusionModule, k: int, s: int) -> Matrix:
    """Reduced basis of {c : sum_m c_m m·u ∈ F_{s-1}} over monomial_basis(n, (k, s))."""
    imgs = mod.images.get((k, s), [])
    width = len(imgs)
    if not width:
        return Matrix((), 0)
    N = len(mod.basis)
    below = mod.level(k, s - 1) if s > 0 else []
    big = Matrix(list(imgs) + list(below), N)
    deps = left_kernel(big)
    rows = [r[:width] for r in deps.rows if any(r[:width])]
    return rref(Matrix(rows, width))[0] if rows else Matrix((), width)


@dataclass
class FusionComparison:
    ok: bool
    character: CharTable
    expected: CharTable
    mismatched_bidegrees: list

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "character": self.character.to_json(),
                "expected": self.expected.to_json(),
                "mismatched_bidegrees": [list(d) for d in self.mismatched_bidegrees]}


def verify_thm31(A: Sequence[int], Z: Sequence) -> tuple[bool, FusionComparison]:
    """Compare the fusion module at Z with the quotient by I(0).

    Checks the bigraded characters and, per bidegree, that the annihilator of
    u in the associated graded is exactly the component of I(0).
    """
    A = tuple(A)
    mod = build_fusion(A, Z)
    ch = fusion_character(A, Z)
    spec = build_I0(A)
    expected_ch = quotient_char(spec)
    bad = []
    n = len(A)
    for k in range(mod.top_zdeg + 2):
        for s in range(k * max(n - 1, 0) + 1):
            comp = ideal_component(spec, (k, s))
            if graded_annihilator(mod, k, s) != comp.matrix and comp.basis:
                bad.append((k, s))
    ok = not bad and ch == expected_ch
    return ok, FusionComparison(ok, ch, expected_ch, bad)


def module_dimension(A: Sequence[int]) -> int:
    return reduce(mul, A, 1)
