"""Ideal families in C[e_0, ..., e_{m-1}] and their quotients, degree by degree.

Nothing here uses Gröbner bases.  An ideal is an explicit generator list; its
component in a fixed (bi)degree is the row-reduced span of ``monomial * g``,
built recursively as ``gens_d + sum_j e_j * I_{d - deg e_j}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import Sequence

from .poly import (Poly, bidegree, coefficient_vector, from_vector, is_bihomogeneous,
                   is_z_homogeneous, monomial_basis, multinomial, zdeg_basis)
from .qchar import CharTable
from .qkernel import Matrix, inverse, left_kernel, rat, rref, subspace_intersection

ZDEG_SAFETY = 400


@dataclass(frozen=True, eq=False)
class IdealSpec:
    """Generators of an ideal plus the family they came from.

    ``qcap`` is set when the generator list is only complete in q-degrees
    <= qcap (windowed families); components above the cap are refused.
    """

    width: int
    generators: tuple[Poly, ...]
    family: str
    params: tuple = ()
    qcap: int | None = None
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        for g in self.generators:
            if g.nvars != self.width:
                raise ValueError("generator width differs from ambient width")
            if not g:
                raise ValueError("zero generator")

    @property
    def bihomogeneous(self) -> bool:
        key = "bihomogeneous"
        if key not in self._memo:
            self._memo[key] = all(is_bihomogeneous(g) for g in self.generators)
        return self._memo[key]

    @property
    def z_homogeneous(self) -> bool:
        return all(is_z_homogeneous(g) for g in self.generators)

    def describe(self) -> dict:
        return {"family": self.family, "width": self.width,
                **{k: v for k, v in self.params}}

    def _by_bidegree(self) -> dict:
        if "bydeg" not in self._memo:
            index: dict[tuple[int, int], list[Poly]] = {}
            for g in self.generators:
                index.setdefault(bidegree(next(iter(g.terms))), []).append(g)
            self._memo["bydeg"] = index
        return self._memo["bydeg"]

    def _by_zdeg(self) -> dict:
        if "byz" not in self._memo:
            index: dict[int, list[Poly]] = {}
            for g in self.generators:
                index.setdefault(sum(next(iter(g.terms))), []).append(g)
            self._memo["byz"] = index
        return self._memo["byz"]

    def dump(self) -> str:
        """One generator per line, in the canonical term order."""
        return "".join(f"{g}\n" for g in self.generators)


@dataclass(frozen=True)
class GradedBasis:
    """Reduced basis of an ideal component at bidegree (k, s)."""

    bidegree: tuple[int, int]
    basis: tuple
    matrix: Matrix

    @property
    def dim(self) -> int:
        return self.matrix.nrows

    @property
    def codim(self) -> int:
        return len(self.basis) - self.matrix.nrows

    def polys(self, width: int) -> list[Poly]:
        return [from_vector(r, self.basis, width) for r in self.matrix.rows]


@dataclass(frozen=True)
class ZGradedBasis:
    """Reduced basis of an ideal component at z-degree k (all q-degrees)."""

    zdeg: int
    basis: tuple
    matrix: Matrix

    @property
    def dim(self) -> int:
        return self.matrix.nrows

    @property
    def codim(self) -> int:
        return len(self.basis) - self.matrix.nrows


def _shift_index(small: Sequence, big: Sequence, j: int) -> list[int]:
    pos = {e: i for i, e in enumerate(big)}
    out = []
    for e in small:
        f = list(e)
        f[j] += 1
        out.append(pos[tuple(f)])
    return out


def _lift_rows(rows, index, size):
    out = []
    for r in rows:
        v = [0] * size
        for x, i in zip(r, index):
            if x:
                v[i] = x
        out.append(v)
    return out


# --- components ----------------------------------------------------------------------

def ideal_component(spec: IdealSpec, d: tuple[int, int]) -> GradedBasis:
    """Component of a bihomogeneous ideal at bidegree ``d``."""
    if not spec.bihomogeneous:
        raise ValueError("ideal_component needs bihomogeneous generators; use z_component")
    k, s = d
    if spec.qcap is not None and s > spec.qcap:
        raise ValueError(f"q-degree {s} exceeds the generator window {spec.qcap}")
    key = ("bi", k, s)
    if key in spec._memo:
        return spec._memo[key]
    m = spec.width
    basis = monomial_basis(m, (k, s))
    rows = [coefficient_vector(g, basis) for g in spec._by_bidegree().get((k, s), ())]
    if k > 0 and basis:
        for j in range(min(m - 1, s) + 1):
            lower = ideal_component(spec, (k - 1, s - j))
            if lower.dim:
                rows += _lift_rows(lower.matrix.rows, _shift_index(lower.basis, basis, j),
                                   len(basis))
    mat = rref(Matrix(rows, len(basis)))[0] if rows else Matrix((), len(basis))
    out = GradedBasis((k, s), basis, mat)
    spec._memo[key] = out
    return out


def z_component(spec: IdealSpec, k: int) -> ZGradedBasis:
    """Component of a z-homogeneous ideal at z-degree ``k``, over :func:`zdeg_basis`."""
    if spec.qcap is not None:
        raise ValueError("windowed generator lists have no complete z-components")
    key = ("z", k)
    if key in spec._memo:
        return spec._memo[key]
    if not spec.z_homogeneous:
        raise ValueError("generators are not z-homogeneous")
    m = spec.width
    basis = zdeg_basis(m, k)
    rows = [coefficient_vector(g, basis) for g in spec._by_zdeg().get(k, ())]
    if k > 0:
        lower = z_component(spec, k - 1)
        if lower.dim:
            for j in range(m):
                rows += _lift_rows(lower.matrix.rows, _shift_index(lower.basis, basis, j),
                                   len(basis))
    mat = rref(Matrix(rows, len(basis)))[0] if rows else Matrix((), len(basis))
    out = ZGradedBasis(k, basis, mat)
    spec._memo[key] = out
    return out


def quotient_char(spec: IdealSpec, kmax: int | None = None) -> CharTable:
    """Character of the quotient ring.

    Bigraded when the generators are bihomogeneous, otherwise a z-graded
    table (``qgraded=False``).  Without ``kmax`` the z-degrees are scanned
    until a z-degree where the quotient vanishes, after which it vanishes
    identically.  With ``kmax`` every z-degree up to it is scanned, which
    matters for windowed generator lists.
    """
    m = spec.width
    entries = {}
    top = kmax if kmax is not None else ZDEG_SAFETY
    for k in range(top + 1):
        alive = False
        if spec.bihomogeneous:
            smax = k * max(m - 1, 0)
            if spec.qcap is not None:
                smax = min(smax, spec.qcap)
            for s in range(smax + 1):
                comp = ideal_component(spec, (k, s))
                if comp.codim:
                    entries[(k, s)] = comp.codim
                    alive = True
        else:
            comp = z_component(spec, k)
            if comp.codim:
                entries[(k, 0)] = comp.codim
                alive = True
        if not alive and kmax is None:
            break
    else:
        if kmax is None:
            raise RuntimeError("quotient did not vanish within the z-degree safety bound")
    return CharTable(entries, qgraded=spec.bihomogeneous)


def quotient_zdims(spec: IdealSpec, kmax: int | None = None) -> list[int]:
    return quotient_char(spec, kmax).zdims()


def quotient_dim(spec: IdealSpec) -> int:
    return quotient_char(spec).total()


# --- generator families ------------------------------------------------------------------

def _linear(coeffs: Sequence, symbol: str = "e") -> Poly:
    n = len(coeffs)
    return Poly(n, ((tuple(int(i == j) for j in range(n)), c) for i, c in enumerate(coeffs)),
                symbol)


def _rats(xs) -> tuple[Fraction, ...]:
    return tuple(rat(x) for x in xs)


def _fmt(xs) -> list[str]:
    return [str(x) for x in xs]


def gens_JA_T(A: Sequence[int], T: Sequence) -> IdealSpec:
    """Powers (sum_i t^i e_i)^a, one per pair (a, t)."""
    A, T = tuple(A), _rats(T)
    if len(A) != len(T):
        raise ValueError("A and T must have equal length")
    n = len(A)
    gens = tuple(_linear([t ** i for i in range(n)]) ** a for a, t in zip(A, T))
    return IdealSpec(n, gens, "JA_T", (("A", list(A)), ("T", _fmt(T))))


def coefficient_generator(m: int, i: int, s: int) -> Poly:
    """Coefficient of z^s in (e_0 + e_1 z + ... + e_{m-1} z^{m-1})^i."""
    return Poly(m, ((e, multinomial(e)) for e in monomial_basis(m, (i, s))))


def divisibility_threshold(A: Sequence[int], i: int) -> int:
    return sum(max(i + 1 - a, 0) for a in A)


def gens_JA_limit(A: Sequence[int], qcap: int | None = None) -> IdealSpec:
    """Low coefficients of powers of e^{(n)}(z).

    For each i the coefficients of z^s, s below the divisibility threshold
    sum_p (i + 1 - a_p)_+, are generators.  i runs over 1..sum(A); the
    quotient is zero from z-degree sum(a_p - 1) + 1 on, so later i add
    nothing.
    """
    A = tuple(sorted(A))
    if any(a < 1 for a in A):
        raise ValueError("entries of A must be positive")
    n = len(A)
    gens = []
    for i in range(1, sum(A) + 1):
        top = min(divisibility_threshold(A, i), i * (n - 1) + 1)
        if qcap is not None:
            top = min(top, qcap + 1)
        for s in range(top):
            gens.append(coefficient_generator(n, i, s))
    return IdealSpec(n, tuple(gens), "JA", (("A", list(A)),), qcap)


def gens_Jk_window(k: int, m: int, smax: int) -> IdealSpec:
    """Coefficients of z^s, s <= smax, of e(z)^k restricted to e_0..e_{m-1}."""
    if m <= smax:
        raise ValueError("ambient width must exceed smax")
    gens = tuple(coefficient_generator(m, k, s) for s in range(smax + 1))
    return IdealSpec(m, gens, "Jk", (("k", k), ("smax", smax)), smax)


def _y_basis(A: Sequence[int], k: int) -> list[tuple[int, ...]]:
    out = []

    def rec(i, left, acc):
        if i == len(A):
            if left == 0:
                out.append(tuple(acc))
            return
        for c in range(min(A[i] - 1, left), -1, -1):
            rec(i + 1, left - c, acc + [c])

    rec(0, k, [])
    return out


def _times_linear(vec: dict, coeffs: Sequence[Fraction], A: Sequence[int]) -> dict:
    """Multiply an element of ⊗ C[y_i]/(y_i^{a_i}) by sum_i coeffs[i] y_i."""
    out: dict = {}
    for c, v in vec.items():
        for i, w in enumerate(coeffs):
            if w and c[i] + 1 < A[i]:
                d = c[:i] + (c[i] + 1,) + c[i + 1:]
                out[d] = out.get(d, 0) + v * w
    return {d: v for d, v in out.items() if v}


def evaluation_images(A: Sequence[int], Z: Sequence, k: int) -> tuple[tuple, list[dict]]:
    """Images in ⊗ C[y_i]/(y_i^{a_i}) of all z-degree-k monomials under e_j -> sum z_i^j y_i."""
    n = len(A)
    Z = _rats(Z)
    lin = [[z ** j for z in Z] for j in range(n)]
    basis = zdeg_basis(n, k)
    images = []
    cache = {(0,) * n: {(0,) * n: Fraction(1)}}
    for e in basis:
        images.append(_image(e, lin, A, cache))
    return basis, images


def _image(e, lin, A, cache):
    if e in cache:
        return cache[e]
    j = next(i for i, a in enumerate(e) if a)
    f = e[:j] + (e[j] - 1,) + e[j + 1:]
    out = _times_linear(_image(f, lin, A, cache), lin[j], A)
    cache[e] = out
    return out


def gens_IZ(A: Sequence[int], Z: Sequence) -> IdealSpec:
    """Kernel of C[e] -> ⊗ C[y_i]/(y_i^{a_i}), e_j -> sum_i z_i^j y_i, degree by degree."""
    A, Z = tuple(A), _rats(Z)
    if len(A) != len(Z):
        raise ValueError("A and Z must have equal length")
    if len(set(Z)) != len(Z):
        raise ValueError("points of Z must be pairwise distinct")
    n = len(A)
    gens = []
    for k in range(1, sum(a - 1 for a in A) + 2):
        basis, images = evaluation_images(A, Z, k)
        target = _y_basis(A, k)
        mat = Matrix([[img.get(c, 0) for c in target] for img in images], len(target))
        if not target:
            kern = [[int(i == j) for j in range(len(basis))] for i in range(len(basis))]
        else:
            kern = left_kernel(mat).rows
        gens.extend(from_vector(v, basis, n) for v in kern)
    return IdealSpec(n, tuple(gens), "IZ", (("A", list(A)), ("Z", _fmt(Z))))


# --- structural maps -----------------------------------------------------------------------

def _require_complete(spec: IdealSpec):
    if spec.qcap is not None:
        raise ValueError("operation needs a complete generator list")


def opp(spec: IdealSpec) -> IdealSpec:
    """Generators rewritten under e_i -> e_{m-1-i}."""
    _require_complete(spec)
    gens = tuple(Poly(spec.width, ((e[::-1], c) for e, c in g.terms.items()))
                 for g in spec.generators)
    return IdealSpec(spec.width, gens, f"opp({spec.family})", spec.params)


def build_I0(A: Sequence[int]) -> IdealSpec:
    base = opp(gens_JA_limit(A))
    return IdealSpec(base.width, base.generators, "I0", base.params)


def st_flow(spec: IdealSpec, t) -> IdealSpec:
    """Apply S_t: e_i -> t^i e_i to every generator."""
    t = rat(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    gens = tuple(g.map_coefficients(lambda e, c: c * t ** bidegree(e)[1])
                 for g in spec.generators)
    return IdealSpec(spec.width, gens, spec.family,
                     spec.params + (("flow", str(t)),), spec.qcap)


def shift_images(m: int, c) -> list[Poly]:
    """Images of e_i under t -> t + c: sum_j c^j C(i, j) e_{i-j}."""
    c = rat(c)
    return [Poly(m, ((tuple(int(r == i - j) for r in range(m)), c ** j * comb(i, j))
                     for j in range(i + 1))) for i in range(m)]


def shift_ideal(spec: IdealSpec, c) -> IdealSpec:
    """Transport generators by the inverse shift e_i -> sum_j (-c)^j C(i,j) e_{i-j}.

    Applied to I(0) this yields the ideal at the point (c, ..., c).
    """
    _require_complete(spec)
    c = rat(c)
    if c == 0:
        return spec
    images = shift_images(spec.width, -c)
    gens = tuple(g.substitute(images) for g in spec.generators)
    return IdealSpec(spec.width, gens, spec.family, spec.params + (("shift", str(c)),))


def _power_remainders(n: int, t: Fraction, alpha: int) -> list[list[Fraction]]:
    """Row i holds the coefficients of x^i mod (x - t)^alpha, degree < alpha."""
    # x = t + y: x^i = sum_r C(i, r) t^(i-r) y^r, keep r < alpha, then re-expand y = x - t
    rows = []
    for i in range(n):
        out = [Fraction(0)] * alpha
        for r in range(min(i, alpha - 1) + 1):
            w = comb(i, r) * t ** (i - r)
            for p in range(r + 1):
                out[p] += w * comb(r, p) * (-t) ** (r - p)
        rows.append(out)
    return rows


def ideal_at_point(A: Sequence[int], Z: Sequence) -> IdealSpec:
    """Ideal at an arbitrary point: tensor product of shifted I(0) blocks.

    Coordinates of Z with equal values form a block; the entries of A at the
    same positions go with that block.
    """
    A, Z = tuple(A), _rats(Z)
    if len(A) != len(Z):
        raise ValueError("A and Z must have equal length")
    n = len(A)
    groups: dict[Fraction, list[int]] = {}
    for pos, z in enumerate(Z):
        groups.setdefault(z, []).append(pos)
    local_gens = []
    blocks = []
    for t, positions in groups.items():
        alpha = len(positions)
        local = shift_ideal(build_I0([A[p] for p in positions]), t)
        blocks.append((t, alpha))
        local_gens.append(local.generators)
    M = [[] for _ in range(n)]  # e_i = sum_col M[i][col] x_col
    offset = 0
    offsets = []
    for t, alpha in blocks:
        rem = _power_remainders(n, t, alpha)
        for i in range(n):
            M[i].extend(rem[i])
        offsets.append(offset)
        offset += alpha
    Minv = inverse(Matrix(M, n))
    x_images = [Poly(n, ((tuple(int(r == i) for r in range(n)), Minv[col, i])
                         for i in range(n))) for col in range(n)]
    gens = []
    for (t, alpha), off, local in zip(blocks, offsets, local_gens):
        images = x_images[off:off + alpha]
        gens.extend(g.substitute(images) for g in local)
    return IdealSpec(n, tuple(gens), "I_at", (("A", list(A)), ("Z", _fmt(Z))))


# --- associated graded ideals ----------------------------------------------------------------

def _graded_pieces(comp: ZGradedBasis, m: int, top: bool) -> dict[int, GradedBasis]:
    k = comp.zdeg
    blocks = range(k * max(m - 1, 0) + 1)
    order = list(reversed(blocks)) if top else list(blocks)
    cols = []
    spans = {}
    for s in order:
        b = monomial_basis(m, (k, s))
        pos = {e: i for i, e in enumerate(comp.basis)}
        spans[s] = (len(cols), len(cols) + len(b), b)
        cols.extend(pos[e] for e in b)
    mat = Matrix([[r[c] for c in cols] for r in comp.matrix.rows], len(cols))
    red, _, pivots = rref(mat)
    out = {}
    for s in order:
        lo, hi, b = spans[s]
        rows = [r[lo:hi] for r, p in zip(red.rows, pivots) if lo <= p < hi]
        mt = rref(Matrix(rows, len(b)))[0] if rows else Matrix((), len(b))
        out[s] = GradedBasis((k, s), b, mt)
    return out


def up_ideal(spec: IdealSpec, kmax: int) -> dict[int, dict[int, GradedBasis]]:
    """Top-q-degree parts of the ideal, per z-degree k <= kmax and q-degree s."""
    return {k: _graded_pieces(z_component(spec, k), spec.width, True) for k in range(kmax + 1)}


def low_ideal(spec: IdealSpec, kmax: int) -> dict[int, dict[int, GradedBasis]]:
    """Lowest-q-degree parts; the limit of S_t(I) as t -> 0."""
    return {k: _graded_pieces(z_component(spec, k), spec.width, False) for k in range(kmax + 1)}


def graded_pieces_match(pieces: dict, spec: IdealSpec) -> list[tuple[int, int]]:
    """Bidegrees where ``pieces`` differ from the components of bihomogeneous ``spec``."""
    bad = []
    for k, by_s in pieces.items():
        for s, gb in by_s.items():
            if ideal_component(spec, (k, s)).matrix != gb.matrix:
                bad.append((k, s))
    return bad


def same_components(a: IdealSpec, b: IdealSpec, kmax: int) -> list[int]:
    """z-degrees <= kmax where two z-homogeneous ideals differ."""
    return [k for k in range(kmax + 1) if z_component(a, k).matrix != z_component(b, k).matrix]


# --- cross-checks ------------------------------------------------------------------------------

def restrict_component(comp: GradedBasis, n: int) -> Matrix:
    """Part of a component lying in C[e_0..e_{n-1}], over monomial_basis(n, bidegree)."""
    keep = [i for i, e in enumerate(comp.basis) if not any(e[n:])]
    if not keep:
        return Matrix((), 0)
    if not comp.dim:
        return Matrix((), len(keep))
    coords = Matrix([[int(j == i) for j in range(len(comp.basis))] for i in keep],
                    len(comp.basis))
    inter = subspace_intersection(comp.matrix, coords)
    return Matrix([[r[i] for i in keep] for r in inter.rows], len(keep))


def coefficient_ideal_mismatches(k: int, n: int, smax: int) -> list[tuple[int, int]]:
    """Bidegrees (q-degree <= smax) where the ideal of coefficients of e(z)^k,
    cut down to C[e_0..e_{n-1}], differs from J^{(k, ..., k)} with n entries."""
    window = gens_Jk_window(k, smax + 1, smax)
    limit = gens_JA_limit((k,) * n)
    bad = []
    for K in range(k + smax + 1):
        for s in range(min(smax, K * (n - 1)) + 1):
            cut = restrict_component(ideal_component(window, (K, s)), n)
            if cut != ideal_component(limit, (K, s)).matrix:
                bad.append((K, s))
    return bad


def limit_mismatches(A: Sequence[int], T: Sequence) -> list[tuple[int, int]]:
    """Bidegrees where the lowest-q parts of J^A(T) differ from J^A."""
    spec = gens_JA_T(A, T)
    return graded_pieces_match(low_ideal(spec, sum(a - 1 for a in A) + 1), gens_JA_limit(A))


def flow_mismatches(A: Sequence[int], Z: Sequence, t) -> list[int]:
    """z-degrees where S_t(I(Z)) differs from I(Z/t)."""
    t = rat(t)
    left = st_flow(gens_IZ(A, Z), t)
    right = gens_IZ(A, [rat(z) / t for z in Z])
    return same_components(left, right, sum(a - 1 for a in A) + 1)


def degeneration_mismatches(A: Sequence[int], Z: Sequence) -> list[tuple[int, int]]:
    """Bidegrees where the top-q parts of I(Z) differ from I(0)."""
    return graded_pieces_match(up_ideal(gens_IZ(A, Z), sum(a - 1 for a in A) + 1), build_I0(A))


# --- Lagrange weights -------------------------------------------------------------------------

def rho_check(Z: Sequence, l: int) -> Fraction:
    """sum_a z_a^l / prod_{b != a} (z_a - z_b)."""
    Z = _rats(Z)
    if len(set(Z)) != len(Z):
        raise ValueError("points of Z must be pairwise distinct")
    total = Fraction(0)
    for a, za in enumerate(Z):
        den = prod((za - zb for b, zb in enumerate(Z) if b != a), start=Fraction(1))
        total += za ** l / den
    return total
