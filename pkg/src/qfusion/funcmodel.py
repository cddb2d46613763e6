"""Tensor-valued polynomials with Clebsch-Gordan conditions on the diagonals.

F is the space of polynomials in z_1..z_n with values in ⊗ C^{a_i}.  For each
pair i < j write f = sum_k s^k f_k with s = z_i - z_j and t = z_i + z_j; the
subspace F^c asks f_k to lie in V(k) ⊗ (other factors), where V(k) is the sum
of the k + 1 largest irreducible summands of C^{a_i} ⊗ C^{a_j}.  Everything is
computed in blocks of fixed polynomial degree d and total tensor degree P
(the sum of the y-exponents, an sl2 weight up to a shift).

Tensor factors use the basis v_c = y^c with E v_c = v_{c+1} and
F v_c = c(a - c) v_{c-1}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import Sequence

from .fusion import tensor_basis
from .poly import Poly, degree_basis
from .qchar import CharTable
from .qkernel import Matrix, kernel_basis, rank, rat, rref

MAX_FACTORS = 3


# --- sl2 on C^a ----------------------------------------------------------------

def raise_op(a: int) -> Matrix:
    """E: v_c -> v_{c+1} (zero on the top vector); rows index the image."""
    return Matrix([[int(r == c + 1) for c in range(a)] for r in range(a)], a)


def lower_op(a: int) -> Matrix:
    """F: v_c -> c(a - c) v_{c-1}."""
    return Matrix([[c * (a - c) if r == c - 1 else 0 for c in range(a)] for r in range(a)], a)


def invariant_form(a: int, c: int, d: int) -> int:
    """<v_c, v_d> = (-1)^c when c + d = a - 1, else 0."""
    return (-1) ** c if c + d == a - 1 else 0


@dataclass(frozen=True)
class PairFiltration:
    """Irreducible summands of C^a ⊗ C^b in the basis v_c ⊗ v_d (index c*b + d).

    ``summands[l]`` has dimension a + b - 1 - 2l and is listed bottom-up in
    weight.  ``opposite`` flips which summands enter the filtration first.
    """

    a: int
    b: int
    summands: tuple[tuple[tuple[Fraction, ...], ...], ...]
    opposite: bool = False

    @property
    def length(self) -> int:
        return len(self.summands)

    def dims(self) -> list[int]:
        return [len(s) for s in self.summands]

    def _order(self) -> list[int]:
        r = self.length
        return list(range(r))[::-1] if self.opposite else list(range(r))

    def level(self, k: int) -> Matrix:
        """Basis of V(k); the whole space once k reaches the last level."""
        rows = [v for l in self._order()[:k + 1] for v in self.summands[l]]
        return Matrix(rows, self.a * self.b)

    def weight_annihilator(self, k: int, w: int) -> tuple[list[tuple[int, int]], Matrix]:
        """Functionals on the weight-w part (c + d = w) vanishing on V(k)."""
        coords = [(c, w - c) for c in range(self.a) if 0 <= w - c < self.b]
        idx = [c * self.b + d for c, d in coords]
        rows = [[v[i] for i in idx] for v in self.level(k).rows if any(v[i] for i in idx)]
        if not rows:
            return coords, Matrix.identity(len(coords))
        return coords, kernel_basis(Matrix(rows, len(coords)))


def clebsch_gordan_filtration(a: int, b: int, opposite: bool = False) -> PairFiltration:
    """Split C^a ⊗ C^b into irreducibles over Q.

    The lowest vector of summand l spans ker F in tensor degree l; the rest of
    the summand comes from applying E repeatedly.
    """
    if a < 1 or b < 1:
        raise ValueError("dimensions must be positive")
    N = a * b
    Ea, Eb, Fa, Fb = raise_op(a), raise_op(b), lower_op(a), lower_op(b)

    def apply_pair(Ma, Mb, v):
        out = [Fraction(0)] * N
        for idx, x in enumerate(v):
            if not x:
                continue
            c, d = divmod(idx, b)
            for r in range(a):
                if Ma[r, c]:
                    out[r * b + d] += Ma[r, c] * x
            for r in range(b):
                if Mb[r, d]:
                    out[c * b + r] += Mb[r, d] * x
        return tuple(out)

    summands = []
    for l in range(min(a, b)):
        coords = [(c, l - c) for c in range(a) if 0 <= l - c < b]
        # matrix of F from weight l to weight l - 1, columns = coords
        cols = []
        for c, d in coords:
            v = [0] * N
            v[c * b + d] = 1
            cols.append(apply_pair(Fa, Fb, v))
        mat = Matrix(list(zip(*cols)) if cols else (), len(coords)) if l else None
        if mat is None:
            low = [Fraction(1)]
        else:
            ker = kernel_basis(mat)
            if ker.nrows != 1:
                raise ArithmeticError("lowest-weight space should be one-dimensional")
            low = list(ker.rows[0])
        v = [Fraction(0)] * N
        for x, (c, d) in zip(low, coords):
            v[c * b + d] = x
        vecs = [tuple(v)]
        for _ in range(a + b - 2 - 2 * l):
            vecs.append(apply_pair(Ea, Eb, vecs[-1]))
        if not any(vecs[-1]) or any(apply_pair(Ea, Eb, vecs[-1])):
            raise ArithmeticError("summand has the wrong dimension")
        summands.append(tuple(vecs))
    return PairFiltration(a, b, tuple(summands), opposite)


# --- the truncated space F^c ---------------------------------------------------------

@dataclass
class FcBlock:
    """Reduced basis of F^c in polynomial degree d and tensor degree P."""

    d: int
    P: int
    monos: tuple
    tensors: tuple
    basis: Matrix

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def columns(self) -> list[tuple]:
        return [(m, c) for m in self.monos for c in self.tensors]

    def element(self, row: int) -> dict:
        return {col: x for col, x in zip(self.columns(), self.basis.rows[row]) if x}


@dataclass
class TruncatedFc:
    A: tuple[int, ...]
    D: int
    opposite: bool
    blocks: dict = field(default_factory=dict)  # (d, P) -> FcBlock

    @property
    def n(self) -> int:
        return len(self.A)

    def dim(self, d: int, P: int | None = None) -> int:
        if P is not None:
            b = self.blocks.get((d, P))
            return b.dim if b else 0
        return sum(b.dim for (dd, _), b in self.blocks.items() if dd == d)

    def weights(self) -> list[int]:
        return list(range(sum(a - 1 for a in self.A) + 1))

    def elements(self, dmax: int | None = None) -> list[dict]:
        out = []
        for (d, P), b in sorted(self.blocks.items()):
            if dmax is None or d <= dmax:
                out.extend(b.element(i) for i in range(b.dim))
        return out


def _pair_expansion(p: int, q: int) -> dict[int, int]:
    """z_i^p z_j^q = 2^{-(p+q)} sum_k coef_k s^k t^{p+q-k}; returns {k: coef_k}."""
    out: dict[int, int] = {}
    for x in range(p + 1):
        for y in range(q + 1):
            out[x + y] = out.get(x + y, 0) + comb(p, x) * comb(q, y) * (-1) ** y
    return {k: v for k, v in out.items() if v}


def _check_guard(A):
    if not A or any(a < 1 for a in A):
        raise ValueError("entries of A must be positive")
    if len(A) > MAX_FACTORS:
        raise ValueError(f"the functional model is limited to at most {MAX_FACTORS} factors")


def _fc_block(A, d, P, filtrations) -> FcBlock:
    n = len(A)
    monos = degree_basis(n, d)
    tensors = tuple(c for c in tensor_basis(A) if sum(c) == P)
    ncols = len(monos) * len(tensors)
    if not ncols:
        return FcBlock(d, P, monos, tensors, Matrix((), ncols))
    tindex = {c: i for i, c in enumerate(tensors)}
    rows: dict = {}
    for (i, j), filt in filtrations.items():
        r = filt.length - 1  # V(k) is everything for k >= r
        if r <= 0:
            continue
        ann_cache = {}
        for mi, m in enumerate(monos):
            rest_m = tuple(x for idx, x in enumerate(m) if idx not in (i, j))
            for k, coef in _pair_expansion(m[i], m[j]).items():
                if k >= r:
                    continue
                tpow = m[i] + m[j] - k
                for c in tensors:
                    w = c[i] + c[j]
                    key_a = (k, w)
                    if key_a not in ann_cache:
                        ann_cache[key_a] = filt.weight_annihilator(k, w)
                    coords, ann = ann_cache[key_a]
                    pos = coords.index((c[i], c[j]))
                    rest_c = tuple(x for idx, x in enumerate(c) if idx not in (i, j))
                    col = mi * len(tensors) + tindex[c]
                    for fi, phi in enumerate(ann.rows):
                        if phi[pos]:
                            key = (i, j, k, tpow, rest_m, w, fi, rest_c)
                            rows.setdefault(key, {})
                            rows[key][col] = rows[key].get(col, 0) + coef * phi[pos]
    mat = [[r.get(c, 0) for c in range(ncols)] for _, r in sorted(rows.items())]
    basis = kernel_basis(Matrix(mat, ncols)) if mat else Matrix.identity(ncols)
    basis = rref(basis)[0] if basis.nrows else basis
    return FcBlock(d, P, monos, tensors, basis)


def fc_truncated(A: Sequence[int], D: int, opposite: bool = False) -> TruncatedFc:
    """F^c in all polynomial degrees d <= D, split by tensor degree."""
    A = tuple(A)
    _check_guard(A)
    if D < 0:
        raise ValueError("degree cap must be nonnegative")
    n = len(A)
    filtrations = {(i, j): clebsch_gordan_filtration(A[i], A[j], opposite)
                   for i in range(n) for j in range(i + 1, n)}
    out = TruncatedFc(A, D, opposite)
    for d in range(D + 1):
        for P in range(sum(a - 1 for a in A) + 1):
            out.blocks[(d, P)] = _fc_block(A, d, P, filtrations)
    return out


def free_hilbert_n2(A: Sequence[int], d: int) -> int:
    """Dimension in degree d of a free C[z_1, z_2]-module with one generator of
    dimension a_1 + a_2 - 1 - 2l in degree l for each summand l."""
    a1, a2 = A
    return sum((a1 + a2 - 1 - 2 * l) * max(d - l + 1, 0) for l in range(min(a1, a2)))


# --- the quotients M(T) --------------------------------------------------------------

def _shift_mono(m: tuple, i: int) -> tuple:
    return m[:i] + (m[i] + 1,) + m[i + 1:]


def _times_z(vec_cols: dict, i: int, shift=Fraction(0)) -> dict:
    """(z_i - shift) * f for f given as {(mono, tensor): coeff}."""
    out: dict = {}
    for (m, c), x in vec_cols.items():
        key = (_shift_mono(m, i), c)
        out[key] = out.get(key, 0) + x
        if shift:
            out[(m, c)] = out.get((m, c), 0) - shift * x
    return {k: v for k, v in out.items() if v}


def default_cap(A: Sequence[int]) -> int:
    n = len(A)
    pairs = sum(min(A[i], A[j]) - 1 for i in range(n) for j in range(i + 1, n))
    return max(pairs, sum(a - 1 for a in A) * (n - 1)) + 1


@dataclass
class MTResult:
    A: tuple[int, ...]
    T: tuple[Fraction, ...]
    D: int
    by_weight: dict  # P -> dimension of M(T) in tensor degree P
    table: CharTable | None = None  # (P, d) table at T = 0

    @property
    def total(self) -> int:
        return sum(self.by_weight.values())

    def zdims(self) -> list[int]:
        top = max((P for P, v in self.by_weight.items() if v), default=-1)
        return [self.by_weight.get(P, 0) for P in range(top + 1)]

    def to_json(self) -> dict:
        out = {"T": [str(t) for t in self.T], "cap": self.D, "total": self.total,
               "zdims": self.zdims()}
        if self.table is not None:
            out["entries"] = self.table.entries()
        return out


def _vectors(fc: TruncatedFc, P: int, dmax: int, index: dict) -> list[list]:
    out = []
    for d in range(dmax + 1):
        b = fc.blocks[(d, P)]
        for r in range(b.dim):
            v = [0] * len(index)
            for col, x in b.element(r).items():
                v[index[col]] = x
            out.append(v)
    return out


def _weight_index(fc: TruncatedFc, P: int, dmax: int) -> dict:
    cols = []
    for d in range(dmax + 1):
        cols.extend(fc.blocks[(d, P)].columns())
    return {c: i for i, c in enumerate(cols)}


def _mt_graded(fc: TruncatedFc, D: int) -> tuple[dict, CharTable]:
    """M(0) in every degree d <= D: F^c_d modulo sum_i z_i F^c_{d-1}."""
    by_weight: dict = {}
    entries = {}
    for P in fc.weights():
        for d in range(D + 1):
            b = fc.blocks[(d, P)]
            if not b.dim:
                continue
            index = {c: i for i, c in enumerate(b.columns())}
            images = []
            if d:
                low = fc.blocks[(d - 1, P)]
                for r in range(low.dim):
                    el = low.element(r)
                    for i in range(fc.n):
                        v = [0] * len(index)
                        for col, x in _times_z(el, i).items():
                            v[index[col]] = x
                        images.append(v)
            q = b.dim - (rank(images, len(index)) if images else 0)
            if q:
                entries[(P, d)] = q
                by_weight[P] = by_weight.get(P, 0) + q
    return by_weight, CharTable(entries)


def _mt_point(fc: TruncatedFc, T: tuple, D: int) -> dict:
    """dim of F^c_{<=D} modulo sum_i (z_i - t_i) F^c_{<=D-1}, per tensor degree."""
    by_weight = {}
    for P in fc.weights():
        index = _weight_index(fc, P, D)
        total = sum(fc.blocks[(d, P)].dim for d in range(D + 1))
        rel = []
        for d in range(D):
            low = fc.blocks[(d, P)]
            for r in range(low.dim):
                el = low.element(r)
                for i, t in enumerate(T):
                    v = [0] * len(index)
                    for col, x in _times_z(el, i, t).items():
                        v[index[col]] = x
                    rel.append(v)
        q = total - (rank(rel, len(index)) if rel else 0)
        if q:
            by_weight[P] = q
    return by_weight


class UnstableTruncation(RuntimeError):
    """Raised when the answer still changes between caps D and D + 1."""


def mt_character(A: Sequence[int], T: Sequence, D: int | None = None) -> MTResult:
    """Graded dimensions of M(T) = F^c / R(T) F^c from degree-truncated F^c.

    The computation runs at D and D + 1 and refuses to answer if they differ.
    At T = 0 the result also carries the (tensor degree, polynomial degree)
    table.
    """
    A = tuple(A)
    _check_guard(A)
    T = tuple(rat(t) for t in T)
    if len(T) != len(A):
        raise ValueError("A and T must have equal length")
    D = default_cap(A) if D is None else D
    fc = fc_truncated(A, D + 1)
    if all(t == 0 for t in T):
        w1, t1 = _mt_graded(fc, D)
        w2, t2 = _mt_graded(fc, D + 1)
        if t1 != t2:
            raise UnstableTruncation(f"M(0) still changes past degree {D}")
        return MTResult(A, T, D, w1, t1)
    w1 = _mt_point(fc, T, D)
    w2 = _mt_point(fc, T, D + 1)
    if w1 != w2:
        raise UnstableTruncation(f"M(T) still changes past degree {D}")
    return MTResult(A, T, D, w1)


def e_action(f: dict, j: int, A: Sequence[int]) -> dict:
    """e_j acts by multiplication with sum_i z_i^j y_i."""
    out: dict = {}
    for (m, c), x in f.items():
        for i, a in enumerate(A):
            if c[i] + 1 < a:
                key = (m[:i] + (m[i] + j,) + m[i + 1:], c[:i] + (c[i] + 1,) + c[i + 1:])
                out[key] = out.get(key, 0) + x
    return {k: v for k, v in out.items() if v}


def cyclic_span_dim(A: Sequence[int], T: Sequence, D: int | None = None) -> int:
    """Dimension of the image of C[e]·u in F^c_{<=D} / R_D."""
    A = tuple(A)
    _check_guard(A)
    T = tuple(rat(t) for t in T)
    n = len(A)
    D = default_cap(A) if D is None else D
    fc = fc_truncated(A, D)
    u = {((0,) * n, (0,) * n): Fraction(1)}
    total = 0
    layer = {(0,) * n: u}
    for P in fc.weights():
        if P:
            nxt = {}
            for e, f in layer.items():
                for j in range(n):
                    key = e[:j] + (e[j] + 1,) + e[j + 1:]
                    if key not in nxt:
                        nxt[key] = e_action(f, j, A)
            layer = nxt
        if max(sum(i * x for i, x in enumerate(e)) for e in layer) > D:
            raise ValueError("degree cap too small for the e-monomials")
        index = _weight_index(fc, P, D)
        rel = []
        for d in range(D):
            low = fc.blocks[(d, P)]
            for r in range(low.dim):
                el = low.element(r)
                for i, t in enumerate(T):
                    v = [0] * len(index)
                    for col, x in _times_z(el, i, t).items():
                        v[index[col]] = x
                    rel.append(v)
        imgs = []
        for f in layer.values():
            v = [0] * len(index)
            for col, x in f.items():
                v[index[col]] = x
            imgs.append(v)
        base = rank(rel, len(index)) if rel else 0
        total += rank(rel + imgs, len(index)) - base
    return total


# --- the pairing for two factors ---------------------------------------------------------

def chi(A: Sequence[int], f: dict, h: dict) -> Poly:
    """Polynomial <f(z), h(z)> from the product of the invariant forms."""
    n = len(A)
    terms: dict = {}
    for (m1, c1), x in f.items():
        for (m2, c2), y in h.items():
            w = prod(invariant_form(a, p, q) for a, p, q in zip(A, c1, c2))
            if w:
                m = tuple(u + v for u, v in zip(m1, m2))
                terms[m] = terms.get(m, 0) + w * x * y
    return Poly(n, terms, symbol="z")


def divide_by_diagonal(p: Poly, r: int) -> Poly:
    """Exact quotient of p(z_1, z_2) by (z_1 - z_2)^r; raises on a remainder."""
    if p.nvars != 2:
        raise ValueError("expected a polynomial in two variables")
    s = Poly(2, {(1, 0): 1, (0, 1): 1}, "z")  # z_1 -> s + z_2
    z2 = Poly.var(2, 1, "z")
    shifted = p.substitute([s, z2])
    low = [e for e in shifted.terms if e[0] < r]
    if low:
        raise ArithmeticError(f"not divisible by (z_1 - z_2)^{r}")
    quot = Poly(2, {(e[0] - r, e[1]): c for e, c in shifted.terms.items()}, "z")
    back = Poly(2, {(1, 0): 1, (0, 1): -1}, "z")  # s -> z_1 - z_2
    return quot.substitute([back, z2])


def pairing_n2(A: Sequence[int], f: dict, h: dict) -> Poly:
    """chi(f ⊗ h) / (z_1 - z_2)^{min(a_1, a_2) - 1} for f in F^c, h in the opposite space."""
    A = tuple(A)
    if len(A) != 2:
        raise ValueError("the pairing is implemented for two factors")
    return divide_by_diagonal(chi(A, f, h), min(A) - 1)


def gram_rank_n2(A: Sequence[int], T: Sequence) -> int:
    """Rank of the induced pairing between M(T) and its opposite counterpart.

    Both modules are generated in degrees < min(a_1, a_2), so F^c and the
    opposite space truncated there span the two quotients.
    """
    A = tuple(A)
    T = tuple(rat(t) for t in T)
    top = min(A) - 1
    left = fc_truncated(A, top).elements()
    right = fc_truncated(A, top, opposite=True).elements()
    gram = [[pairing_n2(A, f, h).evaluate(T) for h in right] for f in left]
    return rank(gram, len(right)) if gram else 0
