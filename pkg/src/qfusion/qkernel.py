"""Exact rational linear algebra.

Rows are eliminated over the integers (each row is scaled to a primitive
integer vector first) and only converted back to :class:`Fraction` when a
reduced row-echelon form is requested.  Pivoting is deterministic: the first
row with a nonzero entry in the current column is used.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rat = Fraction


def rat(x) -> Fraction:
    """Parse ``x`` (int, Fraction or a ``"p/q"`` string) as an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class Matrix:
    """Immutable dense matrix with :class:`Fraction` entries."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[Sequence] = (), ncols: int | None = None):
        rows = tuple(tuple(rat(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("matrix is not rectangular")
        self.rows = rows
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> Matrix:
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def transpose(self) -> Matrix:
        return Matrix(zip(*self.rows), self.nrows) if self.rows else Matrix((), 0)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows)) if other.rows else []
        out = []
        for r in self.rows:
            out.append([sum((a * b for a, b in zip(r, c) if a and b), Fraction(0))
                        for c in cols])
        return Matrix(out, other.ncols)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        """Matrix times column vector."""
        return tuple(sum((a * rat(b) for a, b in zip(r, v) if a), Fraction(0))
                     for r in self.rows)


def stack(*ms: Matrix) -> Matrix:
    ncols = ms[0].ncols
    if any(m.ncols != ncols for m in ms):
        raise ValueError("column counts differ")
    return Matrix([r for m in ms for r in m.rows], ncols)


# --- integer elimination core -------------------------------------------------

def _primitive(row: Sequence) -> list[int] | None:
    """Scale a rational row to a primitive integer row; ``None`` for zero rows."""
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    if den == 1:
        ints = [int(x) for x in row]
    else:
        ints = [x.numerator * (den // x.denominator) if x else 0 for x in row]
    g = gcd(*ints)
    if g == 0:
        return None
    if g != 1:
        ints = [v // g for v in ints]
    return ints


def _reduce(row: list[int], prow: list[int], c: int) -> list[int]:
    """Clear column ``c`` of ``row`` using pivot row ``prow`` (both zero left of c)."""
    p, x = prow[c], row[c]
    g = gcd(p, x)
    pm, xm = p // g, x // g
    if pm < 0:
        pm, xm = -pm, -xm
    tail = [pm * a - xm * b for a, b in zip(row[c:], prow[c:])]
    h = gcd(*tail)
    if h > 1:
        tail = [v // h for v in tail]
    return [0] * c + tail


def echelon(rows: Iterable[Sequence], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination.

    Returns the nonzero echelon rows (primitive integer vectors) and their
    pivot columns.
    """
    work = [r for r in map(_primitive, rows) if r is not None]
    for r in work:
        if len(r) != ncols:
            raise ValueError("row length does not match ncols")
    pivots: list[int] = []
    top = 0
    n = len(work)
    for c in range(ncols):
        if top == n:
            break
        for i in range(top, n):
            if work[i][c]:
                break
        else:
            continue
        if i != top:
            work[top], work[i] = work[i], work[top]
        prow = work[top]
        for i in range(top + 1, n):
            if work[i][c]:
                work[i] = _reduce(work[i], prow, c)
        pivots.append(c)
        top += 1
    return work[:top], pivots


def _back_substitute(rows: list[list[int]], pivots: list[int]) -> list[tuple[Fraction, ...]]:
    for k in range(len(rows) - 1, -1, -1):
        c = pivots[k]
        prow = rows[k]
        for i in range(k):
            if rows[i][c]:
                rows[i] = _reduce_full(rows[i], prow, c)
    out = []
    for r, c in zip(rows, pivots):
        p = r[c]
        out.append(tuple(Fraction(v, p) if v else Fraction(0) for v in r))
    return out


def _reduce_full(row: list[int], prow: list[int], c: int) -> list[int]:
    p, x = prow[c], row[c]
    g = gcd(p, x)
    pm, xm = p // g, x // g
    if pm < 0:
        pm, xm = -pm, -xm
    new = [pm * a - xm * b for a, b in zip(row, prow)]
    h = gcd(*new)
    if h > 1:
        new = [v // h for v in new]
    return new


# --- public operations --------------------------------------------------------

def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form with leading ones; zero rows are dropped."""
    rows, pivots = echelon(m.rows, m.ncols)
    return Matrix(_back_substitute(rows, pivots), m.ncols), len(pivots), pivots


def rank(m: Matrix | Iterable[Sequence], ncols: int | None = None) -> int:
    if isinstance(m, Matrix):
        return len(echelon(m.rows, m.ncols)[1])
    m = list(m)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    return len(echelon(m, ncols)[1])


def reduced(m: Matrix) -> Matrix:
    return rref(m)[0]


def kernel_basis(m: Matrix) -> Matrix:
    """Basis of the right null space ``{v : m v = 0}``, one vector per free column."""
    r, _, pivots = rref(m)
    pivset = set(pivots)
    out = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row, c in zip(r.rows, pivots):
            if row[f]:
                v[c] = -row[f]
        out.append(v)
    return Matrix(out, m.ncols)


def left_kernel(m: Matrix) -> Matrix:
    """Basis of ``{x : x m = 0}`` (coefficients of row dependencies)."""
    return kernel_basis(m.transpose()) if m.nrows else Matrix((), 0)


def subspace_intersection(a: Matrix, b: Matrix) -> Matrix:
    """Reduced basis of row-span(a) ∩ row-span(b)."""
    if a.ncols != b.ncols:
        raise ValueError("ambient dimensions differ")
    ra, ka, _ = rref(a)
    rb, kb, _ = rref(b)
    if ka == 0 or kb == 0:
        return Matrix((), a.ncols)
    deps = left_kernel(stack(ra, rb))
    vecs = []
    for x in deps.rows:
        coeffs = x[:ka]
        vecs.append([sum((c * row[j] for c, row in zip(coeffs, ra.rows) if c), Fraction(0))
                     for j in range(a.ncols)])
    return reduced(Matrix(vecs, a.ncols))


def in_span(m: Matrix, v: Sequence) -> bool:
    """Whether ``v`` lies in the row span of ``m`` (solves x·reduced(m) = v)."""
    r, _, pivots = rref(m)
    residual = [rat(x) for x in v]
    for row, c in zip(r.rows, pivots):
        coef = residual[c]
        if coef:
            residual = [a - coef * b for a, b in zip(residual, row)]
    return not any(residual)


def same_span(a: Matrix, b: Matrix) -> bool:
    return a.ncols == b.ncols and reduced(a) == reduced(b)


def inverse(m: Matrix) -> Matrix:
    n = m.nrows
    if n != m.ncols:
        raise ValueError("matrix is not square")
    aug = Matrix([list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(m.rows)],
                 2 * n)
    r, k, pivots = rref(aug)
    if k < n or pivots[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return Matrix([row[n:] for row in r.rows], n)
