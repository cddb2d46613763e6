"""Sparse polynomials with exact rational coefficients.

One class serves both the bigraded ring C[e_0, ..., e_{m-1}] (where
``deg_z e_i = 1`` and ``deg_q e_i = i``) and the auxiliary rings in z- or
y-variables; only the printing symbol differs.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping, Sequence

from .qkernel import rat

Exp = tuple  # exponent vector


class Poly:
    __slots__ = ("nvars", "terms", "symbol")

    def __init__(self, nvars: int, terms: Mapping | Iterable = (), symbol: str = "e"):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exp, Fraction] = {}
        for exp, c in items:
            exp = tuple(exp)
            if len(exp) != nvars or any(a < 0 for a in exp):
                raise ValueError(f"bad exponent vector {exp} for {nvars} variables")
            c = rat(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self.nvars = nvars
        self.terms = clean
        self.symbol = symbol

    # constructors
    @classmethod
    def zero(cls, nvars: int, symbol: str = "e") -> Poly:
        return cls(nvars, (), symbol)

    @classmethod
    def one(cls, nvars: int, symbol: str = "e") -> Poly:
        return cls(nvars, {(0,) * nvars: 1}, symbol)

    @classmethod
    def const(cls, nvars: int, c, symbol: str = "e") -> Poly:
        return cls(nvars, {(0,) * nvars: c}, symbol)

    @classmethod
    def var(cls, nvars: int, i: int, symbol: str = "e") -> Poly:
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): 1}, symbol)

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1, symbol: str = "e") -> Poly:
        return cls(len(exp), {tuple(exp): c}, symbol)

    @classmethod
    def _raw(cls, nvars, terms, symbol):
        p = object.__new__(cls)
        p.nvars, p.terms, p.symbol = nvars, terms, symbol
        return p

    # basic protocol
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly({self.nvars}, {to_str(self)!r})"

    def __str__(self):
        return to_str(self)

    def _check(self, other: Poly):
        if self.nvars != other.nvars:
            raise ValueError(f"width mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(self.nvars, other, self.symbol)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out, self.symbol)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()}, self.symbol)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = rat(other)
            if not c:
                return Poly.zero(self.nvars, self.symbol)
            return Poly._raw(self.nvars, {e: c * v for e, v in self.terms.items()}, self.symbol)
        self._check(other)
        out: dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw(self.nvars, {e: c for e, c in out.items() if c}, self.symbol)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.one(self.nvars, self.symbol)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def map_coefficients(self, fn) -> Poly:
        return Poly(self.nvars, ((e, fn(e, c)) for e, c in self.terms.items()), self.symbol)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def substitute(self, images: Sequence[Poly]) -> Poly:
        """Ring homomorphism sending variable i to ``images[i]``."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].nvars if images else 0
        symbol = images[0].symbol if images else self.symbol
        powers: dict[tuple[int, int], Poly] = {}

        def pw(i, a):
            key = (i, a)
            if key not in powers:
                powers[key] = images[i] ** a
            return powers[key]

        out = Poly.zero(target, symbol)
        for e, c in self.terms.items():
            term = Poly.const(target, c, symbol)
            for i, a in enumerate(e):
                if a:
                    term = term * pw(i, a)
            out = out + term
        return out

    def evaluate(self, point: Sequence) -> Fraction:
        point = [rat(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, a in zip(point, e):
                if a:
                    v *= x ** a
            total += v
        return total


EPoly = Poly
MultiPoly = Poly


# --- bigrading ---------------------------------------------------------------

def bidegree(exp: Sequence[int]) -> tuple[int, int]:
    """(z-degree, q-degree) of the monomial with exponent vector ``exp``."""
    return sum(exp), sum(i * a for i, a in enumerate(exp))


def is_bihomogeneous(p: Poly) -> bool:
    return len({bidegree(e) for e in p.terms}) <= 1


def is_z_homogeneous(p: Poly) -> bool:
    return len({sum(e) for e in p.terms}) <= 1


def bihomogeneous_component(p: Poly, d: tuple[int, int]) -> Poly:
    d = tuple(d)
    return Poly._raw(p.nvars, {e: c for e, c in p.terms.items() if bidegree(e) == d}, p.symbol)


def bihomogeneous_parts(p: Poly) -> dict[tuple[int, int], Poly]:
    parts: dict[tuple[int, int], dict] = {}
    for e, c in p.terms.items():
        parts.setdefault(bidegree(e), {})[e] = c
    return {d: Poly._raw(p.nvars, t, p.symbol) for d, t in sorted(parts.items())}


def widen(p: Poly, m: int) -> Poly:
    """Embed C[e_0..e_{n-1}] into C[e_0..e_{m-1}], m >= n."""
    if m < p.nvars:
        raise ValueError("cannot narrow a polynomial")
    pad = (0,) * (m - p.nvars)
    return Poly._raw(m, {e + pad: c for e, c in p.terms.items()}, p.symbol)


# --- monomial bases ------------------------------------------------------------

@lru_cache(maxsize=None)
def _multisets(k: int, s: int, lo: int, hi: int) -> tuple[tuple[int, ...], ...]:
    """Non-decreasing k-tuples with entries in [lo, hi] summing to s."""
    if k == 0:
        return ((),) if s == 0 else ()
    out = []
    for first in range(lo, hi + 1):
        if first * k > s:
            break
        if s - first > (k - 1) * hi:
            continue
        for rest in _multisets(k - 1, s - first, first, hi):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_basis(m: int, d: tuple[int, int]) -> tuple[Exp, ...]:
    """Exponent vectors of all monomials of bidegree ``d`` in m variables.

    Ordered lexicographically descending on exponent vectors, so for
    bidegree (k, s) the first entry is the one with the most e_0 factors.
    """
    k, s = d
    if m == 0:
        return ((),) if (k, s) == (0, 0) else ()
    out = []
    for ms in _multisets(k, s, 0, m - 1):
        exp = [0] * m
        for i in ms:
            exp[i] += 1
        out.append(tuple(exp))
    out.sort(reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def zdeg_basis(m: int, k: int) -> tuple[Exp, ...]:
    """All monomials of z-degree k, grouped by q-degree ascending."""
    out = []
    for s in range(k * max(m - 1, 0) + 1):
        out.extend(monomial_basis(m, (k, s)))
    return tuple(out)


@lru_cache(maxsize=None)
def degree_basis(nvars: int, d: int) -> tuple[Exp, ...]:
    """All monomials of total degree d in ``nvars`` ordinary variables (lex descending)."""
    if nvars == 0:
        return ((),) if d == 0 else ()
    if nvars == 1:
        return ((d,),)
    out = []
    for a in range(d, -1, -1):
        for rest in degree_basis(nvars - 1, d - a):
            out.append((a,) + rest)
    return tuple(out)


def coefficient_vector(p: Poly, basis: Sequence[Exp]) -> list[Fraction]:
    index = {e: i for i, e in enumerate(basis)}
    row = [Fraction(0)] * len(basis)
    for e, c in p.terms.items():
        try:
            row[index[e]] = c
        except KeyError:
            raise ValueError(f"term {e} lies outside the given basis") from None
    return row


def from_vector(row: Sequence, basis: Sequence[Exp], nvars: int, symbol: str = "e") -> Poly:
    return Poly(nvars, ((e, c) for e, c in zip(basis, row) if c), symbol)


def multinomial(exp: Sequence[int]) -> int:
    out = factorial(sum(exp))
    for a in exp:
        out //= factorial(a)
    return out


# --- text form ---------------------------------------------------------------------

def _term_str(exp: Exp, c: Fraction, symbol: str) -> str:
    factors = [str(c)]
    for i, a in enumerate(exp):
        if a == 1:
            factors.append(f"{symbol}_{i}")
        elif a > 1:
            factors.append(f"{symbol}_{i}^{a}")
    return " * ".join(factors)


def canonical_order(p: Poly) -> list[Exp]:
    """Terms ordered by (z-degree, q-degree) and then lex descending."""
    return sorted(p.terms, key=lambda e: (bidegree(e), tuple(-a for a in e)))


def to_str(p: Poly) -> str:
    if not p.terms:
        return "0"
    return " + ".join(_term_str(e, p.terms[e], p.symbol) for e in canonical_order(p))


_FACTOR = re.compile(r"^([A-Za-z]+)_(\d+)(?:\^(\d+))?$")


def parse(text: str, nvars: int) -> Poly:
    """Inverse of :func:`to_str`."""
    text = text.strip()
    if text == "0":
        return Poly.zero(nvars)
    symbol = "e"
    terms: dict[Exp, Fraction] = {}
    for chunk in text.split(" + "):
        parts = [x.strip() for x in chunk.split("*")]
        c = Fraction(parts[0])
        exp = [0] * nvars
        for f in parts[1:]:
            m = _FACTOR.match(f)
            if not m:
                raise ValueError(f"cannot parse factor {f!r}")
            symbol = m.group(1)
            exp[int(m.group(2))] += int(m.group(3) or 1)
        terms[tuple(exp)] = terms.get(tuple(exp), 0) + c
    return Poly(nvars, terms, symbol)
