"""Bigraded characters and their q-series formulas.

Every :class:`CharTable` produced here is in the plain normalization: entry
(k, s) counts the dimension at z-degree k and q-degree s, where e_i has
bidegree (1, i).  The closed-form and Gordon formulas are naturally written
after the substitution z -> zq; their output is shifted back by (k, s) ->
(k, s - k) before being returned.
"""
from __future__ import annotations

import json
from collections import Counter
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence


class CharTable:
    """Finitely supported map (z-degree, q-degree) -> nonnegative integer.

    ``qgraded=False`` marks a table that only carries the z-grading (all
    entries sit at q-degree 0 and the q column is meaningless).
    """

    __slots__ = ("_data", "qgraded")

    def __init__(self, entries: Mapping | Iterable = (), qgraded: bool = True):
        items = entries.items() if isinstance(entries, Mapping) else entries
        data: dict[tuple[int, int], int] = {}
        for (k, s), v in items:
            if v:
                data[(k, s)] = data.get((k, s), 0) + v
        for key in [key for key, v in data.items() if v == 0]:
            del data[key]
        self._data = data
        self.qgraded = qgraded

    @classmethod
    def one(cls) -> CharTable:
        return cls({(0, 0): 1})

    @classmethod
    def from_zdims(cls, dims: Sequence[int]) -> CharTable:
        return cls({(k, 0): d for k, d in enumerate(dims)}, qgraded=False)

    def __getitem__(self, key) -> int:
        return self._data.get(tuple(key), 0)

    def __iter__(self):
        return iter(sorted(self._data))

    def __len__(self):
        return len(self._data)

    def items(self):
        return sorted(self._data.items())

    def __eq__(self, other):
        if not isinstance(other, CharTable):
            return NotImplemented
        return self.qgraded == other.qgraded and self._data == other._data

    def __hash__(self):
        return hash((self.qgraded, frozenset(self._data.items())))

    def __repr__(self):
        return f"CharTable({self.to_poly_str()})"

    def __add__(self, other: CharTable) -> CharTable:
        return CharTable(list(self._data.items()) + list(other._data.items()),
                         self.qgraded and other.qgraded)

    def shifted(self, dk: int, ds: int) -> CharTable:
        """Multiply by z^dk q^ds."""
        return CharTable({(k + dk, s + ds): v for (k, s), v in self._data.items()}, self.qgraded)

    def total(self) -> int:
        return sum(self._data.values())

    def entries(self) -> list[list[int]]:
        return [[k, s, v] for (k, s), v in sorted(self._data.items())]

    def zdims(self) -> list[int]:
        """Collapse the q-grading: dimension per z-degree."""
        if not self._data:
            return []
        out = [0] * (max(k for k, _ in self._data) + 1)
        for (k, _), v in self._data.items():
            out[k] += v
        return out

    def window(self, zmax: int | None = None, smax: int | None = None) -> CharTable:
        return CharTable({(k, s): v for (k, s), v in self._data.items()
                          if (zmax is None or k <= zmax) and (smax is None or s <= smax)},
                         self.qgraded)

    def from_zq(self) -> CharTable:
        """Undo the z -> zq substitution."""
        return CharTable({(k, s - k): v for (k, s), v in self._data.items()}, self.qgraded)

    def to_zq(self) -> CharTable:
        return CharTable({(k, s + k): v for (k, s), v in self._data.items()}, self.qgraded)

    def mirrored(self, m: int) -> CharTable:
        """Image under e_i -> e_{m-1-i}: entry (k, s) moves to (k, k(m-1) - s)."""
        return CharTable({(k, k * (m - 1) - s): v for (k, s), v in self._data.items()},
                         self.qgraded)

    def to_json(self) -> dict:
        out = {"entries": self.entries(), "total": self.total()}
        if not self.qgraded:
            out["qgraded"] = False
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj: Mapping) -> CharTable:
        return cls({(k, s): v for k, s, v in obj["entries"]}, obj.get("qgraded", True))

    def to_tsv(self) -> str:
        lines = ["k\ts\tdim"]
        lines += [f"{k}\t{s}\t{v}" for (k, s), v in sorted(self._data.items())]
        return "\n".join(lines) + "\n"

    def to_poly_str(self) -> str:
        if not self._data:
            return "0"
        terms = []
        for (k, s), v in sorted(self._data.items()):
            mono = "".join(
                f"{x}" if e == 1 else f"{x}^{e}" for x, e in (("z", k), ("q", s)) if e)
            if not mono:
                terms.append(str(v))
            else:
                terms.append(mono if v == 1 else f"{v}{mono}")
        return " + ".join(terms)


# --- q-polynomials (coefficient tuples, index = q-degree) -------------------------

QPoly = tuple


def _trim(c: list[int]) -> QPoly:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def qmul(a: QPoly, b: QPoly) -> QPoly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def qadd(a: QPoly, b: QPoly) -> QPoly:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def qshift(a: QPoly, k: int) -> QPoly:
    return (0,) * k + tuple(a) if a else ()


@lru_cache(maxsize=None)
def qfactorial(k: int) -> QPoly:
    """(q)_k = (1 - q)(1 - q^2)...(1 - q^k)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out: QPoly = (1,)
    for i in range(1, k + 1):
        out = qmul(out, (1,) + (0,) * (i - 1) + (-1,))
    return out


@lru_cache(maxsize=None)
def qbinomial(m: int, k: int) -> QPoly:
    """Gaussian binomial [m, k]_q via q-Pascal; zero outside 0 <= k <= m."""
    if k < 0 or k > m or m < 0:
        return ()
    if k == 0 or k == m:
        return (1,)
    return qadd(qshift(qbinomial(m - 1, k), k), qbinomial(m - 1, k - 1))


# --- characters of W^A -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _recurrence(a: tuple[int, ...]) -> CharTable:
    if not a:
        return CharTable.one()
    if a[0] <= 0:
        return CharTable()
    n = len(a)
    head = a[:-1]
    lowered = tuple(sorted(head + (a[-1] - 1,)))
    return _recurrence(head) + _recurrence(lowered).shifted(1, n - 1)


def char_recurrence(A: Iterable[int]) -> CharTable:
    """Character of C[e_0..e_{n-1}]/J^A by peeling off the largest entry of A."""
    a = tuple(sorted(A))
    if any(x < 0 for x in a):
        raise ValueError("entries of A must be nonnegative")
    return _recurrence(a)


def profile(A: Iterable[int]) -> tuple[int, ...]:
    """b_i = #{j : a_j = i} for i = 1..max(A)."""
    A = list(A)
    if not A:
        return ()
    if min(A) < 1:
        raise ValueError("entries of A must be positive")
    cnt = Counter(A)
    return tuple(cnt.get(i, 0) for i in range(1, max(A) + 1))


def multiset(b: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`profile`."""
    return tuple(i + 1 for i, c in enumerate(b) for _ in range(c))


def char_closed_form(b: Sequence[int]) -> CharTable:
    """Nested Gaussian-binomial sum over the profile b = (b_1, ..., b_s)."""
    b = tuple(b)
    if not b:
        return CharTable.one()
    if b[-1] <= 0:
        raise ValueError("the last profile entry must be positive")
    s = len(b)
    prefix = [0]
    for x in b:
        prefix.append(prefix[-1] + x)  # prefix[l] = b_1 + ... + b_l
    acc: dict[tuple[int, int], int] = {}

    def walk(level: int, upper: int, z: int, q: int, coeff: QPoly):
        # level l chooses j_l in [0, upper]; upper = b_{l+1} + j_{l+1}
        if level == 0:
            for d, c in enumerate(coeff):
                if c:
                    acc[(z, q + d)] = acc.get((z, q + d), 0) + c
            return
        for j in range(upper + 1):
            nxt = b[level - 1] + j  # b_l + j_l bounds j_{l-1}
            walk(level - 1, nxt, z + j, q + j * (prefix[level] + j),
                 qmul(coeff, qbinomial(upper, j)))

    walk(s - 1, b[s - 1], 0, 0, (1,))
    return CharTable(acc).from_zq()


def aggregation_rhs(b: Sequence[int]) -> CharTable:
    """Right-hand side of the one-step profile aggregation, in plain normalization.

    sum_j ch(b_1..b_{s-2}, b_{s-1} + j) z^j q^{j(n - b_s + j)} [b_s, j]
    with both characters read after z -> zq.
    """
    b = tuple(b)
    s = len(b)
    n = sum(b)
    if s < 2:
        raise ValueError("need a profile with at least two entries")
    out = CharTable()
    for j in range(b[-1] + 1):
        sub = list(b[:-2]) + [b[-2] + j]
        inner = char_recurrence(multiset(sub)).to_zq()
        factor = {}
        for d, c in enumerate(qbinomial(b[-1], j)):
            if c:
                factor[(j, j * (n - b[-1] + j) + d)] = c
        prod = {}
        for (k1, s1), v1 in inner.items():
            for (k2, s2), v2 in factor.items():
                prod[(k1 + k2, s1 + s2)] = prod.get((k1 + k2, s1 + s2), 0) + v1 * v2
        out = out + CharTable(prod)
    return out.from_zq()


# --- Gordon's formula ---------------------------------------------------------------------

def gordon_form(N: Sequence[int]) -> int:
    """B(N, N) with B_ij = min(i, j), indices starting at 1."""
    return sum(min(i, j) * N[i - 1] * N[j - 1]
               for i in range(1, len(N) + 1) for j in range(1, len(N) + 1))


def gordon_form_tails(N: Sequence[int]) -> int:
    """Same quadratic form as a sum of squared tail sums."""
    r = len(N)
    return sum(sum(N[r - l:]) ** 2 for l in range(1, r + 1))


def inverse_qfactorial_series(n: int, smax: int) -> list[int]:
    """Coefficients of 1/(q)_n up to q^smax (partitions into parts <= n)."""
    c = [1] + [0] * smax
    for part in range(1, n + 1):
        for d in range(part, smax + 1):
            c[d] += c[d - part]
    return c


def gordon_truncated(k: int, zmax: int, smax: int) -> CharTable:
    """Window zdeg <= zmax, qdeg <= smax of the Gordon sum for level k.

    Returns the plain-normalized character of C[e_0, e_1, ...]/(e(z)^k).
    """
    if k < 2:
        raise ValueError("level must be at least 2")
    if zmax < 0 or smax < 0:
        raise ValueError("truncation bounds must be nonnegative")
    r = k - 1
    acc: dict[tuple[int, int], int] = {}
    ranges = [range(zmax // i + 1) for i in range(1, r + 1)]
    for N in product(*ranges):
        z = sum(i * x for i, x in enumerate(N, start=1))
        if z > zmax:
            continue
        b = gordon_form(N)
        if b != gordon_form_tails(N):
            raise AssertionError(f"quadratic form mismatch at N={N}")
        base = b - z
        if base > smax:
            continue
        series = [1] + [0] * (smax - base)
        for x in N:
            if x:
                inv = inverse_qfactorial_series(x, smax - base)
                series = [sum(series[i] * inv[d - i] for i in range(d + 1))
                          for d in range(smax - base + 1)]
        for d, c in enumerate(series):
            if c:
                acc[(z, base + d)] = acc.get((z, base + d), 0) + c
    return CharTable(acc)


def gordon_zmax(k: int, smax: int) -> int:
    """Largest z-degree reachable by a Gordon term of plain q-degree <= smax."""
    t = 0
    while (t + 1) * t <= smax:
        t += 1
    return (k - 1) * t
