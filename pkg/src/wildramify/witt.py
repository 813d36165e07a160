"""Truncated p-typical Witt vectors.

The addition law is solved once per (p, r) over the integers from ghost
additivity; every division by p^n along the way is checked to be exact.
Over a ring of characteristic p the integer law is reduced mod p and
evaluated with :func:`wildramify.poly.substitute`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import LengthCapExceeded, RingMismatch
from .field import FieldElem, FieldSpec
from .poly import Polynomial, PolyRing

MAX_LEVEL = 4

ZPoly = dict  # exponent tuple -> int


# -- integer polynomial helpers ----------------------------------------------

def _zadd(a: ZPoly, b: ZPoly, sign: int = 1) -> ZPoly:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + sign * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _zmul(a: ZPoly, b: ZPoly) -> ZPoly:
    out: ZPoly = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def _zpow(a: ZPoly, n: int, nvars: int) -> ZPoly:
    result: ZPoly = {(0,) * nvars: 1}
    while n:
        if n & 1:
            result = _zmul(result, a)
        n >>= 1
        if n:
            a = _zmul(a, a)
    return result


def _zvar(i: int, nvars: int) -> ZPoly:
    return {tuple(1 if j == i else 0 for j in range(nvars)): 1}


def _ghost_poly(p: int, n: int, offset: int, nvars: int) -> ZPoly:
    """sum_{i<=n} p^i * v_{offset+i}^(p^(n-i))"""
    out: ZPoly = {}
    for i in range(n + 1):
        k = [0] * nvars
        k[offset + i] = p ** (n - i)
        out[tuple(k)] = p**i
    return out


def ghost(w: Sequence[int], p: int) -> list[int]:
    """Ghost components gh_n = sum_{i<=n} p^i * w_i^(p^(n-i)) of an integer Witt vector."""
    return [sum(p**i * w[i] ** (p ** (n - i)) for i in range(n + 1)) for n in range(len(w))]


@dataclass(frozen=True)
class WittAdditionLaw:
    """S_0..S_r over Z in variables (x_0..x_r, y_0..y_r)."""

    p: int
    r: int
    S: tuple[ZPoly, ...]

    @property
    def nvars(self) -> int:
        return 2 * (self.r + 1)

    def check_ghost_additivity(self) -> bool:
        p, r, nv = self.p, self.r, self.nvars
        for n in range(r + 1):
            lhs: ZPoly = {}
            for i in range(n + 1):
                lhs = _zadd(lhs, {k: v * p**i for k, v in _zpow(self.S[i], p ** (n - i), nv).items()})
            rhs = _zadd(_ghost_poly(p, n, 0, nv), _ghost_poly(p, n, r + 1, nv))
            if lhs != rhs:
                return False
        return True

    def evaluate(self, n: int, x: Sequence[int], y: Sequence[int]) -> int:
        vals = list(x) + list(y)
        total = 0
        for k, c in self.S[n].items():
            t = c
            for v, e in zip(vals, k):
                if e:
                    t *= v**e
            total += t
        return total


@lru_cache(maxsize=None)
def addition_law(p: int, r: int) -> WittAdditionLaw:
    if r > MAX_LEVEL:
        raise LengthCapExceeded(f"Witt length {r + 1} exceeds the cap {MAX_LEVEL + 1}")
    if r < 0:
        raise ValueError("level r must be nonnegative")
    nv = 2 * (r + 1)
    S: list[ZPoly] = []
    for n in range(r + 1):
        num = _zadd(_ghost_poly(p, n, 0, nv), _ghost_poly(p, n, r + 1, nv))
        for i in range(n):
            num = _zadd(num, {k: v * p**i for k, v in _zpow(S[i], p ** (n - i), nv).items()}, -1)
        pn = p**n
        for k, v in num.items():
            if v % pn:
                raise AssertionError(f"non-integral Witt addition polynomial at p={p}, n={n}")
        S.append({k: v // pn for k, v in num.items()})
    law = WittAdditionLaw(p, r, tuple(S))
    assert law.check_ghost_additivity()
    return law


@lru_cache(maxsize=None)
def _residuals(p: int, r: int, field: FieldSpec) -> tuple[Polynomial, ...]:
    """R_n = S_n - x_n - y_n mod p as polynomials in (x_0..x_{n-1}, y_0..y_{n-1})."""
    law = addition_law(p, r)
    out = []
    for n in range(r + 1):
        ring = PolyRing(field, [f"x{i}" for i in range(n)] + [f"y{i}" for i in range(n)])
        terms = []
        for k, c in law.S[n].items():
            if k[n] or k[r + 1 + n]:
                continue  # the linear part x_n + y_n
            kk = k[:n] + k[r + 1:r + 1 + n]
            terms.append((kk, c % p))
        out.append(ring.from_terms(terms))
    return tuple(out)


def _field_of(x) -> FieldSpec | None:
    if isinstance(x, Polynomial):
        return x.field
    if isinstance(x, FieldElem):
        return x.spec
    return None


def _ring_key(x):
    if isinstance(x, Polynomial):
        return ("poly", x.ring)
    if isinstance(x, FieldElem):
        return ("field", x.spec)
    if isinstance(x, int):
        return ("int",)
    raise TypeError(f"unsupported Witt entry {x!r}")


class WittVector:
    """A Witt vector of length r+1; entries are ints, FieldElems or Polynomials."""

    __slots__ = ("p", "entries")

    def __init__(self, p: int, entries: Sequence):
        entries = tuple(entries)
        if not entries:
            raise ValueError("Witt vectors have length at least 1")
        keys = {_ring_key(x) for x in entries}
        if len(keys) != 1:
            raise RingMismatch(f"Witt entries from different rings: {sorted(map(str, keys))}")
        F = _field_of(entries[0])
        if F is not None and F.p != p:
            raise RingMismatch(f"Witt vector for p={p} over a field of characteristic {F.p}")
        self.p = p
        self.entries = entries

    @classmethod
    def zero_like(cls, p: int, length: int, like) -> "WittVector":
        return cls(p, [_zero_like(like)] * length)

    @property
    def length(self) -> int:
        return len(self.entries)

    @property
    def r(self) -> int:
        return len(self.entries) - 1

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if isinstance(other, WittVector):
            return self.p == other.p and self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.entries))

    def __repr__(self):
        return "(" + ", ".join(repr(x) for x in self.entries) + ")"

    def is_zero(self) -> bool:
        return all(_is_zero(x) for x in self.entries)

    def __add__(self, other):
        return witt_add(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __sub__(self, other):
        return witt_add(self, witt_neg(other))

    def frobenius(self) -> "WittVector":
        return frobenius_w(self)

    def verschiebung(self) -> "WittVector":
        return verschiebung(self)

    def truncate(self, length: int) -> "WittVector":
        return WittVector(self.p, self.entries[:length])

    def times(self, n: int) -> "WittVector":
        """n-fold sum (n >= 0)."""
        result = WittVector.zero_like(self.p, self.length, self.entries[0])
        base = self
        while n:
            if n & 1:
                result = result + base
            n >>= 1
            if n:
                base = base + base
        return result


def _zero_like(x):
    if isinstance(x, Polynomial):
        return x.ring.zero()
    if isinstance(x, FieldElem):
        return FieldElem(x.spec, 0)
    return 0


def _is_zero(x) -> bool:
    if isinstance(x, Polynomial):
        return x.is_zero()
    if isinstance(x, FieldElem):
        return x.value == 0
    return x == 0


def _check_pair(a: WittVector, b: WittVector) -> None:
    if a.p != b.p or a.length != b.length:
        raise RingMismatch(f"Witt vectors (p={a.p}, len={a.length}) vs (p={b.p}, len={b.length})")
    if _ring_key(a.entries[0]) != _ring_key(b.entries[0]):
        raise RingMismatch("Witt vectors over different coefficient rings")


def _residual(p: int, r: int, n: int, field: FieldSpec, xs: Sequence, ys: Sequence):
    if n == 0 or all(_is_zero(v) for v in ys) or all(_is_zero(v) for v in xs):
        return None
    R = _residuals(p, r, field)[n]
    return R.substitute(list(xs[:n]) + list(ys[:n]))


def witt_add(a: WittVector, b: WittVector) -> WittVector:
    _check_pair(a, b)
    p, r = a.p, a.r
    x0 = a.entries[0]
    if isinstance(x0, int):
        law = addition_law(p, r)
        return WittVector(p, [law.evaluate(n, a.entries, b.entries) for n in range(r + 1)])
    F = _field_of(x0)
    out = []
    for n in range(r + 1):
        s = a.entries[n] + b.entries[n]
        res = _residual(p, r, n, F, a.entries, b.entries)
        if res is not None:
            s = s + res
        out.append(s)
    return WittVector(p, out)


def witt_neg(a: WittVector) -> WittVector:
    """Triangular solve of a + n = 0: n_k = -a_k - R_k(a_<k, n_<k)."""
    p, r = a.p, a.r
    x0 = a.entries[0]
    out: list = []
    if isinstance(x0, int):
        law = addition_law(p, r)
        for k in range(r + 1):
            # S_k = x_k + y_k + R_k; evaluate R_k with y_k = 0 and x_k = 0
            xs = list(a.entries[:k]) + [0] * (r + 1 - k)
            ys = out + [0] * (r + 1 - k)
            out.append(-a.entries[k] - law.evaluate(k, xs, ys))
        return WittVector(p, out)
    F = _field_of(x0)
    for k in range(r + 1):
        nk = -a.entries[k]
        res = _residual(p, r, k, F, a.entries, out)
        if res is not None:
            nk = nk - res
        out.append(nk)
    return WittVector(p, out)


def frobenius_w(a: WittVector) -> WittVector:
    x0 = a.entries[0]
    if isinstance(x0, int):
        raise TypeError("entrywise Frobenius needs a characteristic-p coefficient ring")
    return WittVector(a.p, [x.frobenius() for x in a.entries])


def verschiebung(a: WittVector) -> WittVector:
    """(a_0, ..., a_{r-1}) -> (0, a_0, ..., a_{r-1}); the length grows by one."""
    return WittVector(a.p, [_zero_like(a.entries[0])] + list(a.entries))


def one_minus_F(g: WittVector) -> WittVector:
    return witt_add(g, witt_neg(frobenius_w(g)))


def witt_from_entry(p: int, length: int, index: int, value) -> WittVector:
    """The vector V^index(value, 0, ...) of the given length."""
    z = _zero_like(value)
    return WittVector(p, [value if i == index else z for i in range(length)])
