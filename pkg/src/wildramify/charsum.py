"""Exact exponential sums over GF(p^n) and the L-polynomial degree they imply.

For f in GF(p)[x] the sums S_n = sum_{x in GF(p^n)} zeta_p^Tr(f(x)) are
computed exactly in Z[zeta_p].  For a nontrivial Artin-Schreier sheaf on the
affine line the L-function is a polynomial prod (1 - alpha_i T) with
sum_i alpha_i^n = -S_n, so Newton's identities recover its coefficients and
the degree, which is Swan at infinity minus one.

Points of GF(p^n) are enumerated as powers of a root of a primitive
polynomial; the traces Tr(theta^t) form a linear recurring sequence that is
generated with numpy by repeated doubling.  None of this goes through
:class:`wildramify.field.FieldSpec`, so the oracle is independent of the
field arithmetic it is used to check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from .errors import CapExceeded, InsufficientDepth, TrivialClass, enumeration_cap
from .field import first_primitive, gfp_powmod
from .poly import Polynomial
from .swan import remove_p_powers
from .witt import WittVector

CHUNK = 1 << 22


class CycNum:
    """An element of Q(zeta_p), stored as integer coordinates over 1, zeta, ..., zeta^(p-2) and a denominator."""

    __slots__ = ("p", "num", "den")

    def __init__(self, p: int, num: Sequence[int], den: int = 1):
        num = [int(c) for c in num]
        if len(num) == p:
            top = num[-1]
            num = [c - top for c in num[:-1]]
        if len(num) != p - 1:
            raise ValueError(f"expected {p - 1} coordinates, got {len(num)}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = [-c for c in num], -den
        g = gcd(den, *num) if any(num) else den
        self.p = p
        self.num = tuple(c // g for c in num)
        self.den = den // g

    @classmethod
    def from_int(cls, p: int, k: int) -> "CycNum":
        return cls(p, [k] + [0] * (p - 2))

    @classmethod
    def zeta(cls, p: int, a: int = 1) -> "CycNum":
        full = [0] * p
        full[a % p] = 1
        return cls(p, full)

    def _full(self) -> list[int]:
        return list(self.num) + [0]

    def _check(self, other) -> "CycNum":
        if isinstance(other, int):
            return CycNum.from_int(self.p, other)
        if not isinstance(other, CycNum) or other.p != self.p:
            raise TypeError(f"cannot combine with {other!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        d = self.den * other.den
        return CycNum(self.p, [a * other.den + b * self.den for a, b in zip(self.num, other.num)], d)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.p, [-a for a in self.num], self.den)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        p = self.p
        a, b = self._full(), other._full()
        out = [0] * p
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[(i + j) % p] += x * y
        return CycNum(p, out, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return CycNum(self.p, self.num, self.den * k)

    def galois(self, k: int) -> "CycNum":
        """Image under zeta -> zeta^k (k prime to p)."""
        p = self.p
        if k % p == 0:
            raise ValueError("k must be prime to p")
        out = [0] * p
        for i, x in enumerate(self._full()):
            out[(i * k) % p] += x
        return CycNum(p, out, self.den)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycNum.from_int(self.p, other)
        if isinstance(other, CycNum):
            return (self.p, self.num, self.den) == (other.p, other.num, other.den)
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.num, self.den))

    def __repr__(self):
        body = "(" + ", ".join(map(str, self.num)) + ")"
        return body if self.den == 1 else f"{body}/{self.den}"


# -- trace sequences --------------------------------------------------------------

def _initial_traces(m: Sequence[int], p: int) -> list[int]:
    """Power sums P_0..P_(n-1) of the roots of the monic m (Newton over GF(p))."""
    n = len(m) - 1
    c = [m[n - i] for i in range(n + 1)]  # m = T^n + c_1 T^(n-1) + ... + c_n
    P = [n % p]
    for k in range(1, n):
        s = k * c[k]
        for i in range(1, k):
            s += c[i] * P[k - i]
        P.append((-s) % p)
    return P


def trace_sequence(p: int, n: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """s_t = Tr(theta^t) for 0 <= t < p^n - 1, theta a root of the first primitive polynomial."""
    m = first_primitive(p, n)
    period = p**n - 1
    # n products of residues must fit while a doubling step accumulates
    bound = n * (p - 1) ** 2 + p
    dtype = np.int16 if bound < 2**15 else np.int32 if bound < 2**31 else np.int64
    s = _initial_traces(m, p)
    start = min(period, max(4 * n, 256))
    while len(s) < max(start, n):
        t = len(s) - n
        s.append((-sum(m[i] * s[t + i] for i in range(n))) % p)
    arr = np.array(s, dtype=dtype)
    while len(arr) < period:
        K = len(arr)
        L = K - n + 1
        w = gfp_powmod([0, 1], L, list(m), p)
        new = np.zeros(L, dtype=dtype)
        for i, wi in enumerate(w):
            if wi:
                new += arr[i:i + L] * dtype(wi)
        new %= p
        arr = np.concatenate([arr[:L], new])
    return arr[:period], m


def _value_counts(f: Polynomial, n: int) -> list[int]:
    """N_a = #{x in GF(p^n) : Tr f(x) = a} for a in 0..p-1."""
    p = f.field.p
    q = p**n
    period = q - 1
    s, _ = trace_sequence(p, n)
    terms = [(k[0] if k else 0, c) for k, c in f.terms.items()]
    counts = np.zeros(p, dtype=np.int64)
    for lo in range(0, period, CHUNK):
        ks = np.arange(lo, min(period, lo + CHUNK), dtype=np.int64)
        acc = np.zeros(len(ks), dtype=np.int64)
        for j, c in terms:
            acc += c * s[(j * ks) % period]
        counts += np.bincount(acc % p, minlength=p)
    c0 = f.terms.get((0,) * f.ring.nvars, 0)
    counts[(n * c0) % p] += 1
    return [int(x) for x in counts]


def exp_sum(f: Polynomial, n: int, cap: int | None = None) -> CycNum:
    """sum over x in GF(p^n) of zeta_p^Tr(f(x)), exactly."""
    if f.field.e != 1:
        raise ValueError("exponential sums are implemented over prime fields only")
    if f.ring.nvars > 1:
        raise ValueError("exponential sums need a univariate polynomial")
    if n < 1:
        raise ValueError("extension degree must be positive")
    p = f.field.p
    limit = enumeration_cap(cap)
    if p**n > limit:
        raise CapExceeded(f"GF({p}^{n}) has {p**n} points, cap is {limit}")
    return CycNum(p, _value_counts(f, n))


# -- L-polynomial degree ------------------------------------------------------------

@dataclass(frozen=True)
class LDegree:
    degree: int
    inferred_swan: int
    sums: tuple[CycNum, ...]
    elementary: tuple[CycNum, ...]

    def to_json(self) -> dict:
        return {"S": [list(s.num) for s in self.sums], "degree": self.degree,
                "inferred_swan": self.inferred_swan}


def newton_elementary(power_sums: Sequence[CycNum]) -> list[CycNum]:
    """e_0..e_N from p_1..p_N: k*e_k = sum_{i=1..k} (-1)^(i-1) e_(k-i) p_i."""
    p = power_sums[0].p
    e = [CycNum.from_int(p, 1)]
    for k in range(1, len(power_sums) + 1):
        acc = CycNum.from_int(p, 0)
        for i in range(1, k + 1):
            term = e[k - i] * power_sums[i - 1]
            acc = acc + term if i % 2 else acc - term
        e.append(acc / k)
    return e


def newton_power_sums(e: Sequence[CycNum], count: int) -> list[CycNum]:
    """p_1..p_count from e_0..e_D (e_k = 0 beyond D)."""
    p = e[0].p
    zero = CycNum.from_int(p, 0)

    def el(i):
        return e[i] if i < len(e) else zero

    out: list[CycNum] = []
    for k in range(1, count + 1):
        acc = el(k) * k
        if k % 2 == 0:
            acc = -acc
        for i in range(1, k):
            term = el(i) * out[k - i - 1]
            acc = acc + term if i % 2 else acc - term
        out.append(acc)
    return out


def l_degree(f: Polynomial, maxn: int, cap: int | None = None) -> LDegree:
    """Degree of the L-polynomial of the Artin-Schreier sheaf of f on the affine line."""
    p = f.field.p
    h, _ = remove_p_powers(WittVector(p, [f]))
    if h.entries[0].is_constant():
        raise TrivialClass(f"{f!r} is constant modulo (1 - F)")
    sums = tuple(exp_sum(f, k, cap) for k in range(1, maxn + 1))
    power = [-s for s in sums]
    e = newton_elementary(power)
    degree = max((k for k in range(len(e)) if not e[k].is_zero()), default=0)
    if degree > maxn - 2:
        raise InsufficientDepth(
            f"coefficient e_{degree} is nonzero with maxn={maxn}; need maxn >= degree + 2")
    back = newton_power_sums(e[: degree + 1], maxn)
    if back != power:
        raise AssertionError("Newton round trip failed to reproduce the power sums")
    return LDegree(degree, degree + 1, sums, tuple(e[: degree + 1]))
