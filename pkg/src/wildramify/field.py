"""Exact arithmetic in GF(p^e).

Elements are encoded internally as integers in ``[0, p^e)``: the base-p digits
are the coefficients of the element in the power basis ``1, g, ..., g^(e-1)``
where ``g`` is a root of the defining modulus.  :class:`FieldElem` is the thin
public wrapper; polynomials store the raw integer codes.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import DivisionByZero, RingMismatch, SchemaError

_TABLE_LIMIT = 2**16


# -- dense univariate polynomials over GF(p), coefficient lists low -> high ----

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def gfp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def gfp_rem(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        if c:
            for i, mc in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mc) % p
        a.pop()
        _trim(a)
    return a


def gfp_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def gfp_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, gfp_rem(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def gfp_powmod(base: Sequence[int], exp: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = gfp_rem(base, m, p)
    while exp:
        if exp & 1:
            result = gfp_rem(gfp_mul(result, base, p), m, p)
        exp >>= 1
        if exp:
            base = gfp_rem(gfp_mul(base, base, p), m, p)
    return result


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return prime_factors(n) == [n]


def is_irreducible(m: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p)."""
    e = len(m) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    x = [0, 1]
    if gfp_sub(gfp_powmod(x, p**e, m, p), x, p):
        return False
    for ell in prime_factors(e):
        h = gfp_sub(gfp_powmod(x, p ** (e // ell), m, p), x, p)
        if len(gfp_gcd(h, m, p)) != 1:
            return False
    return True


def _digits(code: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        code, d = divmod(code, p)
        out.append(d)
    return out


def first_irreducible(p: int, e: int) -> tuple[int, ...]:
    """First monic irreducible of degree e, scanning lower coefficients as base-p integers."""
    for k in range(p**e):
        m = _digits(k, p, e) + [1]
        if m[0] != 0 and is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


def first_primitive(p: int, e: int) -> tuple[int, ...]:
    """First monic irreducible of degree e whose root generates GF(p^e)^*."""
    q1 = p**e - 1
    ells = prime_factors(q1)
    for k in range(p**e):
        m = _digits(k, p, e) + [1]
        if m[0] == 0 or not is_irreducible(m, p):
            continue
        if all(gfp_powmod([0, 1], q1 // ell, m, p) != [1] for ell in ells):
            return tuple(m)
    raise AssertionError("unreachable: primitive polynomials exist in every degree")


class FieldSpec:
    """GF(p^e) presented as GF(p)[g]/(modulus)."""

    def __init__(self, p: int, e: int = 1, modulus: Iterable[int] | None = None):
        if not isinstance(p, int) or p >= 2**31 or not is_prime(p):
            raise SchemaError("p", f"{p} is not a prime below 2^31")
        if not isinstance(e, int) or e < 1:
            raise SchemaError("e", f"extension degree must be a positive integer, got {e!r}")
        if modulus is None or (e == 1 and not list(modulus)):
            mod = first_irreducible(p, e) if e > 1 else (0, 1)
        else:
            mod = tuple(int(c) % p for c in modulus)
            if len(mod) != e + 1 or mod[-1] != 1:
                raise SchemaError("modulus", f"expected {e + 1} coefficients of a monic polynomial")
            if not is_irreducible(list(mod), p):
                raise SchemaError("modulus", f"{list(mod)} is reducible over GF({p})")
        self.p = p
        self.e = e
        self.modulus = mod
        self.q = p**e

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.e, self.modulus) == (
            other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={list(self.modulus)})"

    def to_json(self) -> dict:
        doc = {"p": self.p, "e": self.e}
        if self.e > 1:
            doc["modulus"] = list(self.modulus)
        return doc

    # -- encoding ---------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        return _digits(a, self.p, self.e)

    def from_digits(self, ds: Sequence[int]) -> int:
        code = 0
        for d in reversed(list(ds)):
            code = code * self.p + d % self.p
        return code

    def __call__(self, value) -> "FieldElem":
        return FieldElem(self, self.coerce(value))

    def coerce(self, value) -> int:
        if isinstance(value, FieldElem):
            if value.spec != self:
                raise RingMismatch(f"{value.spec} element used in {self}")
            return value.value
        if isinstance(value, int):
            return value % self.p
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def gen(self) -> "FieldElem":
        if self.e == 1:
            raise SchemaError("g", "GF(p) has no extension generator")
        return FieldElem(self, self.p)

    def elements(self) -> list["FieldElem"]:
        return [FieldElem(self, a) for a in range(self.q)]

    # -- arithmetic on integer codes --------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.e == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        res, mult = 0, 1
        while a or b:
            res += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return res

    def neg(self, a: int) -> int:
        p = self.p
        if self.e == 1:
            return -a % p
        if p == 2:
            return a
        res, mult = 0, 1
        while a:
            res += (-(a % p) % p) * mult
            a //= p
            mult *= p
        return res

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def smul(self, k: int, a: int) -> int:
        """Multiply by the integer k (reduced mod p)."""
        k %= self.p
        if self.e == 1:
            return k * a % self.p
        return self.from_digits([k * d for d in self.digits(a)])

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]] | None:
        if self.e == 1 or self.q > _TABLE_LIMIT:
            return None
        prim = self.from_digits(_primitive_root_digits(self.p, self.e, self.modulus))
        exp = [0] * (self.q - 1)
        log = [0] * self.q
        cur = 1
        for k in range(self.q - 1):
            exp[k] = cur
            log[cur] = k
            cur = self._mul_slow(cur, prim)
        return exp, log

    def _mul_slow(self, a: int, b: int) -> int:
        prod = gfp_rem(gfp_mul(self.digits(a), self.digits(b), self.p), self.modulus, self.p)
        return self.from_digits(prod)

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        tables = self._tables
        if tables is None:
            return self._mul_slow(a, b)
        exp, log = tables
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if self.e == 1:
            return pow(a, n, self.p)
        if a == 0:
            return 1 if n == 0 else 0
        tables = self._tables
        if tables is not None:
            exp, log = tables
            return exp[log[a] * n % (self.q - 1)]
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self}")
        return self.pow(a, self.q - 2)

    def frob(self, a: int) -> int:
        return self.pow(a, self.p)

    def pth_root(self, a: int) -> int:
        return self.pow(a, self.p ** (self.e - 1))

    def trace(self, a: int) -> int:
        """Absolute trace to GF(p), returned as an integer in [0, p)."""
        total, cur = 0, a
        for _ in range(self.e):
            total = self.add(total, cur)
            cur = self.frob(cur)
        assert total < self.p
        return total

    def solve_artin_schreier(self, c: int) -> int | None:
        """Some s with s^p - s = c, or None when the trace of c is nonzero."""
        if self.trace(c):
            return None
        if c == 0:
            return 0
        # s -> s^p - s is GF(p)-linear; solve it on the power basis.
        p, e = self.p, self.e
        cols = [self.digits(self.sub(self.frob(b), b)) for b in (p**i for i in range(e))]
        rows = [[cols[j][i] for j in range(e)] + [d] for i, d in enumerate(self.digits(c))]
        sol = _solve_mod_p(rows, e, p)
        s = self.from_digits(sol)
        assert self.sub(self.frob(s), s) == c
        return s


def _solve_mod_p(rows: list[list[int]], ncols: int, p: int) -> list[int]:
    """Any solution of a consistent augmented linear system over GF(p)."""
    rows = [r[:] for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    sol = [0] * ncols
    for i, col in enumerate(pivots):
        sol[col] = rows[i][-1]
    return sol


@lru_cache(maxsize=None)
def _primitive_root_digits(p: int, e: int, modulus: tuple[int, ...]) -> list[int]:
    q1 = p**e - 1
    ells = prime_factors(q1)
    for k in range(1, p**e):
        cand = _digits(k, p, e)
        if all(gfp_powmod(cand, q1 // ell, modulus, p) != [1] for ell in ells):
            return cand
    raise AssertionError("unreachable: finite fields have primitive roots")


@lru_cache(maxsize=None)
def GF(p: int, e: int = 1, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    """Cached field constructor; identical arguments share one FieldSpec."""
    return FieldSpec(p, e, modulus)


class FieldElem:
    """An element of GF(p^e); immutable."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value: int):
        self.spec = spec
        self.value = value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.spec.digits(self.value))

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.spec != self.spec:
                raise RingMismatch(f"{self.spec} vs {other.spec}")
            return other.value
        if isinstance(other, int):
            return other % self.spec.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElem(self.spec, self.spec.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElem(self.spec, self.spec.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElem(self.spec, self.spec.sub(b, self.value))

    def __neg__(self):
        return FieldElem(self.spec, self.spec.neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElem(self.spec, self.spec.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElem(self.spec, self.spec.mul(self.value, self.spec.inv(b)))

    def __pow__(self, n: int):
        return FieldElem(self.spec, self.spec.pow(self.value, n))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.spec, self.spec.inv(self.value))

    def pth_root(self) -> "FieldElem":
        return FieldElem(self.spec, self.spec.pth_root(self.value))

    def frobenius(self) -> "FieldElem":
        return FieldElem(self.spec, self.spec.frob(self.value))

    def trace(self) -> int:
        return self.spec.trace(self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.spec.p and (self.value < self.spec.p)
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.value))

    def __repr__(self):
        from .parse import format_constant
        return format_constant(self.spec, self.value)
