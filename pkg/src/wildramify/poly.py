"""Sparse multivariate polynomials over GF(p^e).

A :class:`Polynomial` is a map from exponent tuples to nonzero field codes.
Values are never mutated after construction, so they can be shared freely.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import ArityMismatch, NotAPthPower, RingMismatch
from .field import FieldElem, FieldSpec

NEG_INF = float("-inf")
POS_INF = float("inf")


def grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


class PolyRing:
    """GF(p^e)[v_1, ..., v_n] with a fixed variable order."""

    def __init__(self, field: FieldSpec, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.field = field
        self.names = names
        self.nvars = len(names)
        self._zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.field == other.field and self.names == other.names

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.names)}]"

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no variable {name!r} in {self}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        code = self.field.coerce(c)
        return Polynomial(self, {self._zero_exp: code} if code else {})

    def var(self, name: str | int) -> "Polynomial":
        i = name if isinstance(name, int) else self.index(name)
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exps: 1})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], c=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ArityMismatch(f"exponent vector {exps} for {self.nvars} variables")
        code = self.field.coerce(c)
        return Polynomial(self, {exps: code} if code else {})

    def from_terms(self, terms: Iterable[tuple[Sequence[int], object]]) -> "Polynomial":
        acc: dict[tuple[int, ...], int] = {}
        F = self.field
        for exps, c in terms:
            exps = tuple(exps)
            if len(exps) != self.nvars:
                raise ArityMismatch(f"exponent vector {exps} for {self.nvars} variables")
            acc[exps] = F.add(acc.get(exps, 0), F.coerce(c))
        return Polynomial(self, {k: v for k, v in acc.items() if v})

    def parse(self, text: str) -> "Polynomial":
        from .parse import parse_poly
        return parse_poly(text, self)

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatch(f"{value.ring} vs {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)


class WeightedDegree(NamedTuple):
    value: float | int
    unique: bool
    argmax: tuple[int, ...] | None


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict[tuple[int, ...], int]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, FieldElem)):
            return self.ring.const(other)
        return NotImplemented

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        F = self.field
        out = dict(self.terms)
        if F.e == 1:
            p = F.p
            for k, v in other.terms.items():
                s = (out.get(k, 0) + v) % p
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        else:
            for k, v in other.terms.items():
                s = F.add(out.get(k, 0), v)
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial(self.ring, {k: F.neg(v) for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        F = self.field
        code = F.coerce(c)
        if code == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {k: F.mul(v, code) for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return self.ring.zero()
        F = self.field
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        acc: dict[tuple[int, ...], int] = {}
        if F.e == 1:
            p = F.p
            for ea, ca in a.items():
                for eb, cb in b.items():
                    k = tuple(x + y for x, y in zip(ea, eb))
                    acc[k] = acc.get(k, 0) + ca * cb
            return Polynomial(self.ring, {k: v % p for k, v in acc.items() if v % p})
        for ea, ca in a.items():
            for eb, cb in b.items():
                k = tuple(x + y for x, y in zip(ea, eb))
                acc[k] = F.add(acc.get(k, 0), F.mul(ca, cb))
        return Polynomial(self.ring, {k: v for k, v in acc.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative exponent")
        p = self.field.p
        result = self.ring.one()
        base = self
        # n = sum d_k p^k: f^n = prod (f^(p^k))^(d_k), with f^(p^k) by Frobenius.
        while n:
            n, d = divmod(n, p)
            if d:
                result = result * _small_pow(base, d)
            if n:
                base = base.frobenius()
        return result

    def frobenius(self) -> "Polynomial":
        """f^p, computed termwise (exact in characteristic p)."""
        F = self.field
        p = F.p
        return Polynomial(self.ring, {tuple(x * p for x in k): F.frob(v) for k, v in self.terms.items()})

    def pth_root(self) -> "Polynomial":
        F = self.field
        p = F.p
        out = {}
        for k, v in self.terms.items():
            if any(x % p for x in k):
                raise NotAPthPower(f"monomial {k} of {self} has an exponent prime to {p}")
            out[tuple(x // p for x in k)] = F.pth_root(v)
        return Polynomial(self.ring, out)

    def derivative(self, var: int | str = 0) -> "Polynomial":
        i = var if isinstance(var, int) else self.ring.index(var)
        F = self.field
        out = {}
        for k, v in self.terms.items():
            if k[i] % F.p:
                c = F.smul(k[i], v)
                if c:
                    kk = list(k)
                    kk[i] -= 1
                    out[tuple(kk)] = c
        return Polynomial(self.ring, out)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, FieldElem)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        from .parse import format_poly
        return format_poly(self)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(k) for k in self.terms)

    def constant_term(self) -> FieldElem:
        return FieldElem(self.field, self.terms.get(self.ring._zero_exp, 0))

    def coefficient(self, exps: Sequence[int]) -> FieldElem:
        return FieldElem(self.field, self.terms.get(tuple(exps), 0))

    def items(self) -> Iterator[tuple[tuple[int, ...], FieldElem]]:
        """Terms in descending graded-lex order."""
        F = self.field
        for k in sorted(self.terms, key=grlex_key, reverse=True):
            yield k, FieldElem(F, self.terms[k])

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.terms, key=grlex_key, reverse=True)

    def total_degree(self) -> float | int:
        if not self.terms:
            return NEG_INF
        return max(sum(k) for k in self.terms)

    def degree(self, var: int | str = 0) -> float | int:
        i = var if isinstance(var, int) else self.ring.index(var)
        if not self.terms:
            return NEG_INF
        return max(k[i] for k in self.terms)

    def variables_used(self) -> set[int]:
        return {i for k in self.terms for i, x in enumerate(k) if x}

    def coefficients_in(self, var: int | str) -> dict[int, "Polynomial"]:
        """Split as sum_j c_j * var^j; each c_j lives in the same ring, free of var."""
        i = var if isinstance(var, int) else self.ring.index(var)
        out: dict[int, dict] = {}
        for k, v in self.terms.items():
            kk = k[:i] + (0,) + k[i + 1:]
            out.setdefault(k[i], {})[kk] = v
        return {j: Polynomial(self.ring, t) for j, t in out.items()}

    def to_ring(self, ring: PolyRing) -> "Polynomial":
        """Re-embed into a ring with a superset of this ring's variable names."""
        if ring.field != self.field:
            raise RingMismatch(f"{self.ring} vs {ring}")
        pos = [ring.index(n) for n in self.ring.names]
        out = {}
        for k, v in self.terms.items():
            kk = [0] * ring.nvars
            for j, x in zip(pos, k):
                kk[j] = x
            out[tuple(kk)] = v
        return Polynomial(ring, out)

    # -- composition ------------------------------------------------------

    def substitute(self, images: Sequence) -> "Polynomial | FieldElem":
        return substitute(self, images)

    def __call__(self, *images):
        return substitute(self, images)


def _small_pow(f: Polynomial, d: int) -> Polynomial:
    result = None
    while d:
        if d & 1:
            result = f if result is None else result * f
        d >>= 1
        if d:
            f = f * f
    return result


def substitute(f: Polynomial, images: Sequence) -> Polynomial | FieldElem:
    """Compose f with one image per variable.

    Images may be Polynomials sharing a common ring (result is a Polynomial
    there) or field constants (result is the FieldElem value).
    """
    if len(images) != f.ring.nvars:
        raise ArityMismatch(f"{len(images)} images for {f.ring.nvars} variables")
    F = f.field
    target = None
    for img in images:
        if isinstance(img, Polynomial):
            if target is None:
                target = img.ring
            elif img.ring != target:
                raise RingMismatch(f"images live in {target} and {img.ring}")
            if img.field != F:
                raise RingMismatch(f"image over {img.field}, polynomial over {F}")
        elif isinstance(img, FieldElem):
            if img.spec != F:
                raise RingMismatch(f"image over {img.spec}, polynomial over {F}")
    if target is None:
        vals = [F.coerce(img) for img in images]
        total = 0
        for k, v in f.terms.items():
            t = v
            for x, e in zip(vals, k):
                if e:
                    t = F.mul(t, F.pow(x, e))
            total = F.add(total, t)
        return FieldElem(F, total)
    imgs = [img if isinstance(img, Polynomial) else target.const(img) for img in images]
    powers: list[dict[int, Polynomial]] = [{0: target.one(), 1: img} for img in imgs]

    def power(i: int, e: int) -> Polynomial:
        cache = powers[i]
        if e not in cache:
            cache[e] = imgs[i] ** e
        return cache[e]

    # Horner-style sharing: products of prefixes are memoised.
    prefix: dict[tuple[int, ...], Polynomial] = {(): target.one()}

    def prefix_product(k: tuple[int, ...]) -> Polynomial:
        if k in prefix:
            return prefix[k]
        val = prefix_product(k[:-1])
        e = k[-1]
        if e:
            val = val * power(len(k) - 1, e)
        prefix[k] = val
        return val

    acc: dict[tuple[int, ...], int] = {}
    for k, v in f.terms.items():
        # drop trailing zero exponents so shared prefixes coincide
        kk = k
        while kk and kk[-1] == 0:
            kk = kk[:-1]
        prod = prefix_product(kk)
        for m, c in prod.terms.items():
            acc[m] = F.add(acc.get(m, 0), F.mul(c, v))
    return Polynomial(target, {m: c for m, c in acc.items() if c})


def weighted_degree(f: Polynomial, weights: Sequence[int]) -> WeightedDegree:
    """Max of sum(w_i * e_i) over the support, and whether one monomial attains it."""
    if len(weights) != f.ring.nvars:
        raise ArityMismatch(f"{len(weights)} weights for {f.ring.nvars} variables")
    if not f.terms:
        return WeightedDegree(NEG_INF, False, None)
    best = None
    count = 0
    arg = None
    for k in f.terms:
        w = sum(a * b for a, b in zip(weights, k))
        if best is None or w > best:
            best, count, arg = w, 1, k
        elif w == best:
            count += 1
    return WeightedDegree(best, count == 1, arg if count == 1 else None)


class UnivariateLocal:
    """A polynomial in one variable z, seen at the point at infinity.

    The valuation is nu_inf(f) = -deg_z(f), with nu_inf(0) = +inf.
    """

    __slots__ = ("poly",)

    def __init__(self, poly: Polynomial):
        if poly.ring.nvars != 1:
            raise ArityMismatch(f"UnivariateLocal needs a one-variable ring, got {poly.ring}")
        self.poly = poly

    @property
    def ring(self) -> PolyRing:
        return self.poly.ring

    @property
    def degree(self) -> float | int:
        return self.poly.degree(0)

    @property
    def nu_inf(self) -> float | int:
        return -self.poly.degree(0) if self.poly.terms else POS_INF

    def leading_coefficient(self) -> FieldElem:
        if not self.poly.terms:
            return FieldElem(self.poly.field, 0)
        return self.poly.coefficient((self.poly.degree(0),))

    def __eq__(self, other):
        if isinstance(other, UnivariateLocal):
            return self.poly == other.poly
        return NotImplemented

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return f"UnivariateLocal({self.poly!r})"


def restrict_fiber(f: Polynomial, y: Sequence, z: int | str = 0) -> UnivariateLocal:
    """Substitute the non-z variables by the constants y (in ring order)."""
    ring = f.ring
    zi = z if isinstance(z, int) else ring.index(z)
    others = [i for i in range(ring.nvars) if i != zi]
    if len(y) != len(others):
        raise ArityMismatch(f"fiber point has {len(y)} coordinates, expected {len(others)}")
    F = ring.field
    vals = [F.coerce(c) for c in y]
    target = univariate_ring(F, ring.names[zi])
    acc: dict[tuple[int], int] = {}
    for k, v in f.terms.items():
        t = v
        for x, i in zip(vals, others):
            if k[i]:
                t = F.mul(t, F.pow(x, k[i]))
                if not t:
                    break
        if t:
            key = (k[zi],)
            acc[key] = F.add(acc.get(key, 0), t)
    return UnivariateLocal(Polynomial(target, {k: v for k, v in acc.items() if v}))


def univariate_ring(field: FieldSpec, name: str = "z") -> PolyRing:
    return PolyRing(field, (name,))


def gcd_of(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g
