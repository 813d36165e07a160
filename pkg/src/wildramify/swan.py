"""Artin-Schreier-Witt data and Swan conductors at infinity.

A datum ``f = (f_0, ..., f_r)`` is a Witt vector of polynomials in
``(z, x_1, ..., x_n)``; it defines a rank-one sheaf whose isomorphism class
only depends on ``f`` modulo ``(1 - F)``.  On a fiber (all ``x_i`` fixed)
the Swan conductor at ``z = infinity`` is read off a normalized
representative and certified either by the unique-maximum criterion or by
comparing the filtration level ``a`` with the level ``c`` of
``sum_i f_i^(p^(r-i) - 1) df_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .errors import CapExceeded, enumeration_cap
from .field import FieldElem, FieldSpec
from .poly import NEG_INF, Polynomial, PolyRing, UnivariateLocal, restrict_fiber
from .witt import WittVector, one_minus_F, witt_add, witt_from_entry

ABC = "ABC"
BRYL_NICE = "BRYL_NICE"
TRIVIAL_CLASS = "TRIVIAL_CLASS"


@dataclass(frozen=True)
class ASWDatum:
    field: FieldSpec
    vars: tuple[str, ...]
    r: int
    f: WittVector

    def __post_init__(self):
        if self.f.length != self.r + 1:
            raise ValueError(f"level r={self.r} needs {self.r + 1} components, got {self.f.length}")
        if self.f.p != self.field.p:
            raise ValueError("Witt prime differs from the field characteristic")
        for c in self.f:
            if not isinstance(c, Polynomial) or c.ring != self.ring:
                raise ValueError(f"component {c!r} is not in {self.ring}")

    @property
    def ring(self) -> PolyRing:
        return PolyRing(self.field, self.vars)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def n(self) -> int:
        return len(self.vars) - 1

    @classmethod
    def from_strings(cls, field: FieldSpec, vars: Sequence[str], r: int,
                     components: Sequence[str]) -> "ASWDatum":
        ring = PolyRing(field, vars)
        return cls(field, tuple(vars), r, WittVector(field.p, [ring.parse(c) for c in components]))

    def with_components(self, comps: Sequence[Polynomial]) -> "ASWDatum":
        return ASWDatum(self.field, self.vars, self.r, WittVector(self.p, comps))

    def fiber(self, y: Sequence) -> "LocalASW":
        return LocalASW(self.p, self.r, WittVector(self.p, [restrict_fiber(c, y).poly for c in self.f]))

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "vars": list(self.vars), "r": self.r,
                "components": [repr(c) for c in self.f]}


@dataclass(frozen=True)
class LocalASW:
    """A Witt vector of one-variable polynomials, viewed at z = infinity."""

    p: int
    r: int
    f: WittVector

    @classmethod
    def from_polys(cls, comps: Sequence[Polynomial]) -> "LocalASW":
        comps = list(comps)
        return cls(comps[0].field.p, len(comps) - 1, WittVector(comps[0].field.p, comps))

    @property
    def components(self) -> list[UnivariateLocal]:
        return [UnivariateLocal(c) for c in self.f]


@dataclass(frozen=True)
class SwanReport:
    swan: int
    a: int
    c: int | float
    exact: bool
    certificates: tuple[str, ...] = ()
    representative: WittVector | None = field(default=None, compare=False)

    @property
    def certificate(self) -> str | None:
        return self.certificates[0] if self.certificates else None

    @property
    def rank(self) -> int:
        return 1

    @property
    def dimtot(self) -> int:
        return self.rank + self.swan

    def to_json(self) -> dict:
        return {"swan": self.swan, "a": self.a,
                "c": None if self.c == NEG_INF else self.c,
                "exact": self.exact, "certificate": self.certificate, "dimtot": self.dimtot}


# -- normalization modulo (1 - F) ---------------------------------------------

def _pth_power_part(u: Polynomial) -> Polynomial:
    p = u.field.p
    return Polynomial(u.ring, {k: v for k, v in u.terms.items()
                               if any(k) and all(x % p == 0 for x in k)})


def artin_schreier_reduce(u: Polynomial) -> tuple[Polynomial, Polynomial]:
    """(w, v) with w = u + v - v^p free of nonconstant p-th power monomials.

    A nonzero constant is cleared too when its absolute trace vanishes.
    """
    ring = u.ring
    F = ring.field
    v = ring.zero()
    cur = u
    while True:
        P = _pth_power_part(cur)
        if P.is_zero():
            break
        t = P.pth_root()
        v = v + t
        cur = cur - P + t
    c = cur.constant_term().value
    if c:
        s = F.solve_artin_schreier(c)
        if s is not None:
            # c + s' - s'^p = 0 for s' = s since s^p - s = c
            v = v + ring.const(FieldElem(F, s))
            cur = cur - ring.const(FieldElem(F, c))
    assert cur == u + v - v.frobenius()
    return cur, v


def remove_p_powers(f: WittVector) -> tuple[WittVector, WittVector]:
    """(h, g) with h = f + (1 - F)g and no entry of h carrying a nonconstant p-th power monomial."""
    p, length = f.p, f.length
    zero = f.entries[0].ring.zero()
    h = f
    g = WittVector(p, [zero] * length)
    for i in range(length):
        _, v = artin_schreier_reduce(h.entries[i])
        if v.is_zero():
            continue
        gi = witt_from_entry(p, length, i, v)
        h = witt_add(h, one_minus_F(gi))
        g = witt_add(g, gi)
    assert h == witt_add(f, one_minus_F(g)), "normalization identity failed"
    return h, g


def has_no_p_powers(f: WittVector) -> bool:
    for c in f:
        if not _pth_power_part(c).is_zero():
            return False
        const = c.constant_term()
        if const.value and not const.trace():
            return False
    return True


# -- filtration levels ---------------------------------------------------------

def _deg(c: Polynomial) -> int | float:
    return c.degree(0)


def filtration_level(f: LocalASW | WittVector) -> int:
    """a = max(0, max_i -p^(r-i) * nu_inf(f_i))."""
    w = f.f if isinstance(f, LocalASW) else f
    p, r = w.p, w.r
    a = 0
    for i, c in enumerate(w):
        if c.terms:
            a = max(a, p ** (r - i) * _deg(c))
    return a


def frd_level(f: LocalASW | WittVector) -> int | float:
    """c = deg_z(u) + 1 for u = sum_i f_i^(p^(r-i) - 1) * f_i'; -inf when u = 0."""
    w = f.f if isinstance(f, LocalASW) else f
    p, r = w.p, w.r
    u = w.entries[0].ring.zero()
    for i, c in enumerate(w):
        d = c.derivative(0)
        if d.is_zero():
            continue
        u = u + (c ** (p ** (r - i) - 1)) * d
    if u.is_zero():
        return NEG_INF
    return _deg(u) + 1


def _bryl_nice(w: WittVector) -> int | None:
    """Swan value when i -> p^(r-i) deg f_i has a unique maximizer with p not dividing the degree."""
    p, r = w.p, w.r
    vals = [p ** (r - i) * _deg(c) if c.terms else NEG_INF for i, c in enumerate(w)]
    best = max(vals)
    if best <= 0 or vals.count(best) != 1:
        return None
    i0 = vals.index(best)
    if _deg(w.entries[i0]) % p == 0:
        return None
    return best


def swan_at_infinity(f: LocalASW) -> SwanReport:
    h, _ = remove_p_powers(f.f)
    if all(c.is_constant() for c in h):
        return SwanReport(0, 0, frd_level(h), True, (TRIVIAL_CLASS,), h)
    a = filtration_level(h)
    c = frd_level(h)
    certs = []
    if a == c:
        certs.append(ABC)
    nice = _bryl_nice(h)
    if nice is not None:
        assert nice == a, f"certificate disagreement: unique-max gives {nice}, a = {a}"
        certs.append(BRYL_NICE)
    return SwanReport(a, a, c, bool(certs), tuple(certs), h)


# -- brute-force Brylinski minimum --------------------------------------------

def _all_polys(ring: PolyRing, bound: int) -> list[Polynomial]:
    F = ring.field
    out = []
    for coeffs in product(range(F.q), repeat=bound + 1):
        out.append(Polynomial(ring, {(j,): c for j, c in enumerate(coeffs) if c}))
    return out


def swan_bruteforce(f: LocalASW, deg_bound: int, cap: int | None = None) -> int:
    """min of the filtration level over f + (1 - F)g, g with entries of degree <= deg_bound.

    An upper bound for the Swan conductor; exact once the slice contains an
    optimal representative.  Subtrees whose already-final components reach
    the current best are pruned, so the minimum is still over the full slice.
    """
    w = f.f
    p, r = w.p, w.r
    ring = w.entries[0].ring
    F = ring.field
    total = F.q ** ((deg_bound + 1) * (r + 1))
    limit = enumeration_cap(cap)
    if total > limit:
        raise CapExceeded(f"brute force needs {total} candidates, cap is {limit}")
    cands = _all_polys(ring, deg_bound)
    as_images = [v - v.frobenius() for v in cands]
    shifts = {i: [one_minus_F(witt_from_entry(p, r + 1, i, v)) for v in cands] for i in range(r)}
    best = filtration_level(w)

    def partial(h: WittVector, upto: int) -> int:
        lvl = 0
        for j in range(upto):
            c = h.entries[j]
            if c.terms:
                lvl = max(lvl, p ** (r - j) * _deg(c))
        return lvl

    def search(i: int, h: WittVector) -> None:
        nonlocal best
        lvl = partial(h, i)
        if lvl >= best:
            return
        if i == r:
            last = h.entries[r]
            for img in as_images:
                c = last + img
                d = _deg(c) if c.terms else 0
                best = min(best, max(lvl, d))
            return
        for s in shifts[i]:
            search(i + 1, witt_add(h, s))

    search(0, w)
    return best
