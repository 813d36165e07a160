"""A small Buchberger engine: normal forms, reduced bases and elimination."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DegreeCapExceeded, RingMismatch
from .poly import Polynomial, PolyRing

DEFAULT_DEGREE_CAP = 60


def _grevlex(exps: Sequence[int]) -> tuple:
    return (sum(exps), tuple(-x for x in reversed(exps)))


@dataclass(frozen=True)
class MonomialOrder:
    """lex, grevlex, or a block order eliminating ``block`` (variable indices) first.

    Within each block of a block order, monomials compare by grevlex.
    """

    kind: str = "lex"
    block: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    @classmethod
    def eliminating(cls, ring: PolyRing, drop: Iterable[str | int]) -> "MonomialOrder":
        idx = tuple(sorted(d if isinstance(d, int) else ring.index(d) for d in drop))
        return cls("block", idx)

    def key(self, exps: tuple[int, ...]):
        if self.kind == "lex":
            return exps
        if self.kind == "grevlex":
            return _grevlex(exps)
        first = [exps[i] for i in self.block]
        rest = [x for i, x in enumerate(exps) if i not in self.block]
        return (_grevlex(first), _grevlex(rest))


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def leading_monomial(f: Polynomial, order: MonomialOrder) -> tuple[int, ...]:
    return max(f.terms, key=order.key)


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _monic(f: Polynomial, order: MonomialOrder) -> Polynomial:
    lc = f.terms[leading_monomial(f, order)]
    return f.scale(f.field.inv(lc)) if lc != 1 else f


def _shift(f: Polynomial, exps: tuple[int, ...], code: int) -> Polynomial:
    """code * x^exps * f"""
    F = f.field
    return Polynomial(f.ring, {
        tuple(a + b for a, b in zip(k, exps)): F.mul(v, code) for k, v in f.terms.items()})


def divide(f: Polynomial, gens: Sequence[Polynomial], order: MonomialOrder
           ) -> tuple[list[Polynomial], Polynomial]:
    """Multivariate division: f = sum q_i * g_i + r with r reduced."""
    ring = f.ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatch(f"{g.ring} vs {ring}")
    F = ring.field
    leads = [(leading_monomial(g, order), g) for g in gens]
    inv_lc = [F.inv(g.terms[lm]) for lm, g in leads]
    quotients: list[dict] = [{} for _ in gens]
    rem: dict[tuple[int, ...], int] = {}
    p = dict(f.terms)
    while p:
        lm = max(p, key=order.key)
        lc = p[lm]
        for i, (glm, g) in enumerate(leads):
            if _divides(glm, lm):
                shift = tuple(a - b for a, b in zip(lm, glm))
                c = F.mul(lc, inv_lc[i])
                quotients[i][shift] = F.add(quotients[i].get(shift, 0), c)
                negc = F.neg(c)
                for k, v in g.terms.items():
                    kk = tuple(a + b for a, b in zip(k, shift))
                    s = F.add(p.get(kk, 0), F.mul(v, negc))
                    if s:
                        p[kk] = s
                    else:
                        p.pop(kk, None)
                break
        else:
            rem[lm] = lc
            del p[lm]
    qs = [Polynomial(ring, {k: v for k, v in q.items() if v}) for q in quotients]
    return qs, Polynomial(ring, rem)


@dataclass(frozen=True)
class IdealBasis:
    ring: PolyRing
    generators: tuple[Polynomial, ...]
    order: MonomialOrder = LEX
    is_groebner: bool = False

    def __post_init__(self):
        for g in self.generators:
            if g.is_zero():
                raise ValueError("ideal generators must be nonzero")
            if g.ring != self.ring:
                raise RingMismatch(f"{g.ring} vs {self.ring}")

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [leading_monomial(g, self.order) for g in self.generators]

    def groebner(self, degree_cap: int = DEFAULT_DEGREE_CAP) -> "IdealBasis":
        if self.is_groebner:
            return self
        return buchberger(self.generators, self.order, ring=self.ring, degree_cap=degree_cap)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self, self.order)

    def contains(self, f: Polynomial) -> bool:
        return self.groebner().reduce(f).is_zero()

    def s_polynomials_reduce(self) -> bool:
        """Post-hoc check that every S-polynomial reduces to zero."""
        gens = self.generators
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                s = s_polynomial(gens[i], gens[j], self.order)
                if not divide(s, gens, self.order)[1].is_zero():
                    return False
        return True

    def is_zero_dimensional(self) -> bool:
        """Every variable has a pure power among the leading monomials (finite staircase)."""
        gb = self.groebner()
        if any(not any(lm) for lm in gb.leading_monomials()):
            return True
        pure = set()
        for lm in gb.leading_monomials():
            used = [i for i, x in enumerate(lm) if x]
            if len(used) == 1:
                pure.add(used[0])
        return len(pure) == self.ring.nvars


def normal_form(f: Polynomial, basis: IdealBasis | Sequence[Polynomial],
                order: MonomialOrder | None = None) -> Polynomial:
    if isinstance(basis, IdealBasis):
        order = order or basis.order
        gens = basis.generators
    else:
        gens = list(basis)
    if order is None:
        order = LEX
    return divide(f, gens, order)[1]


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    F = f.field
    lf, lg = leading_monomial(f, order), leading_monomial(g, order)
    lcm = _lcm(lf, lg)
    a = _shift(f, tuple(x - y for x, y in zip(lcm, lf)), F.inv(f.terms[lf]))
    b = _shift(g, tuple(x - y for x, y in zip(lcm, lg)), F.inv(g.terms[lg]))
    return a - b


def buchberger(gens: Iterable[Polynomial], order: MonomialOrder = LEX, *,
               ring: PolyRing | None = None,
               degree_cap: int = DEFAULT_DEGREE_CAP) -> IdealBasis:
    """Reduced Groebner basis, normal selection strategy with both Buchberger criteria."""
    G = [g for g in gens if not g.is_zero()]
    if ring is None:
        if not G:
            raise ValueError("ring required for an empty generator list")
        ring = G[0].ring
    if not G:
        return IdealBasis(ring, (), order, True)
    for g in G:
        if g.total_degree() > degree_cap:
            raise DegreeCapExceeded(f"input degree {g.total_degree()} exceeds cap {degree_cap}")
    G = [_monic(g, order) for g in G]
    lms = [leading_monomial(g, order) for g in G]
    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}

    def chain_skip(i: int, j: int, lcm) -> bool:
        for k in range(len(G)):
            if k in (i, j) or G[k] is None:
                continue
            if (_divides(lms[k], lcm) and (min(i, k), max(i, k)) not in pairs
                    and (min(j, k), max(j, k)) not in pairs):
                return True
        return False

    while pairs:
        i, j = min(pairs, key=lambda ij: (order.key(_lcm(lms[ij[0]], lms[ij[1]])), ij))
        pairs.discard((i, j))
        lcm = _lcm(lms[i], lms[j])
        if all(min(a, b) == 0 for a, b in zip(lms[i], lms[j])):
            continue
        if chain_skip(i, j, lcm):
            continue
        s = s_polynomial(G[i], G[j], order)
        r = divide(s, [g for g in G if g is not None], order)[1]
        if r.is_zero():
            continue
        if r.total_degree() > degree_cap:
            raise DegreeCapExceeded(f"intermediate degree {r.total_degree()} exceeds cap {degree_cap}")
        r = _monic(r, order)
        G.append(r)
        lms.append(leading_monomial(r, order))
        n = len(G) - 1
        pairs.update((k, n) for k in range(n) if G[k] is not None)
    return IdealBasis(ring, tuple(_reduce_basis(G, order)), order, True)


def _reduce_basis(G: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    G = [g for g in G if g is not None]
    lms = [leading_monomial(g, order) for g in G]
    keep = []
    for i, g in enumerate(G):
        redundant = False
        for j, h in enumerate(G):
            if j == i:
                continue
            if _divides(lms[j], lms[i]) and (lms[j] != lms[i] or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        lm = leading_monomial(g, order)
        tail = Polynomial(g.ring, {k: v for k, v in g.terms.items() if k != lm})
        r = divide(tail, others, order)[1] if others else tail
        out.append(_monic(r + Polynomial(g.ring, {lm: g.terms[lm]}), order))
    out.sort(key=lambda h: order.key(leading_monomial(h, order)), reverse=True)
    return out


def eliminate(basis: IdealBasis | Sequence[Polynomial], drop: Iterable[str | int], *,
              degree_cap: int = DEFAULT_DEGREE_CAP) -> IdealBasis:
    """Generators of the ideal intersected with the subring free of ``drop``.

    The result stays in the ambient ring; an empty basis means the
    elimination ideal is zero.
    """
    if isinstance(basis, IdealBasis):
        ring, gens = basis.ring, basis.generators
    else:
        gens = tuple(basis)
        if not gens:
            raise ValueError("cannot infer a ring from an empty generator list")
        ring = gens[0].ring
    order = MonomialOrder.eliminating(ring, drop)
    if isinstance(basis, IdealBasis) and basis.is_groebner and basis.order == order:
        gb = basis
    else:
        gb = buchberger(gens, order, ring=ring, degree_cap=degree_cap)
    kept = tuple(g for g in gb.generators if not (g.variables_used() & set(order.block)))
    return IdealBasis(ring, kept, order, True)
