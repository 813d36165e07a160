"""Finite etale maps to affine space by adding p-th powers (the Nagata trick).

Given ``R = k[x_1..x_r]/I`` etale over ``A^n`` via ``x_1..x_n``, each step
picks a nonzero ``g`` in the ideal and substitutes
``x_i = x'_i + x_r^(p*a_i)`` for ``i < r`` so that ``g`` becomes monic in
``x_r``.  Eliminating ``x_r`` gives a presentation with one generator less.
Since every substitution adds a p-th power, the final coordinates are
``f_i = x_i + y_i^p`` and have the same differentials as the ``x_i``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .bertini import search_weights
from .errors import InvalidRelation, NoRelationFound, NotAPthPower
from .field import FieldElem, FieldSpec
from .groebner import GREVLEX, IdealBasis, buchberger, eliminate, normal_form
from .poly import Polynomial, PolyRing


@dataclass(frozen=True)
class EtalePresentation:
    field: FieldSpec
    generators: tuple[str, ...]
    n: int
    ideal: tuple[Polynomial, ...]

    def __post_init__(self):
        if not 0 <= self.n <= len(self.generators):
            raise ValueError(f"target dimension {self.n} out of range for {len(self.generators)} generators")
        for g in self.ideal:
            if g.ring != self.ring:
                raise ValueError(f"ideal generator {g!r} is not in {self.ring}")
            if g.is_zero():
                raise ValueError("ideal generators must be nonzero")
        if self.r > self.n and not self.ideal:
            raise ValueError("a presentation with r > n needs a nonzero ideal")

    @property
    def ring(self) -> PolyRing:
        return PolyRing(self.field, self.generators)

    @property
    def r(self) -> int:
        return len(self.generators)

    @classmethod
    def from_strings(cls, field: FieldSpec, generators: Sequence[str], n: int,
                     ideal: Sequence[str]) -> "EtalePresentation":
        ring = PolyRing(field, generators)
        return cls(field, tuple(generators), n, tuple(ring.parse(s) for s in ideal))

    def groebner(self) -> IdealBasis:
        return buchberger(self.ideal, GREVLEX, ring=self.ring)


@dataclass(frozen=True)
class NagataStep:
    level: int                     # number of generators before the step
    relation: Polynomial           # g, in the current coordinates
    exponents: tuple[int, ...]     # a_1..a_(r-1)
    scalar: object                 # leading constant that was divided out
    monic: Polynomial              # monic in the last generator
    degree: int

    def to_json(self) -> dict:
        return {"level": self.level, "relation": repr(self.relation),
                "a": list(self.exponents), "degree": self.degree, "monic": repr(self.monic)}


@dataclass(frozen=True)
class FiniteMapCertificate:
    presentation: EtalePresentation
    f: tuple[Polynomial, ...]
    y: tuple[Polynomial, ...]
    steps: tuple[NagataStep, ...]
    relations: tuple[Polynomial, ...]   # the monic relations rewritten in the original generators

    def to_json(self) -> dict:
        return {"f": [repr(c) for c in self.f], "y": [repr(c) for c in self.y],
                "steps": [s.to_json() for s in self.steps], "verified": verify_certificate(self)}


def nagata_step(pres: EtalePresentation, g: Polynomial
                ) -> tuple[EtalePresentation, NagataStep, list[Polynomial]]:
    """One reduction r -> r-1.

    Returns the new presentation (same names minus the last), the step record
    and the images of the old coordinates in the new ring, i.e. the
    substitution x_i -> x_i + x_r^(p*a_i) that was applied.
    """
    r, p = pres.r, pres.field.p
    if r <= pres.n:
        raise ValueError("no step is needed once r = n")
    ring = pres.ring
    if g.ring != ring:
        raise InvalidRelation(f"relation {g!r} is not in {ring}")
    if g.is_zero():
        raise InvalidRelation("the relation must be nonzero")
    gb = pres.groebner()
    if not normal_form(g, gb).is_zero():
        raise InvalidRelation(f"{g!r} does not lie in the ideal")
    # weight b_r + sum p*a_i*b_i; the last generator plays the role of z
    S = [(k[-1],) + k[:-1] for k in g.terms]
    if len(S) == 1 and not any(S[0]):
        a: tuple[int, ...] = (1,) * (r - 1)
    else:
        a, _, _ = search_weights(S, p=p, scale=p, divisibility=False, distinct=False)
    xr = ring.var(r - 1)
    images = [ring.var(i) + xr ** (p * a[i]) for i in range(r - 1)] + [xr]
    gs = g.substitute(images)
    coeffs = gs.coefficients_in(r - 1)
    deg = max(coeffs)
    lead = coeffs[deg]
    if not lead.is_constant():
        raise AssertionError(f"leading coefficient {lead!r} of the substituted relation is not constant")
    c = lead.constant_term()
    monic = gs.scale(c.inverse())
    assert monic.coefficients_in(r - 1)[deg] == ring.one()
    sub_ideal = [h.substitute(images) for h in pres.ideal]
    small = PolyRing(pres.field, pres.generators[:-1])
    elim = eliminate(sub_ideal, [r - 1])
    kept = tuple(_drop_last(h, small) for h in elim.generators)
    new = EtalePresentation(pres.field, pres.generators[:-1], pres.n, kept) if (
        kept or r - 1 == pres.n) else None
    if new is None:
        raise NoRelationFound(
            f"the ideal meets k[{', '.join(small.names)}] in zero; not finite over {pres.n} variables")
    step = NagataStep(r, g, tuple(a), c, monic, deg)
    return new, step, images


def _drop_last(h: Polynomial, small: PolyRing) -> Polynomial:
    return Polynomial(small, {k[:-1]: v for k, v in h.terms.items()})


def _default_relation(pres: EtalePresentation) -> Polynomial:
    gb = pres.groebner()
    if not gb.generators:
        raise NoRelationFound(f"the ideal is zero at level {pres.r}")
    return min(gb.generators, key=lambda h: (h.total_degree(), len(h.terms), repr(h)))


def nagata_finite_map(pres: EtalePresentation, hints: Sequence[str | Polynomial | None] | None = None
                      ) -> FiniteMapCertificate:
    """Iterate :func:`nagata_step` from r generators down to n.

    ``hints[k]`` (if given and not None) is the relation used at the k-th
    step, written in the names of the generators still present.
    """
    top = pres.ring
    # current coordinates as polynomials in the original generators
    coords = top.gens()
    ys = [top.zero() for _ in range(pres.n)]
    steps: list[NagataStep] = []
    relations: list[Polynomial] = []
    cur = pres
    k = 0
    while cur.r > cur.n:
        hint = hints[k] if hints is not None and k < len(hints) else None
        if hint is None:
            g = _default_relation(cur)
        elif isinstance(hint, str):
            g = cur.ring.parse(hint)
        else:
            g = hint
        new, step, _ = nagata_step(cur, g)
        r = cur.r
        xr = coords[r - 1]
        # monic relation in (x'_1..x'_(r-1), x_r), rewritten in the original generators
        new_coords = [coords[i] - xr ** (cur.field.p * step.exponents[i]) for i in range(r - 1)]
        relations.append(step.monic.substitute(new_coords + [xr]))
        for i in range(min(pres.n, r - 1)):
            ys[i] = ys[i] - xr ** step.exponents[i]
        coords = new_coords
        steps.append(step)
        cur = new
        k += 1
    f = tuple(coords[: pres.n])
    return FiniteMapCertificate(pres, f, tuple(ys), tuple(steps), tuple(relations))


def pth_power_shape(cert: FiniteMapCertificate) -> bool:
    """f_i - x_i is the p-th power of the recorded y_i."""
    ring = cert.presentation.ring
    for i, (fi, yi) in enumerate(zip(cert.f, cert.y)):
        diff = fi - ring.var(i)
        if diff != yi.frobenius():
            return False
        if diff.is_zero():
            continue
        try:
            if diff.pth_root() != yi:
                return False
        except NotAPthPower:
            return False
    return True


def relations_in_ideal(cert: FiniteMapCertificate) -> bool:
    gb = cert.presentation.groebner()
    return all(normal_form(rel, gb).is_zero() for rel in cert.relations)


def relations_monic(cert: FiniteMapCertificate) -> bool:
    for step in cert.steps:
        coeffs = step.monic.coefficients_in(step.level - 1)
        if coeffs[step.degree] != step.monic.ring.one():
            return False
    return True


def fiber_is_finite(cert: FiniteMapCertificate, c: Sequence) -> bool:
    """I + (f_1 - c_1, ..., f_n - c_n) is zero-dimensional."""
    pres = cert.presentation
    ring = pres.ring
    extra = [fi - ring.const(ci) for fi, ci in zip(cert.f, c)]
    gb = buchberger(list(pres.ideal) + extra, GREVLEX, ring=ring)
    return gb.is_zero_dimensional()


def random_fibers_finite(cert: FiniteMapCertificate, count: int = 5, seed: int = 0) -> bool:
    F = cert.presentation.field
    rng = random.Random(seed)
    for _ in range(count):
        c = [FieldElem(F, rng.randrange(F.q)) for _ in range(cert.presentation.n)]
        if not fiber_is_finite(cert, c):
            return False
    return True


def verify_certificate(cert: FiniteMapCertificate) -> bool:
    return pth_power_shape(cert) and relations_monic(cert) and relations_in_ideal(cert)
