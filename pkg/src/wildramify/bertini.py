"""Rank-one Bertini substitutions that make fiberwise Swan conductors constant.

For a datum in ``(z, x_1, ..., x_n)`` the substitution
``x_i -> x_i + z^(d_i)`` turns every monomial ``z^b0 x^b`` into a polynomial
in ``z`` of degree ``w(b) = b0 + sum d_i b_i`` with a constant leading
coefficient.  If the weights single out one monomial of the normalized datum
(and the resulting degree is prime to p) the Swan conductor at infinity of
every fiber ``x = y`` equals that weight, whatever ``y`` is.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .field import FieldElem, FieldSpec
from .poly import Polynomial, PolyRing, gcd_of
from .swan import ASWDatum, SwanReport, remove_p_powers, swan_at_infinity
from .witt import WittVector

ALIGNED = "ALIGNED"
MISALIGNED = "MISALIGNED"
INCONCLUSIVE = "INCONCLUSIVE"

EXHAUSTIVE_LIMIT = 4096
DEFAULT_SAMPLES = 64


@dataclass(frozen=True)
class SupportSet:
    S: frozenset
    p: int

    def __post_init__(self):
        if not self.S:
            raise ValueError("support set is empty")
        lengths = {len(b) for b in self.S}
        if len(lengths) != 1:
            raise ValueError("exponent vectors of different lengths")
        if any(not any(b) for b in self.S):
            raise ValueError("the zero exponent vector must be stripped first")
        if any(x < 0 for b in self.S for x in b):
            raise ValueError("negative exponent")

    @classmethod
    def of(cls, vectors: Iterable[Sequence[int]], p: int) -> "SupportSet":
        return cls(frozenset(tuple(b) for b in vectors), p)

    @property
    def n(self) -> int:
        return len(next(iter(self.S))) - 1

    def sorted(self) -> list[tuple[int, ...]]:
        return sorted(self.S)


def _weigh(b: Sequence[int], lead: int, d: Sequence[int]) -> int:
    return lead * b[0] + sum(x * y for x, y in zip(d, b[1:]))


def _unique_max(S: Sequence[tuple[int, ...]], lead: int, d: Sequence[int]):
    best, arg, count = None, None, 0
    for b in S:
        w = _weigh(b, lead, d)
        if best is None or w > best:
            best, arg, count = w, b, 1
        elif w == best:
            count += 1
    return (best, arg) if count == 1 else (None, None)


def _growth_bound(S: Sequence[tuple[int, ...]], n: int, p: int, lead: int) -> int:
    """A weight size by which a valid tuple is guaranteed to have appeared.

    With d_1 > A*lead and d_(i+1) > A*(lead + d_1 + ... + d_i) the weight is
    injective on [0, A]^(n+1); moving one weight through p consecutive values
    fixes the residue condition, hence the extra p.
    """
    A = max(max(b) for b in S) + 1
    ds = []
    for _ in range(n):
        ds.append(A * (lead + sum(ds)) + 1)
    return (max(ds) if ds else 0) + p + 1


def _candidates(n: int, M: int, distinct: bool):
    """Tuples in [1, M]^n whose max is exactly M, in lexicographic order."""
    for d in product(range(1, M + 1), repeat=n):
        if max(d) != M:
            continue
        if distinct and len(set(d)) != n:
            continue
        yield d


def search_weights(S: Sequence[tuple[int, ...]], *, p: int, lead: int = 1, scale: int = 1,
                   divisibility: bool = True, distinct: bool = True
                   ) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """Smallest (d_1..d_n) making w(b) = lead*b_0 + sum scale*d_i*b_i uniquely maximal on S.

    Order: increasing max(d), then lexicographic.  With ``divisibility`` the
    maximizer must also satisfy p not dividing w(x*)/gcd(x*).  Returns
    (d, argmax, w(argmax)).
    """
    S = sorted(set(S))
    n = len(S[0]) - 1
    if n == 0:
        _, arg = _unique_max(S, lead, ())
        w = lead * arg[0]
        if divisibility and (w // gcd_of(arg)) % p == 0:
            raise AssertionError(f"no weight can fix divisibility for {S}")
        return (), arg, w
    bound = _growth_bound(S, n, p, lead)
    for M in range(1, bound + 1):
        for d in _candidates(n, M, distinct):
            sd = tuple(scale * x for x in d)
            w, arg = _unique_max(S, lead, sd)
            if arg is None:
                continue
            if divisibility and (w // gcd_of(arg)) % p == 0:
                continue
            return d, arg, w
    raise AssertionError(f"weight search exhausted its bound {bound} on {S}")


def find_weights(S: SupportSet) -> tuple[tuple[int, ...], tuple[int, ...]]:
    d, arg, _ = search_weights(S.sorted(), p=S.p)
    return d, arg


def weight_of(b: Sequence[int], d: Sequence[int]) -> int:
    return _weigh(b, 1, d)


# -- the substitution -----------------------------------------------------------

def _shift_images(ring: PolyRing, d: Sequence[int], sign: int) -> list[Polynomial]:
    z = ring.var(0)
    images = [z]
    for i, di in enumerate(d, start=1):
        t = z ** di
        images.append(ring.var(i) + t if sign > 0 else ring.var(i) - t)
    return images


def bertini_substitution(datum: ASWDatum, d: Sequence[int]) -> ASWDatum:
    """x_i -> x_i + z^(d_i) in every component; the inverse map is checked to undo it."""
    d = tuple(d)
    if len(d) != datum.n:
        raise ValueError(f"{len(d)} weights for {datum.n} fiber variables")
    if any(x < 1 for x in d):
        raise ValueError("weights must be positive")
    ring = datum.ring
    fwd = _shift_images(ring, d, +1)
    back = _shift_images(ring, d, -1)
    out = []
    for c in datum.f:
        t = c.substitute(fwd)
        if t.substitute(back) != c:
            raise AssertionError("Bertini substitution failed to invert")
        out.append(t)
    return datum.with_components(out)


@dataclass(frozen=True)
class BertiniResult:
    weights: tuple[int, ...]
    argmax: tuple[int, ...] | None
    predicted_swan: int
    i0: int | None
    transformed: ASWDatum
    normalized: ASWDatum
    fiber_leading_constant: tuple[bool, ...]

    @property
    def trivial(self) -> bool:
        return self.argmax is None

    def to_json(self) -> dict:
        return {"d": list(self.weights),
                "argmax": list(self.argmax) if self.argmax is not None else None,
                "predicted_swan": self.predicted_swan,
                "i0": self.i0,
                "transformed": [repr(c) for c in self.transformed.f]}


def _leading_in_z(c: Polynomial) -> Polynomial | None:
    if not c.terms:
        return None
    coeffs = c.coefficients_in(0)
    return coeffs[max(coeffs)]


def bertini_rank_one(datum: ASWDatum) -> BertiniResult:
    p, r = datum.p, datum.r
    h, _ = remove_p_powers(datum.f)
    normalized = datum.with_components(list(h))
    if all(c.is_constant() for c in h):
        flags = tuple(True for _ in h)
        return BertiniResult((), None, 0, None, normalized, normalized, flags)
    S = set()
    origin: dict[tuple[int, ...], int] = {}
    for i, c in enumerate(h):
        scale = p ** (r - i)
        for b in c.terms:
            if any(b):
                sb = tuple(scale * x for x in b)
                S.add(sb)
                origin.setdefault(sb, i)
    d, xstar = find_weights(SupportSet(frozenset(S), p))
    predicted = weight_of(xstar, d)
    i0 = origin[xstar]
    transformed = bertini_substitution(normalized, d)
    leads = [_leading_in_z(c) for c in transformed.f]
    flags = tuple(ld is not None and ld.is_constant() for ld in leads)
    f0 = transformed.f[i0]
    deg = f0.degree(0)
    if not flags[i0]:
        raise AssertionError(f"component {i0} has a non-constant leading z-coefficient {leads[i0]!r}")
    if p ** (r - i0) * deg != predicted or deg % p == 0:
        raise AssertionError(f"degree {deg} of component {i0} contradicts the prediction {predicted}")
    for i, c in enumerate(transformed.f):
        if i != i0 and c.terms and p ** (r - i) * c.degree(0) >= predicted:
            raise AssertionError(f"component {i} competes with the maximizer")
    return BertiniResult(d, xstar, predicted, i0, transformed, normalized, flags)


# -- alignment --------------------------------------------------------------------

@dataclass(frozen=True)
class AlignmentReport:
    fibers: tuple[tuple[tuple[FieldElem, ...], SwanReport], ...]
    verdict: str
    seed: int | None = None
    weights: tuple[int, ...] = ()
    mode: str = "explicit"

    @property
    def values(self) -> list[int]:
        return [rep.swan for _, rep in self.fibers]

    @property
    def common_value(self) -> int | None:
        vals = set(self.values)
        return vals.pop() if self.verdict == ALIGNED and len(vals) == 1 else None

    def to_json(self) -> dict:
        from .parse import format_constant
        rows = []
        for y, rep in self.fibers:
            rows.append({"point": [format_constant(c.spec, c.value) for c in y],
                         "swan": rep.swan, "exact": rep.exact, "certificate": rep.certificate})
        return {"weights": list(self.weights), "mode": self.mode, "seed": self.seed,
                "fibers": rows, "verdict": self.verdict}


def fiber_points(field: FieldSpec, n: int, fibers="auto", seed: int = 0,
                 samples: int = DEFAULT_SAMPLES) -> tuple[list[tuple[FieldElem, ...]], str]:
    """Resolve a fiber specification to a list of points and a mode label."""
    if isinstance(fibers, str):
        if fibers == "auto":
            fibers = "exhaustive" if field.q ** n <= EXHAUSTIVE_LIMIT else "sample"
        if fibers == "exhaustive":
            pts = [tuple(FieldElem(field, v) for v in vals)
                   for vals in product(range(field.q), repeat=n)]
            return pts, "exhaustive"
        if fibers == "sample":
            rng = random.Random(seed)
            pts = [tuple(FieldElem(field, rng.randrange(field.q)) for _ in range(n))
                   for _ in range(samples)]
            return pts, "sample"
        raise ValueError(f"unknown fiber mode {fibers!r}")
    pts = [tuple(c if isinstance(c, FieldElem) else field(c) for c in y) for y in fibers]
    for y in pts:
        if len(y) != n:
            raise ValueError(f"fiber point {y} has {len(y)} coordinates, expected {n}")
    return pts, "explicit"


def alignment_check(datum: ASWDatum, weights: Sequence[int] | None = None, fibers="auto",
                    seed: int = 0, samples: int = DEFAULT_SAMPLES) -> AlignmentReport:
    """Swan at infinity on each fiber, after the optional substitution by ``weights``."""
    d = tuple(weights) if weights else ()
    work = bertini_substitution(datum, d) if d else datum
    pts, mode = fiber_points(datum.field, datum.n, fibers, seed, samples)
    rows = tuple((y, swan_at_infinity(work.fiber(y))) for y in pts)
    if any(not rep.exact for _, rep in rows):
        verdict = INCONCLUSIVE
    elif len({rep.swan for _, rep in rows}) <= 1:
        verdict = ALIGNED
    else:
        verdict = MISALIGNED
    return AlignmentReport(rows, verdict, seed, d, mode)


# -- the linear-projection control ----------------------------------------------------

def linear_projection_datum(field: FieldSpec, m: int, a, b) -> ASWDatum:
    """x^(m-1)*y on the plane, written in (fiber coordinate, t) for t = a*x + b*y.

    With b != 0 the fiber coordinate is x and y = (t - a*x)/b; with b = 0 it
    is y and x = t/a.
    """
    a, b = field(a), field(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("the projection must be surjective")
    ring = PolyRing(field, ("z", "t"))
    z, t = ring.var(0), ring.var(1)
    if not b.is_zero():
        y = (t - z.scale(a)).scale(b.inverse())
        f = z ** (m - 1) * y
    else:
        f = (t.scale(a.inverse())) ** (m - 1) * z
    return ASWDatum(field, ("z", "t"), 0, WittVector(field.p, [f]))
