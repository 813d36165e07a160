from __future__ import annotations

import random

from hypothesis import strategies as st

from wildramify.field import GF
from wildramify.poly import Polynomial, PolyRing

FIELDS = [GF(2), GF(3), GF(2, 2), GF(3, 2)]


def rand_poly(rng: random.Random, ring: PolyRing, terms: int = 4, deg: int = 4) -> Polynomial:
    acc = {}
    for _ in range(rng.randint(0, terms)):
        k = tuple(rng.randint(0, deg) for _ in range(ring.nvars))
        acc[k] = rng.randrange(1, ring.field.q)
    return Polynomial(ring, acc)


def polys(ring: PolyRing, max_terms: int = 4, max_deg: int = 4):
    mono = st.tuples(*[st.integers(0, max_deg) for _ in range(ring.nvars)])
    coeff = st.integers(1, ring.field.q - 1)
    return st.dictionaries(mono, coeff, max_size=max_terms).map(lambda d: Polynomial(ring, d))


# acceptance criteria record a verdict here; the summary hook prints one line each
ACCEPTANCE: dict[int, tuple[str, float, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        verdict, secs, title = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {verdict}  ({secs:.1f}s)  {title}")
