from __future__ import annotations

import random

import pytest

from conftest import rand_poly
from wildramify.errors import CapExceeded
from wildramify.field import GF
from wildramify.poly import NEG_INF, PolyRing
from wildramify.swan import (ABC, BRYL_NICE, TRIVIAL_CLASS, ASWDatum, LocalASW,
                             filtration_level, frd_level, has_no_p_powers, remove_p_powers,
                             swan_at_infinity, swan_bruteforce)
from wildramify.witt import WittVector, one_minus_F, witt_add

Z2 = PolyRing(GF(2), ["z"])
Z3 = PolyRing(GF(3), ["z"])


def local(ring, *comps):
    return LocalASW.from_polys([ring.parse(c) for c in comps])


def test_remove_p_powers_examples():
    x = Z2.var(0)
    h, g = remove_p_powers(WittVector(2, [x**2]))
    assert (h, g) == (WittVector(2, [x]), WittVector(2, [x]))
    h, g = remove_p_powers(WittVector(2, [x**4]))
    assert (h, g) == (WittVector(2, [x]), WittVector(2, [x**2 + x]))
    f = WittVector(2, [x**3 + x])
    assert remove_p_powers(f) == (f, WittVector(2, [Z2.zero()]))


def test_trivial_constants():
    F4 = GF(2, 2)
    R = PolyRing(F4, ["z"])
    # 1 = s^2 + s for s = g, so the constant 1 is a boundary; g has trace 1 and stays
    h, _ = remove_p_powers(WittVector(2, [R.parse("1")]))
    assert h.entries[0].is_zero()
    h, _ = remove_p_powers(WittVector(2, [R.parse("g")]))
    assert h.entries[0] == R.parse("g")


def test_filtration_level_examples():
    assert filtration_level(local(Z2, "z^3")) == 3
    assert filtration_level(local(Z2, "z^3", "z^4")) == 6
    assert filtration_level(local(Z2, "1", "1")) == 0


def test_frd_level_examples():
    assert frd_level(local(Z2, "z^3")) == 3
    assert frd_level(local(Z2, "z^2")) == NEG_INF
    # (z, 0): u = z^(p-1) * 1 = z, so c = 2 = a
    assert frd_level(local(Z2, "z", "0")) == 2
    assert filtration_level(local(Z2, "z", "0")) == 2


def test_swan_examples():
    rep = swan_at_infinity(local(Z2, "z^3"))
    assert (rep.swan, rep.exact) == (3, True)
    assert set(rep.certificates) == {ABC, BRYL_NICE}
    rep = swan_at_infinity(local(Z2, "z^2"))
    assert (rep.swan, rep.exact) == (1, True)
    rep = swan_at_infinity(local(Z2, "0", "z^3"))
    assert (rep.swan, rep.exact) == (3, True)
    rep = swan_at_infinity(local(Z2, "1"))
    assert (rep.swan, rep.certificate, rep.dimtot) == (0, TRIVIAL_CLASS, 1)


def test_swan_report_json():
    doc = swan_at_infinity(local(Z3, "z^4 + z")).to_json()
    assert doc == {"swan": 4, "a": 4, "c": 4, "exact": True, "certificate": "ABC", "dimtot": 5}


@pytest.mark.parametrize("p", [2, 3, 5])
def test_monomial_family(p):
    R = PolyRing(GF(p), ["z"])
    for m in range(1, 11):
        if m % p:
            rep = swan_at_infinity(LocalASW.from_polys([R.var(0) ** m]))
            assert rep.swan == m and rep.exact


def test_bruteforce_examples():
    assert swan_bruteforce(local(Z2, "z^2"), 2) == 1
    assert swan_bruteforce(local(Z2, "z^3"), 3) == 3
    assert swan_bruteforce(local(Z2, "1"), 3) == 0
    with pytest.raises(CapExceeded):
        swan_bruteforce(local(Z3, "z^2", "z"), 9, cap=1000)


def test_bruteforce_level_one():
    # (z^2, 0) has raw level 4; it is equivalent to (z, 0), of level 2
    f = local(Z2, "z^2", "0")
    rep = swan_at_infinity(f)
    assert filtration_level(f) == 4 and rep.swan == 2
    assert swan_bruteforce(f, 2 * rep.swan) == 2


def _random_local(rng, p, r):
    R = PolyRing(GF(p), ["z"])
    return LocalASW.from_polys([rand_poly(rng, R, 3, 5) for _ in range(r + 1)])


@pytest.mark.parametrize("p", [2, 3])
def test_normalization_identity_random(p):
    rng = random.Random(p)
    R = PolyRing(GF(p), ["z", "x"])
    for _ in range(40):
        r = rng.randint(0, 2)
        f = WittVector(p, [rand_poly(rng, R, 4, 6) for _ in range(r + 1)])
        h, g = remove_p_powers(f)
        assert has_no_p_powers(h)
        assert h == witt_add(f, one_minus_F(g))


@pytest.mark.parametrize("p", [2, 3])
def test_swan_monotone_chain(p):
    rng = random.Random(10 + p)
    for _ in range(25):
        f = _random_local(rng, p, rng.randint(0, 1))
        rep = swan_at_infinity(f)
        raw = filtration_level(f)
        assert raw >= rep.a
        if rep.exact and rep.swan <= 4:
            bound = max(1, rep.swan)
            try:
                brute = swan_bruteforce(f, bound, cap=20000)
            except CapExceeded:
                continue
            assert raw >= brute >= rep.swan


def test_swan_is_class_invariant():
    rng = random.Random(5)
    for _ in range(30):
        f = _random_local(rng, 3, 1)
        g = WittVector(3, [rand_poly(rng, Z3, 2, 3) for _ in range(2)])
        shifted = LocalASW(3, 1, witt_add(f.f, one_minus_F(g)))
        a, b = swan_at_infinity(f), swan_at_infinity(shifted)
        if a.exact and b.exact:
            assert a.swan == b.swan


def test_datum_and_fiber():
    d = ASWDatum.from_strings(GF(2), ["z", "x1"], 0, ["z^3*x1"])
    assert d.n == 1 and d.p == 2
    assert swan_at_infinity(d.fiber([GF(2)(1)])).swan == 3
    assert swan_at_infinity(d.fiber([GF(2)(0)])).swan == 0
    with pytest.raises(ValueError):
        ASWDatum.from_strings(GF(2), ["z", "x1"], 1, ["z"])
