from __future__ import annotations

import random
from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rand_poly
from wildramify.bertini import (ALIGNED, INCONCLUSIVE, MISALIGNED, SupportSet, alignment_check,
                                bertini_rank_one, bertini_substitution, fiber_points,
                                find_weights, linear_projection_datum, search_weights, weight_of)
from wildramify.field import GF
from wildramify.poly import PolyRing
from wildramify.swan import ASWDatum
from wildramify.witt import WittVector


def _contract_holds(S: SupportSet, d) -> bool:
    ws = [weight_of(b, d) for b in S.S]
    top = max(ws)
    if ws.count(top) != 1:
        return False
    b = max(S.S, key=lambda v: weight_of(v, d))
    return (top // gcd(*b)) % S.p != 0


def test_find_weights_examples():
    assert find_weights(SupportSet.of([(3, 1)], 2)) == ((2,), (3, 1))
    assert find_weights(SupportSet.of([(1, 0), (0, 1)], 3)) == ((2,), (0, 1))
    # d=1 already works here: w = 2, gcd 2, quotient 1 is odd; d=3 is also valid
    S = SupportSet.of([(0, 2)], 2)
    assert find_weights(S) == ((1,), (0, 2))
    assert _contract_holds(S, (3,))


def test_support_set_validation():
    with pytest.raises(ValueError):
        SupportSet.of([], 2)
    with pytest.raises(ValueError):
        SupportSet.of([(0, 0)], 2)
    with pytest.raises(ValueError):
        SupportSet.of([(1, 0), (1,)], 2)


supports = st.integers(1, 3).flatmap(
    lambda n: st.lists(st.tuples(*[st.integers(0, 6)] * (n + 1)).filter(any),
                       min_size=1, max_size=5))


@settings(max_examples=150, deadline=None)
@given(p=st.sampled_from([2, 3, 5]), S=supports)
def test_weight_search_contract(p, S):
    sup = SupportSet.of(S, p)
    d, arg = find_weights(sup)
    assert len(d) == sup.n and len(set(d)) == len(d) and min(d) >= 1
    assert _contract_holds(sup, d)
    assert arg == max(sup.S, key=lambda v: weight_of(v, d))
    # no smaller tuple in the search order works
    for M in range(1, max(d)):
        for e in product(range(1, M + 1), repeat=sup.n):
            if max(e) == M and len(set(e)) == len(e):
                assert not _contract_holds(sup, e)


def test_search_weights_scaled_variant():
    d, arg, w = search_weights([(2, 0), (1, 1)], p=2, scale=2, divisibility=False, distinct=False)
    assert d == (1,) and arg == (1, 1) and w == 3


def test_substitution_examples():
    d = ASWDatum.from_strings(GF(2), ["z", "x1"], 0, ["z^3*x1"])
    out = bertini_substitution(d, (2,))
    assert out.f.entries[0] == d.ring.parse("z^5 + z^3*x1")
    d2 = ASWDatum.from_strings(GF(2), ["z", "x1"], 0, ["z^3"])
    assert bertini_substitution(d2, (4,)) == d2


def test_substitution_round_trip_random():
    rng = random.Random(2)
    for _ in range(100):
        F = rng.choice([GF(2), GF(3), GF(2, 2)])
        n = rng.randint(1, 2)
        R = PolyRing(F, ["z"] + [f"x{i}" for i in range(1, n + 1)])
        f = rand_poly(rng, R, 3, 3)
        d = tuple(rng.randint(1, 4) for _ in range(n))
        datum = ASWDatum(F, R.names, 0, WittVector(F.p, [f]))
        out = bertini_substitution(datum, d).f.entries[0]
        z = R.var(0)
        back = [z] + [R.var(i) - z ** d[i - 1] for i in range(1, n + 1)]
        assert out.substitute(back) == f


def test_rank_one_examples():
    d = ASWDatum.from_strings(GF(2), ["z", "x1"], 0, ["z^3*x1"])
    res = bertini_rank_one(d)
    assert (res.weights, res.predicted_swan, res.i0) == ((2,), 5, 0)
    rep = alignment_check(d, res.weights, "exhaustive")
    assert rep.verdict == ALIGNED and rep.common_value == 5
    rep8 = alignment_check(ASWDatum.from_strings(GF(2, 3), ["z", "x1"], 0, ["z^3*x1"]), res.weights)
    assert set(rep8.values) == {5}

    d = ASWDatum.from_strings(GF(2), ["z", "x1"], 1, ["0", "z*x1"])
    res = bertini_rank_one(d)
    assert res.weights == (2,) and res.predicted_swan == 3
    assert res.transformed.f.entries[1] == d.ring.parse("z*x1 + z^3")

    d = ASWDatum.from_strings(GF(3), ["z", "x1"], 0, ["2"])
    res = bertini_rank_one(d)
    assert res.trivial and res.predicted_swan == 0
    assert alignment_check(d).common_value == 0


def test_linear_projection_control():
    for p, m in ((2, 4), (3, 9)):
        F = GF(p)
        for a, b, expected in ((1, 1, [1, m - 1]), (0, 1, [0, m - 1]), (1, 0, [0, 1])):
            rep = alignment_check(linear_projection_datum(F, m, a, b), fibers=[[0], [1]])
            assert rep.values == expected
            assert rep.verdict == MISALIGNED
    with pytest.raises(ValueError):
        linear_projection_datum(GF(2), 4, 0, 0)


def test_control_aligns_after_bertini():
    d = ASWDatum.from_strings(GF(3), ["z", "x1"], 0, ["z^8*x1"])
    res = bertini_rank_one(d)
    rep = alignment_check(d, res.weights, "exhaustive")
    assert rep.verdict == ALIGNED and rep.common_value == res.predicted_swan == 10


def test_fiber_points_modes():
    pts, mode = fiber_points(GF(3), 2)
    assert mode == "exhaustive" and len(pts) == 9
    pts, mode = fiber_points(GF(3, 2), 4, samples=7, seed=4)
    assert mode == "sample" and len(pts) == 7
    assert pts == fiber_points(GF(3, 2), 4, "sample", seed=4, samples=7)[0]
    with pytest.raises(ValueError):
        fiber_points(GF(2), 2, [[0]])


def test_inconclusive_verdict(monkeypatch):
    # normalized one-variable data always carry a certificate, so force an inexact report
    import wildramify.bertini as mod
    from wildramify.swan import SwanReport
    monkeypatch.setattr(mod, "swan_at_infinity", lambda f: SwanReport(4, 4, 3, False))
    d = ASWDatum.from_strings(GF(2), ["z", "x1"], 0, ["z^3*x1"])
    assert alignment_check(d, fibers="exhaustive").verdict == INCONCLUSIVE


def _random_datum(rng):
    F = rng.choice([GF(2), GF(3), GF(2, 2), GF(2, 3), GF(3, 2)])
    n = rng.randint(1, 2)
    r = rng.randint(0, 1)
    R = PolyRing(F, ["z"] + [f"x{i}" for i in range(1, n + 1)])
    comps = [rand_poly(rng, R, 3, 3) for _ in range(r + 1)]
    return ASWDatum(F, R.names, r, WittVector(F.p, comps))


def test_random_data_align_at_prediction():
    rng = random.Random(11)
    for _ in range(20):
        d = _random_datum(rng)
        res = bertini_rank_one(d)
        rep = alignment_check(d, res.weights, "exhaustive")
        assert rep.verdict == ALIGNED
        assert set(rep.values) == {res.predicted_swan}
