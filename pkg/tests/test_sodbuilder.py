import random

import pytest
from hypothesis import given, settings, strategies as st

from toricsod.golden import P123, P1P1_MU2, P2, P2_MU3, random_fans, suite_fans
from toricsod.kkalg import monomial_basis
from toricsod.resolution import cohomology, minimal_resolution
from toricsod.sodbuilder import (
    AdherentBlock,
    build_collection,
    collection_pattern_holds,
    flatten,
    gram_matrix,
    numeric_fullness,
    sod_report,
    theorem_twist,
    untwist,
    verify_adherence,
    verify_semiorthogonality,
)
from toricsod.exactalg import det
from toricsod.toricfan import brauer_from_rays, reorder, smooth_last, validate_fan, wpp_fan


def res(rays):
    return minimal_resolution(validate_fan(rays))


def test_p123_collection():
    s = minimal_resolution(smooth_last(validate_fan(P123)))
    blocks = build_collection(s)
    assert sum(len(b.classes) for b in blocks) == 6
    assert verify_semiorthogonality(s, blocks)
    assert numeric_fullness(s, blocks)
    assert abs(det(gram_matrix(s, blocks))) == 1


def test_p2_collection():
    s = res(P2)
    blocks = build_collection(s)
    assert [len(b.classes) for b in blocks] == [1, 1, 1]
    G = gram_matrix(s, blocks)
    assert G[0][1] == 3 and G[0][2] == 6
    assert all(G[i][i] == 1 for i in range(3)) and G[1][0] == G[2][0] == G[2][1] == 0
    H = s.divisor(1)
    assert verify_semiorthogonality(s, [s.zero(), H, H * 2])
    assert not verify_semiorthogonality(s, [H, s.zero()])
    assert not numeric_fullness(s, [s.zero(), H])


def test_adherence_edits():
    s = res(P123)
    blk = build_collection(s)[0]
    pull = s.relations()[0]
    shifted = AdherentBlock(blk.i, tuple(c + pull for c in blk.classes), blk.twist)
    assert verify_adherence(s, shifted)
    moved = AdherentBlock(blk.i, tuple(c + s.divisor(1, 1) for c in blk.classes), blk.twist)
    assert not verify_adherence(s, moved)


def test_twist_values():
    s = minimal_resolution(smooth_last(validate_fan(P123)))
    assert theorem_twist(s) == [2 - s.dval(*lab) for lab in s.exceptional_labels]
    s = res(P2_MU3)
    tw = theorem_twist(s)
    assert tw[-1] == 1 and all(t == 0 for t in tw[:-1])


def test_untwist_examples():
    assert untwist(res(P123)) is not None
    assert untwist(res(P2_MU3)) is None
    u = untwist(minimal_resolution(smooth_last(validate_fan(P123))))
    assert u is not None and not any(u.M.coeffs)


def test_sod_reports():
    rep = sod_report(wpp_fan(1, 2, 3))
    assert [b.algebra.render() for b in rep.blocks] == ["k", "k[z]/z^2", "k[z]/z^3"]
    assert rep.beta.is_zero() and rep.perf_valid
    assert rep.render() == "D^b(X) = < D^b(k), D^b(k[z]/z^2), D^b(k[z]/z^3) >"
    rep = sod_report(wpp_fan(5, 1, 1))
    assert [b.algebra.dim for b in rep.blocks] == [5, 1, 1] and rep.perf_valid
    rep = sod_report(validate_fan(P2_MU3))
    assert [b.algebra.render() for b in rep.blocks] == ["k[z]/z^3"] * 3
    assert rep.beta.order == 3 and rep.render().startswith("D^b(X, beta)")
    j = rep.to_json()
    assert j["beta"]["order"] == 3 and j["untwisted"] is False
    assert j["blocks"][0]["algebra"]["dim"] == 3


def test_reflection_swaps_types():
    f = wpp_fan(2, 3, 7)
    a = {b.point: (b.r, b.a) for b in sod_report(f).blocks}
    b = {x.point: (x.r, x.a) for x in sod_report(f, reflect=True).blocks}
    for k, (r, t) in a.items():
        assert b[k][0] == r
        assert r == 1 or (b[k][1] * t) % r == 1


def _fan(seed):
    # small fans keep the O(N^2) cohomology checks cheap
    return random_fans(1, random.Random(seed), max_n=5, max_r=7)[0]


@settings(max_examples=25)
@given(st.integers(0, 2**31), st.integers(0, 5), st.booleans())
def test_collection_properties(seed, k, refl):
    f = _fan(seed)
    g = reorder(f, k % f.n, refl)
    s = minimal_resolution(g)
    blocks = build_collection(s)
    assert all(verify_adherence(s, b) for b in blocks)
    assert collection_pattern_holds(s, blocks)
    assert verify_semiorthogonality(s, blocks)
    assert numeric_fullness(s, blocks)
    u = untwist(s)
    assert (u is not None) == brauer_from_rays(g).is_trivial()
    if u is not None:
        assert all(verify_adherence(s, b) for b in u.blocks)
        assert all(set(b.twist) <= {0} for b in u.blocks)
        assert verify_semiorthogonality(s, u.blocks)
    if s.m(g.n) == 0:
        assert theorem_twist(s) == [2 - s.dval(*lab) for lab in s.exceptional_labels]
    rep = sod_report(g, check_cohomology=False)
    assert sorted(b.algebra.dim for b in rep.blocks) == sorted(g.orders())


def test_suite_every_rotation():
    for name, f in suite_fans():
        for k in range(f.n):
            rep = sod_report(f, rotate=k)
            assert rep.adherence and rep.semiorthogonal and rep.full, name
