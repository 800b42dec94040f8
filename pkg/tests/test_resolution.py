import random

import pytest
from hypothesis import given, strategies as st
from scipy.spatial import ConvexHull

from toricsod import exactalg as ea
from toricsod.golden import P123, P2, P2_MU3, random_fans
from toricsod.hjfrac import hj_expand
from toricsod.resolution import (
    cohomology,
    euler_characteristic,
    intersection_number,
    lattice_points,
    minimal_resolution,
    pushforward_class,
    resolve_cone,
)
from toricsod.toricfan import det2, validate_fan, wpp_fan


def test_resolve_a2_cone():
    pts, ds = resolve_cone((1, 1), (-2, 1))
    assert pts[1:-1] == [(0, 1), (-1, 1)] and ds == [2, 2]


def test_resolve_smooth_and_a1():
    assert resolve_cone((1, 0), (0, 1)) == ([(1, 0), (0, 1)], [])
    pts, ds = resolve_cone((1, -1), (1, 1))
    assert pts[1:-1] == [(1, 0)] and ds == [2]
    with pytest.raises(ValueError):
        resolve_cone((0, 1), (1, 0))


def _hull_points(v, w, box=30):
    # oracle: lattice points on the facets of conv(cone minus 0) that face the origin
    pts = [(x, y) for x in range(-box, box + 1) for y in range(-box, box + 1) if (x, y) != (0, 0) and det2(v, (x, y)) >= 0 and det2((x, y), w) >= 0]
    hull = ConvexHull(pts)
    out = set()
    for nx, ny, c in hull.equations:
        if c > 1e-9:
            out |= {p for p in pts if abs(nx * p[0] + ny * p[1] + c) < 1e-9}
    return out


@pytest.mark.parametrize("v,w", [((1, 0), (-3, 7)), ((1, 0), (-2, 5)), ((1, 0), (1, 5)), ((1, 1), (-2, 1)), ((0, 1), (-3, -4))])
def test_resolve_cone_matches_hull_oracle(v, w):
    pts, ds = resolve_cone(v, w)
    assert set(pts) == _hull_points(v, w)


def test_p123_resolution():
    s = minimal_resolution(validate_fan(P123))
    assert s.size == 6
    assert [len(c) for c in s.chains] == [2, 0, 1]


def test_p2_and_p11d():
    s = minimal_resolution(validate_fan(P2))
    assert s.size == 3 and not s.exceptional_labels
    for d in range(2, 9):
        s = minimal_resolution(wpp_fan(d, 1, 1))
        assert [c for c in s.chains if c] == [(d,)]


def test_intersections():
    s = minimal_resolution(validate_fan(P123))
    E11, E12, E20 = s.divisor(1, 1), s.divisor(1, 2), s.divisor(2, 0)
    assert intersection_number(s, E11, E12) == 1
    assert intersection_number(s, E11, E20) == 0
    assert intersection_number(s, E11, E11) == -2


def test_pushforward():
    s = minimal_resolution(validate_fan(P123))
    for lab in s.exceptional_labels:
        assert pushforward_class(s, s.divisor(*lab)).is_zero()
    for i in range(1, 4):
        assert pushforward_class(s, s.divisor(i, 0)) == s.base_data.divisor_classes[i - 1]
    K = pushforward_class(s, s.canonical())
    assert K.coords == (-6,)


def test_cohomology_examples():
    s = minimal_resolution(validate_fan(P123))
    assert cohomology(s, s.zero()) == (1, 0, 0)
    assert cohomology(s, s.canonical()) == (0, 0, 1)
    p2 = minimal_resolution(validate_fan(P2))
    H = p2.divisor(1)
    assert cohomology(p2, H) == (3, 0, 0)
    assert cohomology(p2, -H) == (0, 0, 0)
    assert cohomology(p2, H * -3) == (0, 0, 1)
    assert euler_characteristic(p2, H * 2) == 6


def _surface(seed):
    return minimal_resolution(random_fans(1, random.Random(seed))[0])


@given(st.integers(0, 2**31))
def test_resolution_invariants(seed):
    s = _surface(seed)
    N = s.size
    assert all(det2(s.rays[k], s.rays[(k + 1) % N]) == 1 for k in range(N))
    for p, ch in zip(s.base.points(), s.chains):
        assert list(ch) == (hj_expand(p.type) if p.r > 1 else [])
    assert s.class_group.free_rank == N - 2 and not s.class_group.invariant_factors


@given(st.integers(0, 2**31), st.lists(st.integers(-2, 2), min_size=12, max_size=12))
def test_relation_invariance_and_serre_duality(seed, cs):
    s = _surface(seed)
    cs = (cs * 4)[: s.size]
    D = s.cls(cs)
    coh = cohomology(s, D)
    R = s.relations()[0]
    for lab in s.labels:
        E = s.divisor(*lab)
        assert intersection_number(s, D + R, E) == intersection_number(s, D, E)
    assert cohomology(s, D + R) == coh
    assert cohomology(s, s.canonical() - D) == coh[::-1]
    assert coh[0] - coh[1] + coh[2] == euler_characteristic(s, D)


@given(st.integers(0, 2**31))
def test_pushforward_kernel_is_exceptional_span(seed):
    s = _surface(seed)
    n = s.base.n
    # toric-divisor vectors with zero image: kernel of the composite Z^N -> Cl(X)
    cols = []
    for k in range(s.size):
        e = [0] * s.size
        e[k] = 1
        cols.append(list(pushforward_class(s, s.cls(e)).coords))
    A = ea.transpose(cols, s.size) if cols and cols[0] else [[0] * s.size]
    # the kernel of D -> [pi_* D] contains the exceptional curves and the
    # principal divisors, and modulo principal divisors it is exactly their span
    exc = [s.divisor(*lab).coeffs for lab in s.exceptional_labels]
    for e in exc:
        assert pushforward_class(s, s.cls(e)).is_zero()
    gens = [list(e) for e in exc] + [list(r.coeffs) for r in s.relations()]
    K = ea.kernel_basis(A, s.size) if cols and cols[0] else ea.identity(s.size)
    span = ea.hermite_basis(gens, s.size)
    for c in range(len(K[0])):
        v = [K[j][c] for j in range(s.size)]
        assert not any(ea.reduce_mod_lattice(v, span))


def test_lattice_points_empty():
    p2 = minimal_resolution(validate_fan(P2))
    assert lattice_points(p2, p2.divisor(1) * -1) == 0


def test_p2mu3_chains_are_a2():
    s = minimal_resolution(validate_fan(P2_MU3))
    assert s.chains == ((2, 2),) * 3
    assert s.size == 9
