"""Minimal resolution of a toric surface and intersection theory on it.

The rays of the resolution ``X~`` are labelled ``(i, p)``: ``(i, 0)`` is the
original ray ``v_i`` (strict transform ``E_{i,0}`` of ``C_i``) and
``(i, 1), ..., (i, m_i)`` are the new rays inside the cone of ``x_i`` in
counterclockwise order, so ``E_{i,1}`` meets ``E_{i,0}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import ceil, floor
from typing import Iterable, Optional, Sequence

from . import exactalg as ea
from .hjfrac import hj_expand
from .toricfan import ClassGroupData, Fan, cone_type, det2, divisor_class_groups, unimodular_partner

Label = tuple[int, int]


class CohomologyInconsistency(RuntimeError):
    pass


def resolve_cone(v: Sequence[int], w: Sequence[int]) -> tuple[list[tuple[int, int]], list[int]]:
    """Boundary lattice points ``v = u_0, u_1, ..., u_{m+1} = w`` of the
    convex hull of the nonzero lattice points of the cone, and the digits
    ``d_p`` with ``u_{p-1} + u_{p+1} = d_p u_p``."""
    v, w = tuple(v), tuple(w)
    r = det2(v, w)
    if r < 1:
        raise ValueError(f"cone ({v}, {w}) is degenerate or clockwise")
    u = unimodular_partner(v)
    t = -(det2(u, w) // r)
    u1 = (u[0] + t * v[0], u[1] + t * v[1])
    a = det2(u1, w)
    if r == 1:
        assert u1 == w
        return [v, w], []
    ds = hj_expand((r, a))
    pts = [v, u1]
    for d in ds:
        p, q = pts[-1], pts[-2]
        pts.append((d * p[0] - q[0], d * p[1] - q[1]))
    if pts[-1] != w:
        raise AssertionError(f"hull walk ended at {pts[-1]}, expected {w}")
    return pts, ds


@dataclass(frozen=True)
class DivisorClass:
    """Integer combination of the toric divisors of a surface (by ray position)."""

    coeffs: tuple[int, ...]

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs, strict=True)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def to_json(self) -> list[int]:
        return list(self.coeffs)


@dataclass(frozen=True)
class ResolvedSurface:
    base: Fan
    rays: tuple[tuple[int, int], ...]
    labels: tuple[Label, ...]
    d: tuple[int, ...]
    chains: tuple[tuple[int, ...], ...]
    base_data: ClassGroupData = field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.rays)

    @cached_property
    def position(self) -> dict[Label, int]:
        return {lab: k for k, lab in enumerate(self.labels)}

    @cached_property
    def exceptional_index(self) -> tuple[int, ...]:
        return tuple(k for k, (_, p) in enumerate(self.labels) if p >= 1)

    @property
    def exceptional_labels(self) -> list[Label]:
        return [self.labels[k] for k in self.exceptional_index]

    def m(self, i: int) -> int:
        """Chain length over the 1-based point ``i``."""
        return len(self.chains[i - 1])

    def dval(self, i: int, p: int) -> int:
        return self.d[self.position[(i, p)]]

    # -- classes
    def zero(self) -> DivisorClass:
        return DivisorClass((0,) * self.size)

    def divisor(self, i: int, p: int = 0) -> DivisorClass:
        k = self.position[(i, p)]
        return DivisorClass(tuple(int(j == k) for j in range(self.size)))

    def cls(self, coeffs: Iterable[int]) -> DivisorClass:
        c = tuple(int(x) for x in coeffs)
        if len(c) != self.size:
            raise ValueError(f"expected {self.size} coefficients")
        return DivisorClass(c)

    def canonical(self) -> DivisorClass:
        return DivisorClass((-1,) * self.size)

    def relations(self) -> list[DivisorClass]:
        """The principal divisors ``div(chi^m)`` for the basis of ``M``."""
        return [DivisorClass(tuple(v[k] for v in self.rays)) for k in range(2)]

    @cached_property
    def intersection_matrix(self) -> ea.Matrix:
        N = self.size
        Q = ea.zeros(N, N)
        for k in range(N):
            Q[k][k] = -self.d[k]
            Q[k][(k + 1) % N] += 1
            Q[(k + 1) % N][k] += 1
        return Q

    @cached_property
    def class_group(self) -> ea.FgAbelianGroup:
        """``Cl(X~)``, free of rank ``N - 2``."""
        return ea.cokernel(ea.transpose([[v[0] for v in self.rays], [v[1] for v in self.rays]]))

    def to_json(self) -> dict:
        return {
            "rays": [
                {"label": [i, p], "ray": list(v), "d": dv}
                for (i, p), v, dv in zip(self.labels, self.rays, self.d)
            ],
            "chains": [
                {"point": pt.label, "i": k + 1, "r": pt.r, "a": pt.a, "ds": list(ch)}
                for k, (pt, ch) in enumerate(zip(self.base.points(), self.chains))
            ],
        }


def minimal_resolution(f: Fan) -> ResolvedSurface:
    rays, labels, chains = [], [], []
    for i in range(f.n):
        pts, ds = resolve_cone(*f.cone(i))
        t = cone_type(*f.cone(i))
        assert ds == hj_expand(t), (ds, t)
        rays.extend(pts[:-1])
        labels.extend((i + 1, p) for p in range(len(pts) - 1))
        chains.append(tuple(ds))
    N = len(rays)
    d = []
    for k in range(N):
        prev, cur, nxt = rays[k - 1], rays[k], rays[(k + 1) % N]
        s = (prev[0] + nxt[0], prev[1] + nxt[1])
        # s is a multiple of cur since det(prev, cur) = det(cur, nxt) = 1
        assert det2(cur, nxt) == 1 and det2(s, cur) == 0
        c = s[0] // cur[0] if cur[0] else s[1] // cur[1]
        d.append(c)
    for k, (i, p) in enumerate(labels):
        if p:
            assert d[k] == chains[i - 1][p - 1]
    return ResolvedSurface(f, tuple(rays), tuple(labels), tuple(d), tuple(chains), divisor_class_groups(f))


def intersection_number(s: ResolvedSurface, D1: DivisorClass, D2: DivisorClass) -> int:
    """Adjacent divisors meet once, ``D_k^2 = -d_k``, the rest are disjoint."""
    a, b = D1.coeffs, D2.coeffs
    N = s.size
    total = 0
    for k in range(N):
        if a[k]:
            total += a[k] * (b[k - 1] + b[(k + 1) % N] - s.d[k] * b[k])
    return total


def degree(s: ResolvedSurface, D: DivisorClass, i: int, p: int = 0) -> int:
    """``D . E_{i,p}``."""
    k = s.position[(i, p)]
    a = D.coeffs
    return a[k - 1] + a[(k + 1) % s.size] - s.d[k] * a[k]


def degrees_on_exceptional(s: ResolvedSurface, D: DivisorClass) -> dict[Label, int]:
    return {lab: degree(s, D, *lab) for lab in s.exceptional_labels}


def pushforward_class(s: ResolvedSurface, D: DivisorClass) -> ea.GroupElement:
    """Image in ``Cl(X)``: forget exceptional coefficients, ``E_{i,0} -> C_i``."""
    vec = [D.coeffs[s.position[(i + 1, 0)]] for i in range(s.base.n)]
    return s.base_data.cl.project(vec)


def lattice_points(s: ResolvedSurface, D: DivisorClass) -> int:
    """Number of ``m`` in ``M`` with ``<m, v_k> >= -D_k`` for every ray."""
    rays, a = s.rays, D.coeffs
    N = s.size
    verts = []
    for j, k in combinations(range(N), 2):
        u, v = rays[j], rays[k]
        dt = det2(u, v)
        if not dt:
            continue
        # solve <m,u> = -a_j, <m,v> = -a_k
        x = Fraction(-a[j] * v[1] + a[k] * u[1], dt)
        y = Fraction(-a[k] * u[0] + a[j] * v[0], dt)
        if all(x * w[0] + y * w[1] >= -c for w, c in zip(rays, a)):
            verts.append((x, y))
    if not verts:
        return 0
    x0, x1 = ceil(min(p[0] for p in verts)), floor(max(p[0] for p in verts))
    y0, y1 = ceil(min(p[1] for p in verts)), floor(max(p[1] for p in verts))
    count = 0
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            if all(x * w[0] + y * w[1] >= -c for w, c in zip(rays, a)):
                count += 1
    return count


def euler_characteristic(s: ResolvedSurface, D: DivisorClass) -> int:
    """Riemann-Roch: ``1 + D.(D - K)/2``."""
    v = intersection_number(s, D, D - s.canonical())
    assert v % 2 == 0
    return 1 + v // 2


def cohomology(s: ResolvedSurface, D: DivisorClass) -> tuple[int, int, int]:
    h0 = lattice_points(s, D)
    h2 = lattice_points(s, s.canonical() - D)
    chi = euler_characteristic(s, D)
    h1 = h0 + h2 - chi
    if h1 < 0:
        raise CohomologyInconsistency(f"h1 would be {h1} for {D.coeffs}")
    return h0, h1, h2
