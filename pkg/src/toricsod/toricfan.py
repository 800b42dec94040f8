"""Complete fans of projective toric surfaces.

A fan is a counterclockwise cyclic list of primitive rays ``v_1..v_n`` in
``N = Z^2``.  The torus-fixed point ``x_i`` is the cone spanned by ``v_i`` and
``v_{i+1}``; it is a cyclic quotient singularity of order
``r_i = det(v_i, v_{i+1})``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

from . import exactalg as ea
from .hjfrac import SingularityType

Vec = tuple[int, int]


class FanError(ValueError):
    """Base class for invalid fan input."""

    code = "invalid_fan"


class TooFewRays(FanError):
    code = "too_few_rays"


class NonPrimitiveRay(FanError):
    code = "non_primitive_ray"


class NonConvexOrClockwise(FanError):
    code = "non_convex_or_clockwise"


class WrongWinding(FanError):
    code = "wrong_winding"


class WeightError(ValueError):
    code = "bad_weights"


def det2(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``a x + b y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def unimodular_partner(v: Sequence[int]) -> Vec:
    """Some ``w`` with ``det(v, w) = 1``; ``v`` must be primitive."""
    g, x, y = ext_gcd(v[0], v[1])
    if g != 1:
        raise NonPrimitiveRay(f"ray {tuple(v)} is not primitive")
    # det(v, w) = v0 w1 - v1 w0 = 1 with w = (-y, x)
    return (-y, x)


def _half(v: Sequence[int]) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_less(u: Sequence[int], v: Sequence[int]) -> bool:
    hu, hv = _half(u), _half(v)
    return hu < hv or (hu == hv and det2(u, v) > 0)


@dataclass(frozen=True)
class Fan:
    rays: tuple[Vec, ...]
    labels: tuple[int, ...] = ()
    weights: Optional[tuple[int, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, len(self.rays) + 1)))

    @property
    def n(self) -> int:
        return len(self.rays)

    def ray(self, i: int) -> Vec:
        return self.rays[i % self.n]

    def cone(self, i: int) -> tuple[Vec, Vec]:
        """Rays of the cone of the 0-based point ``i``."""
        return self.ray(i), self.ray(i + 1)

    def orders(self) -> list[int]:
        return [det2(*self.cone(i)) for i in range(self.n)]

    def points(self) -> list["PointData"]:
        return [singularity_type(self, i + 1) for i in range(self.n)]

    def upsilon(self) -> ea.Matrix:
        """The ``2 x n`` matrix with the rays as columns."""
        return [[v[0] for v in self.rays], [v[1] for v in self.rays]]

    def to_json(self) -> dict:
        out = {"rays": [list(v) for v in self.rays]}
        if self.weights:
            out["weights"] = list(self.weights)
        return out


@dataclass(frozen=True)
class PointData:
    index: int
    type: SingularityType
    label: int

    @property
    def r(self) -> int:
        return self.type.r

    @property
    def a(self) -> int:
        return self.type.a

    @property
    def gorenstein(self) -> bool:
        return self.type.gorenstein

    def to_json(self) -> dict:
        return {"point": self.label, "r": self.r, "a": self.a, "gorenstein": self.gorenstein}


def validate_fan(rays, labels: Sequence[int] = (), weights=None) -> Fan:
    """Check the rays and return a :class:`Fan`; raises a :class:`FanError` subclass."""
    try:
        rays = tuple((int(v[0]), int(v[1])) for v in rays)
    except (TypeError, IndexError, ValueError) as exc:
        raise FanError(f"rays must be integer pairs: {exc}") from None
    if any(len(v) != 2 for v in rays):
        raise FanError("rays must be integer pairs")
    n = len(rays)
    if n < 3:
        raise TooFewRays(f"a complete fan needs at least 3 rays, got {n}")
    for v in rays:
        if gcd(*v) != 1:
            raise NonPrimitiveRay(f"ray {v} is not primitive")
    for i in range(n):
        u, v = rays[i], rays[(i + 1) % n]
        if det2(u, v) <= 0:
            raise NonConvexOrClockwise(
                f"det({u}, {v}) = {det2(u, v)} <= 0: rays must be strictly counterclockwise"
            )
    wraps = sum(1 for i in range(n) if _angle_less(rays[(i + 1) % n], rays[i]))
    if wraps != 1:
        raise WrongWinding(f"rays wind {wraps} times around the origin, expected once")
    return Fan(rays, tuple(labels) if labels else (), tuple(weights) if weights else None)


def cone_type(v: Sequence[int], w: Sequence[int]) -> SingularityType:
    """Type ``(r, a)`` of the cone spanned by ``v`` then ``w`` (counterclockwise)."""
    r = det2(v, w)
    if r <= 0:
        raise NonConvexOrClockwise(f"det({tuple(v)}, {tuple(w)}) = {r} <= 0")
    if r == 1:
        return SingularityType(1, 0)
    u = unimodular_partner(v)
    # w = alpha v + r u
    alpha = det2(w, u)
    return SingularityType(r, (-alpha) % r).validate()


def singularity_type(f: Fan, i: int) -> PointData:
    """Data of the point ``x_i`` (1-based)."""
    if not 1 <= i <= f.n:
        raise IndexError(f"point index {i} out of range 1..{f.n}")
    t = cone_type(*f.cone(i - 1))
    return PointData(i, t, f.labels[i - 1])


def reorder(f: Fan, rotate: int = 0, reflect: bool = False) -> Fan:
    """Relabel the points.  ``reflect`` mirrors the plane (reversing the
    cyclic order, which swaps each ``a_i`` for its inverse), then the list is
    rotated so that point ``rotate + 1`` comes first."""
    rays, labels = list(f.rays), list(f.labels)
    weights = list(f.weights) if f.weights else None
    if reflect:
        # point j of the reversed list is the old point n - j (cyclically)
        rays = [(x, -y) for x, y in reversed(rays)]
        n = len(rays)
        labels = [labels[(n - 2 - j) % n] for j in range(n)]
        if weights:
            weights = [weights[(n - 2 - j) % n] for j in range(n)]
    k = rotate % len(rays)
    rays = rays[k:] + rays[:k]
    labels = labels[k:] + labels[:k]
    if weights:
        weights = weights[k:] + weights[:k]
    return validate_fan(rays, labels, weights)


def smooth_last(f: Fan) -> Fan:
    """Rotate so that a smooth point, if there is one, is the last point."""
    orders = f.orders()
    for i in range(f.n - 1, -1, -1):
        if orders[i] == 1:
            return reorder(f, rotate=i + 1)
    return f


def wpp_fan(w1: int, w2: int, w3: int) -> Fan:
    """Fan of the weighted projective plane ``P(w1, w2, w3)``.

    Point ``x_i`` has order ``w_i``; the rays are ``(u_2, u_3, u_1)`` where
    ``w_1 u_1 + w_2 u_2 + w_3 u_3 = 0``, so the ray ``v_3 = u_1`` is the one
    opposite ``x_1``.
    """
    ws = [int(w1), int(w2), int(w3)]
    if any(w < 1 for w in ws):
        raise WeightError(f"weights must be positive: {ws}")
    for i in range(3):
        for j in range(i + 1, 3):
            if gcd(ws[i], ws[j]) != 1:
                raise WeightError(f"weights must be pairwise coprime: {ws}")
    U, _, _ = ea.smith_normal_form([[w] for w in ws])
    us = []
    for j in range(3):
        x, y = U[1][j], U[2][j]
        g = gcd(x, y)
        us.append((x // g, y // g))
    rays = [us[1], us[2], us[0]]
    if det2(rays[0], rays[1]) < 0:
        rays = [(x, -y) for x, y in rays]
    f = validate_fan(rays, weights=ws)
    assert f.orders() == ws, (f.orders(), ws)
    return f


# -- groups


@dataclass(frozen=True)
class ClassGroupData:
    cl: ea.FgAbelianGroup
    pic_rank: int
    divisor_classes: tuple[ea.GroupElement, ...]

    def degrees(self) -> Optional[list[int]]:
        """Degrees of the ``C_i`` when ``Cl`` has rank one."""
        if self.cl.free_rank != 1:
            return None
        return [c.coords[-1] for c in self.divisor_classes]


def divisor_class_groups(f: Fan) -> ClassGroupData:
    """``Cl(X) = coker(upsilon^T)`` with the classes of ``C_1..C_n``, and the Picard rank."""
    ut = ea.transpose(f.upsilon())
    cl = ea.cokernel(ut)
    n = f.n
    if cl.free_rank == 1:
        c1 = cl.project([int(j == 0) for j in range(n)])
        if c1.coords[-1] < 0:
            cl = cl.flip_free(0)
    classes = tuple(cl.project([int(j == i) for j in range(n)]) for i in range(n))
    pic_rank = len(ea.kernel_basis(f.upsilon())[0]) if n else 0
    return ClassGroupData(cl, pic_rank, classes)


def brauer_from_rays(f: Fan) -> ea.FgAbelianGroup:
    """``N / N_Sigma``: the cokernel of ``upsilon``."""
    return ea.cokernel(f.upsilon())


def cartier_lattice(f: Fan) -> ea.Matrix:
    """Rows spanning the T-Cartier divisors ``sum a_i C_i`` inside ``Z^n``.

    ``a`` is Cartier when on each cone there is ``m`` in ``M`` with
    ``<m, v> = a`` on both of its rays.
    """
    n = f.n
    # unknowns: a_1..a_n, then (m_i1, m_i2) per cone
    A = []
    for i in range(n):
        for j in (i, (i + 1) % n):
            row = [0] * (3 * n)
            row[j] = 1
            v = f.rays[j]
            row[n + 2 * i] = -v[0]
            row[n + 2 * i + 1] = -v[1]
            A.append(row)
    K = ea.kernel_basis(A)
    gens = [[K[j][c] for j in range(n)] for c in range(len(K[0]))]
    return ea.hermite_basis(gens, n)


def pic_in_cl(f: Fan, data: Optional[ClassGroupData] = None) -> ea.Matrix:
    """Hermite basis of the image of ``Pic(X)`` in the normal-form coordinates of ``Cl(X)``."""
    data = data or divisor_class_groups(f)
    rows = [list(data.cl.project(a).coords) for a in cartier_lattice(f)]
    t = len(data.cl.invariant_factors)
    # torsion coordinates are only defined modulo their factors
    for i, q in enumerate(data.cl.invariant_factors):
        rows.append([q if j == i else 0 for j in range(data.cl.ngens)])
    assert t == 0 or rows
    return ea.hermite_basis(rows, data.cl.ngens)
