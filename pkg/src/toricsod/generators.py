"""Reflexive rank-one generators ``R_i`` of the decomposition on ``X``.

``R_i`` is the pushforward of the first bundle of the untwisted block ``i``;
its class is ``K_X + C + C_1 + ... + C_i`` with ``C`` the pushforward of the
untwisting bundle ``M``.  ``C`` is only defined up to Cartier classes, and is
normalized here to the canonical representative modulo ``Pic(X)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from . import exactalg as ea
from .resolution import ResolvedSurface, degree, minimal_resolution, pushforward_class
from .sodbuilder import untwist
from .toricfan import pic_in_cl, wpp_fan


class ObstructionPresent(ValueError):
    """The Brauer class is nontrivial, so there is no untwisted collection."""

    code = "obstruction_present"


@dataclass(frozen=True)
class ChainDegrees:
    ds: tuple[int, ...]
    degs: tuple[int, ...]

    def __post_init__(self):
        if len(self.ds) != len(self.degs):
            raise ValueError("ds and degs must have equal length")
        if any(d < 2 for d in self.ds):
            raise ValueError("chain self-intersections must be <= -2")


def _chain(c) -> ChainDegrees:
    return c if isinstance(c, ChainDegrees) else ChainDegrees(tuple(c[0]), tuple(c[1]))


def reflexive_pushforward_test(c) -> bool:
    """Sufficient criterion for ``pi_* L`` to be reflexive of rank one:
    ``L(D).E_j <= 0`` for all ``j`` with negative sum, ``D`` the whole chain."""
    c = _chain(c)
    m = len(c.ds)
    if m == 0:
        return True
    vals = [c.degs[j] + 2 - (j == 0) - (j == m - 1) - c.ds[j] for j in range(m)]
    return all(v <= 0 for v in vals) and sum(vals) < 0


def higher_pushforward_vanishes(c) -> bool:
    """``L - K`` is nef along the chain, i.e. ``L.E_j >= d_j - 2``."""
    c = _chain(c)
    return all(l >= d - 2 for d, l in zip(c.ds, c.degs))


def descends_test(c) -> bool:
    """``L`` is trivial on every curve of the chain."""
    return all(l == 0 for l in _chain(c).degs)


def crt_shift(r1: int, rn: int) -> int:
    """Least ``s >= 0`` with ``s = 0 mod r1`` and ``s = -1 mod rn``."""
    if r1 < 1 or rn < 1:
        raise ValueError("orders must be positive")
    if gcd(r1, rn) != 1:
        raise ValueError(f"orders {r1} and {rn} are not coprime")
    if rn == 1:
        return 0
    # s = r1 t with r1 t = -1 mod rn
    t = (-pow(r1, -1, rn)) % rn
    return r1 * t


def chain_degrees(s: ResolvedSurface, D, i: int) -> ChainDegrees:
    """Degrees of ``D`` on the chain over the 1-based point ``i``."""
    m = s.m(i)
    return ChainDegrees(
        tuple(s.dval(i, p) for p in range(1, m + 1)),
        tuple(degree(s, D, i, p) for p in range(1, m + 1)),
    )


@dataclass(frozen=True)
class Generator:
    cls: ea.GroupElement
    rank: int
    locally_free_at: tuple[int, ...]
    reflexive_at: tuple[int, ...]
    bundle_locally_free_at: tuple[int, ...]
    chain_ok: bool

    def to_json(self, degree: bool) -> dict:
        out = {"class": list(self.cls.coords)}
        if degree:
            out["degree"] = self.cls.coords[-1]
        out.update(
            {
                "rank": self.rank,
                "locally_free_at": list(self.locally_free_at),
                "reflexive_at": list(self.reflexive_at),
                "extension_locally_free_at": list(self.bundle_locally_free_at),
            }
        )
        return out


@dataclass(frozen=True)
class GeneratorSet:
    C: ea.GroupElement
    K: ea.GroupElement
    generators: tuple[Generator, ...]
    divisor_classes: tuple[ea.GroupElement, ...]

    @property
    def classes(self) -> list[ea.GroupElement]:
        return [g.cls for g in self.generators]

    @property
    def m_ranks(self) -> list[int]:
        return [g.rank for g in self.generators]

    def degrees(self) -> Optional[list[int]]:
        cl = self.C.group
        if cl.free_rank != 1 or cl.invariant_factors:
            return None
        return [c.coords[0] for c in self.classes]

    def to_json(self) -> dict:
        deg = self.degrees() is not None
        C = {"class": list(self.C.coords)}
        if deg:
            C["degree"] = self.C.coords[0]
        return {
            "C": C,
            "K": list(self.K.coords),
            "generators": [g.to_json(deg) for g in self.generators],
        }


def normalize_mod_cartier(s: ResolvedSurface, x: ea.GroupElement) -> ea.GroupElement:
    H = pic_in_cl(s.base, s.base_data)
    return x.group.element(ea.reduce_mod_lattice(x.coords, H))


def generator_classes(s: ResolvedSurface) -> GeneratorSet:
    u = untwist(s)
    if u is None:
        raise ObstructionPresent("the Brauer class is nontrivial; no untwisted collection exists")
    n = s.base.n
    data = s.base_data
    C = normalize_mod_cartier(s, pushforward_class(s, u.M))
    Cs = data.divisor_classes
    K = -sum(Cs[1:], Cs[0])
    pts = s.base.points()
    labels = s.base.labels
    gens = []
    running = K + C
    for i in range(1, n + 1):
        running = running + Cs[i - 1]
        M0 = u.blocks[i - 1].classes[0]
        tail_gor = all(p.gorenstein for p in pts[i:])
        lf, refl = [], []
        for j in range(1, n + 1):
            cd = chain_degrees(s, M0, j)
            free = j < i or (j > i and tail_gor) or descends_test(cd)
            if free:
                lf.append(labels[j - 1])
            if free or j == i or reflexive_pushforward_test(cd):
                refl.append(labels[j - 1])
        # the rank r_i extension is locally free at x_j for j <= i, everywhere
        # when x_2..x_n are Gorenstein
        all_gor = all(p.gorenstein for p in pts[1:])
        blf = [labels[j - 1] for j in range(1, n + 1) if j <= i or all_gor or pts[j - 1].r == 1]
        own = chain_degrees(s, M0, i)
        ok = reflexive_pushforward_test(own) and higher_pushforward_vanishes(own)
        gens.append(Generator(running, pts[i - 1].r, tuple(lf), tuple(refl), tuple(blf), ok))
    return GeneratorSet(C, K, tuple(gens), Cs)


def wpp_generators(w1: int, w2: int, w3: int, point_orders: Optional[Sequence[int]] = None) -> tuple[int, int, int]:
    """Degrees of ``R_1, R_2, R_3`` on ``P(w1, w2, w3)``.

    The points are ordered so that ``x_i`` has order ``W_i``, where ``W`` is
    ``point_orders`` (a permutation of the weights) or the weights
    themselves.  Then ``C_1, C_2, C_3`` have degrees ``W_2, W_3, W_1`` and
    ``R = (s W_2 - W_1 - W_3, s W_2 - W_1, s W_2)`` with ``s = crt_shift(W_1, W_3)``.
    """
    W = tuple(point_orders) if point_orders is not None else (w1, w2, w3)
    if sorted(W) != sorted((w1, w2, w3)):
        raise ValueError(f"point orders {W} are not a permutation of the weights")
    for a, b in ((W[0], W[1]), (W[0], W[2]), (W[1], W[2])):
        if gcd(a, b) != 1:
            raise ValueError("weights must be pairwise coprime")
    s = crt_shift(W[0], W[2])
    top = s * W[1]
    return (top - W[0] - W[2], top - W[0], top)


def wpp_generator_degrees(w1: int, w2: int, w3: int) -> list[int]:
    """Generator degrees computed through the resolution of ``wpp_fan(w1, w2, w3)``."""
    gs = generator_classes(minimal_resolution(wpp_fan(w1, w2, w3)))
    d = gs.degrees()
    assert d is not None
    return d
