"""Block exceptional collections of line bundles on the minimal resolution.

Starting from ``E_{1,0}`` and walking counterclockwise, each step adds the
divisor of the next ray.  Block ``i`` is

    L_{i,0} = E_{1,*} + ... + E_{i-1,*} + E_{i,0},    L_{i,p} = L_{i,0} + E_{i,1} + ... + E_{i,p}

and is adherent to the chain over ``x_i`` with twist ``b_{i,p} = 2 - d_{i,p}``,
except ``b_{n,m_n} = 3 - d_{n,m_n}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import exactalg as ea
from .brauer_groth import brauer_class_of, ip_cokernel, standard_beta
from .kkalg import KKPresentation, kk_presentation, monomial_basis
from .resolution import (
    DivisorClass,
    ResolvedSurface,
    cohomology,
    degree,
    euler_characteristic,
    intersection_number,
    minimal_resolution,
)
from .toricfan import Fan, reorder


@dataclass(frozen=True)
class AdherentBlock:
    i: int
    classes: tuple[DivisorClass, ...]
    twist: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.classes) - 1


def theorem_twist(s: ResolvedSurface) -> list[int]:
    """Twist values over all exceptional curves, in ray order."""
    n = s.base.n
    last = (n, s.m(n))
    return [(3 if lab == last else 2) - s.dval(*lab) for lab in s.exceptional_labels]


def build_collection(s: ResolvedSurface) -> list[AdherentBlock]:
    n = s.base.n
    twist = dict(zip(s.exceptional_labels, theorem_twist(s)))
    blocks = []
    prefix = s.zero()
    for i in range(1, n + 1):
        L = prefix + s.divisor(i, 0)
        classes = [L]
        for p in range(1, s.m(i) + 1):
            L = L + s.divisor(i, p)
            classes.append(L)
        blocks.append(AdherentBlock(i, tuple(classes), tuple(twist[(i, p)] for p in range(1, s.m(i) + 1))))
        prefix = classes[-1]
    return blocks


def verify_adherence(s: ResolvedSurface, block: AdherentBlock) -> bool:
    """Degrees of ``L_0`` on the chain match the twist, and ``L_p = L_{p-1} + E_p``."""
    i = block.i
    if block.m != s.m(i) or len(block.twist) != block.m:
        return False
    L0 = block.classes[0]
    for p in range(1, block.m + 1):
        if block.classes[p] != block.classes[p - 1] + s.divisor(i, p):
            return False
        d = s.dval(i, p)
        want = d + block.twist[p - 1] - (1 if p == 1 else 2)
        if degree(s, L0, i, p) != want:
            return False
    return True


def collection_pattern_holds(s: ResolvedSurface, blocks: Sequence[AdherentBlock]) -> bool:
    """``L_{i,0} . E_{k,p} = [i=k][p=1] + [k=n][p=m_n]`` for ``i <= k``."""
    n = s.base.n
    for blk in blocks:
        for k in range(blk.i, n + 1):
            for p in range(1, s.m(k) + 1):
                want = int(blk.i == k and p == 1) + int(k == n and p == s.m(n))
                if degree(s, blk.classes[0], k, p) != want:
                    return False
    return True


def flatten(blocks: Sequence[AdherentBlock]) -> list[DivisorClass]:
    return [c for b in blocks for c in b.classes]


def verify_semiorthogonality(s: ResolvedSurface, collection: Sequence[AdherentBlock] | Sequence[DivisorClass]) -> bool:
    """Every ``L`` is exceptional and ``H^*(L' - L) = 0`` whenever ``L'`` precedes ``L``."""
    Ls = _as_list(collection)
    if cohomology(s, s.zero()) != (1, 0, 0):
        return False
    for b in range(len(Ls)):
        for a in range(b):
            if cohomology(s, Ls[a] - Ls[b]) != (0, 0, 0):
                return False
    return True


def gram_matrix(s: ResolvedSurface, collection) -> ea.Matrix:
    Ls = _as_list(collection)
    return [[euler_characteristic(s, Lj - Li) for Lj in Ls] for Li in Ls]


def numeric_fullness(s: ResolvedSurface, collection) -> bool:
    """Length equals ``rank K_0(X~)`` and the Euler form is upper unitriangular."""
    Ls = _as_list(collection)
    if len(Ls) != s.size:
        return False
    G = gram_matrix(s, Ls)
    N = len(Ls)
    return all(G[a][a] == 1 for a in range(N)) and all(G[b][a] == 0 for b in range(N) for a in range(b))


def _as_list(collection) -> list[DivisorClass]:
    items = list(collection)
    if items and isinstance(items[0], AdherentBlock):
        return flatten(items)
    return items


@dataclass(frozen=True)
class Untwist:
    M: DivisorClass
    blocks: tuple[AdherentBlock, ...]


def untwist(s: ResolvedSurface) -> Optional[Untwist]:
    """Line bundle ``M`` with ``M.E = 0`` on every exceptional curve except
    ``M.E_{n,m_n} = -1``, and the collection ``L_{i,p} + M + K``.

    ``None`` when no such ``M`` exists (a nontrivial Brauer class).
    """
    n = s.base.n
    exc = s.exceptional_labels
    last = (n, s.m(n))
    if s.m(n) == 0:
        M = s.zero()
    else:
        A = [list(s.intersection_matrix[s.position[lab]]) for lab in exc]
        rhs = [-1 if lab == last else 0 for lab in exc]
        x = ea.solve_integer(A, rhs)
        if x is None:
            return None
        M = s.cls(x)
    shift = M + s.canonical()
    blocks = tuple(
        AdherentBlock(b.i, tuple(c + shift for c in b.classes), (0,) * b.m) for b in build_collection(s)
    )
    for blk in blocks:
        for k in range(blk.i, n + 1):
            for p in range(1, s.m(k) + 1):
                want = int(blk.i == k and p == 1) + s.dval(k, p) - 2
                assert degree(s, blk.classes[0], k, p) == want
    return Untwist(M, blocks)


# -- report


@dataclass(frozen=True)
class BlockReport:
    point: int
    r: int
    a: int
    gorenstein: bool
    ds: tuple[int, ...]
    twist: tuple[int, ...]
    algebra: KKPresentation

    def to_json(self) -> dict:
        alg = self.algebra.to_json()
        alg["basis"] = [str(w) for w in monomial_basis(self.algebra)]
        return {
            "point": self.point,
            "r": self.r,
            "a": self.a,
            "gorenstein": self.gorenstein,
            "ds": list(self.ds),
            "twist": list(self.twist),
            "algebra": alg,
        }


@dataclass(frozen=True)
class SODReport:
    fan: Fan
    surface: ResolvedSurface
    blocks: tuple[BlockReport, ...]
    beta: ea.GroupElement
    brauer: ea.FgAbelianGroup
    untwisted: bool
    untwist_M: Optional[DivisorClass]
    perf_valid: bool
    adherence: bool
    semiorthogonal: bool
    full: bool

    def to_json(self) -> dict:
        exc = self.surface.exceptional_labels
        out = {
            "exceptional_curves": [list(lab) for lab in exc],
            "rays": [list(v) for v in self.fan.rays],
            "order": list(self.fan.labels),
            "blocks": [b.to_json() for b in self.blocks],
            "brauer": self.brauer.to_json(),
            "beta": self.beta.to_json(),
            "untwisted": self.untwisted,
            "perf_valid": self.perf_valid,
            "checks": {
                "adherence": self.adherence,
                "semiorthogonality": self.semiorthogonal,
                "numeric_fullness": self.full,
            },
            "decomposition": self.render(),
            "collection": [
                {
                    "point": rep.point,
                    "classes": [c.to_json() for c in blk.classes],
                    "exceptional_degrees": [[degree(self.surface, c, *lab) for lab in exc] for c in blk.classes],
                }
                for rep, blk in zip(self.blocks, build_collection(self.surface))
            ],
        }
        if self.untwist_M is not None:
            out["untwist_M"] = self.untwist_M.to_json()
        return out

    def render(self) -> str:
        twisted = not self.beta.is_zero()
        left = "D^b(X, beta)" if twisted else "D^b(X)"
        parts = ", ".join(f"D^b({b.algebra.render()})" for b in self.blocks)
        return f"{left} = < {parts} >"


def sod_report(f: Fan, rotate: int = 0, reflect: bool = False, check_cohomology: bool = True) -> SODReport:
    """Decomposition data for the given ordering of the points."""
    g = reorder(f, rotate, reflect) if (rotate or reflect) else f
    s = minimal_resolution(g)
    blocks = build_collection(s)
    pts = g.points()
    reports = tuple(
        BlockReport(p.label, p.r, p.a, p.gorenstein, s.chains[k], blocks[k].twist, kk_presentation(p.type))
        for k, p in enumerate(pts)
    )
    for b in reports:
        monomial_basis(b.algebra)  # dimension guard
    beta = standard_beta(s)
    # the twist of the collection has the same Brauer class as delta_{E_{n,m_n}}
    assert brauer_class_of(s, theorem_twist(s)) == beta
    u = untwist(s)
    adh = all(verify_adherence(s, b) for b in blocks) and collection_pattern_holds(s, blocks)
    semi = verify_semiorthogonality(s, blocks) if check_cohomology else True
    full = numeric_fullness(s, blocks)
    return SODReport(
        g,
        s,
        reports,
        beta,
        ip_cokernel(s).br,
        u is not None,
        u.M if u else None,
        all(p.gorenstein for p in pts[1:]),
        adh,
        semi,
        full,
    )
