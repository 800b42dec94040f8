"""Brauer group through the intersection pairing, Brauer classes of twists,
and Grothendieck groups of (twisted) derived categories.

``IP : Cl(X~) -> Z^E`` sends a divisor class to its degrees on the
exceptional curves; ``Br(X)`` is its cokernel and ``B`` the projection onto it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import exactalg as ea
from .resolution import DivisorClass, ResolvedSurface, degree, intersection_number
from .toricfan import Fan, divisor_class_groups


@dataclass(frozen=True)
class IPData:
    ip: ea.Matrix
    br: ea.FgAbelianGroup
    basis: tuple[DivisorClass, ...]


@lru_cache(maxsize=256)
def ip_cokernel(s: ResolvedSurface) -> IPData:
    """The matrix of ``IP`` in a basis of ``Cl(X~)`` and its cokernel."""
    cl = s.class_group
    basis = tuple(s.cls(v) for v in cl.lifts)
    exc = s.exceptional_labels
    ip = [[degree(s, b, *lab) for b in basis] for lab in exc]
    br = ea.cokernel(ip, nrows=len(exc)) if exc else ea.FgAbelianGroup.from_invariants(0)
    return IPData(ip, br, basis)


def ip_vector(s: ResolvedSurface, D: DivisorClass) -> list[int]:
    """``IP(D)`` as a vector over the exceptional curves in ray order."""
    return [degree(s, D, *lab) for lab in s.exceptional_labels]


def delta(s: ResolvedSurface, i: int, p: int) -> list[int]:
    """The function ``delta_{E_{i,p}}``."""
    return [int(lab == (i, p)) for lab in s.exceptional_labels]


def brauer_class_of(s: ResolvedSurface, f: Sequence[int]) -> ea.GroupElement:
    """``B(f)`` for ``f`` given by its values on the exceptional curves."""
    data = ip_cokernel(s)
    if len(f) != len(s.exceptional_labels):
        raise ValueError("function must have one value per exceptional curve")
    if not s.exceptional_labels:
        return data.br.zero()
    return data.br.project(list(f))


def standard_beta(s: ResolvedSurface) -> ea.GroupElement:
    """``B(delta_{E_{n,m_n}})``, zero when the last point is smooth."""
    n = s.base.n
    m = s.m(n)
    if m == 0:
        return ip_cokernel(s).br.zero()
    return brauer_class_of(s, delta(s, n, m))


@dataclass(frozen=True)
class BetaRelations:
    betas: tuple[ea.GroupElement, ...]
    betas_opp: tuple[ea.GroupElement, ...]
    ok_scaling: bool
    ok_shift: bool
    ok_opp_shift: bool
    ok_gorenstein: bool
    # beta_i = a_i beta_i' and beta_{i+1} = -a_{i+1} beta_i read literally;
    # informational, see beta_relations
    literal_form: bool

    @property
    def ok(self) -> bool:
        return self.ok_scaling and self.ok_shift and self.ok_opp_shift and self.ok_gorenstein

    def to_json(self) -> dict:
        return {
            "beta": [b.to_json() for b in self.betas],
            "beta_opposite": [b.to_json() for b in self.betas_opp],
            "scaling": self.ok_scaling,
            "shift": self.ok_shift,
            "opposite_shift": self.ok_opp_shift,
            "gorenstein": self.ok_gorenstein,
            "literal_form": self.literal_form,
        }


def beta_relations(s: ResolvedSurface) -> BetaRelations:
    """Classes ``beta_i`` (point ``x_i`` last) and ``beta_i'`` (same, opposite
    orientation), and the relations between them.

    With ``x_i`` last the relevant curve is the chain end next to ``E_{i+1,0}``,
    i.e. ``E_{i,m_i}``; in the opposite orientation it is ``E_{i,1}``.

    Checked: ``beta_i' = a_i beta_i`` (from ``IP(sum_p T(d_2..d_{p-1}) E_p) =
    delta_{E_1} - a delta_{E_m}``), ``beta_{i+1}' = -beta_i``, and hence
    ``beta_{i+1} = -a'_{i+1} beta_i`` with ``a'`` the inverse of ``a`` mod ``r``.
    The same relations with ``a`` and ``a'`` swapped are reported as
    ``literal_form``; they agree whenever ``a_i^2 = 1`` on ``Br(X)``, e.g. in
    the Gorenstein case.
    """
    n = s.base.n
    zero = ip_cokernel(s).br.zero()
    pts = s.base.points()
    betas, opp = [], []
    for i in range(1, n + 1):
        m = s.m(i)
        betas.append(brauer_class_of(s, delta(s, i, m)) if m else zero)
        opp.append(brauer_class_of(s, delta(s, i, 1)) if m else zero)
    a = [p.a for p in pts]
    ainv = [pow(p.a, -1, p.r) if p.r > 1 else 0 for p in pts]
    nxt = [(k + 1) % n for k in range(n)]
    scaling = all(opp[k] == a[k] * betas[k] for k in range(n))
    shift = all(betas[nxt[k]] == -(ainv[nxt[k]] * betas[k]) for k in range(n))
    opp_shift = all(opp[nxt[k]] == -betas[k] for k in range(n))
    literal = all(betas[k] == a[k] * opp[k] for k in range(n)) and all(
        betas[nxt[k]] == -(a[nxt[k]] * betas[k]) for k in range(n)
    )
    gor = True
    if all(p.gorenstein for p in pts):
        gor = all(b == betas[0] for b in betas) and all(b == -betas[0] for b in opp)
    return BetaRelations(tuple(betas), tuple(opp), scaling, shift, opp_shift, gor, literal)


# -- Grothendieck groups


@dataclass(frozen=True)
class MukaiVector:
    rank: int
    cls: DivisorClass
    chi: int


def mukai_pairing(s: ResolvedSurface, v: MukaiVector, w: MukaiVector) -> int:
    """``r s' + r' s - D.D'``."""
    return v.rank * w.chi + w.rank * v.chi - intersection_number(s, v.cls, w.cls)


def g0_untwisted(f: Fan) -> ea.FgAbelianGroup:
    """``Z + Cl(X) + Z`` via rank, first Chern class and Euler characteristic."""
    cl = divisor_class_groups(f).cl
    return ea.direct_sum(ea.FgAbelianGroup.from_invariants(2), cl)


def g0_twisted(s: ResolvedSurface, b: Sequence[int]) -> ea.FgAbelianGroup:
    """``(Z + Cl(X~) + Z) / <(0, [E], b_E)>`` for the exceptional curves ``E``."""
    exc = s.exceptional_labels
    if len(b) != len(exc):
        raise ValueError("twist must have one value per exceptional curve")
    cl = s.class_group
    k = cl.ngens
    cols = []
    for lab, be in zip(exc, b):
        cols.append([0] + list(cl.project(list(s.divisor(*lab).coeffs)).coords) + [int(be)])
    rows = k + 2
    if not cols:
        return ea.FgAbelianGroup.from_invariants(rows)
    A = ea.transpose(cols)
    G = ea.cokernel(A, nrows=rows)
    return ea.FgAbelianGroup.from_invariants(G.free_rank, G.invariant_factors)


def g0_ext1_check(s: ResolvedSurface, b: Sequence[int]) -> bool:
    """Torsion of ``G_0(X, beta)`` agrees with ``Br(X)/<B(b)>``."""
    G = g0_twisted(s, b)
    br = ip_cokernel(s).br
    Q = ea.quotient_by_element(br, brauer_class_of(s, b))
    return ea.ext1_torsion(G).invariant_factors == Q.invariant_factors and Q.free_rank == 0
