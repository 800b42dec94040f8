"""Golden examples and property sweeps shared by ``toricsod selftest`` and the
acceptance tests.

Each check returns a :class:`CheckResult`; nothing here prints.  Random
inputs come from a fixed seed so that reruns are identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import reduce
from itertools import permutations
from math import gcd
from typing import Callable

from . import exactalg as ea
from .brauer_groth import (
    MukaiVector,
    beta_relations,
    brauer_class_of,
    g0_ext1_check,
    g0_twisted,
    g0_untwisted,
    ip_cokernel,
    ip_vector,
    mukai_pairing,
    standard_beta,
)
from .generators import (
    generator_classes,
    higher_pushforward_vanishes,
    reflexive_pushforward_test,
    chain_degrees,
    wpp_generator_degrees,
    wpp_generators,
)
from .hjfrac import dual_fraction, hj_eval, hj_expand, inverse_type
from .kkalg import (
    KKInconsistency,
    custom_presentation,
    enumerate_words,
    is_commutative,
    kk_presentation,
    monomial_basis,
    opposite_check,
)
from .resolution import intersection_number, minimal_resolution
from .sodbuilder import (
    build_collection,
    numeric_fullness,
    sod_report,
    theorem_twist,
    untwist,
    verify_adherence,
    verify_semiorthogonality,
)
from .toricfan import (
    Fan,
    FanError,
    brauer_from_rays,
    divisor_class_groups,
    validate_fan,
    wpp_fan,
)

SEED = 20240611

P2 = ((1, 0), (0, 1), (-1, -1))
P123 = ((1, 1), (-2, 1), (1, -1))
P1P1_MU2 = ((1, 1), (-1, 1), (-1, -1), (1, -1))
P2_MU3 = ((1, 1), (-2, 1), (1, -2))

# a widely quoted variant of the order-11 algebra of P(2,3,11), with z2^2 z1^2
# in place of z2^2 z1^3: relations z1^4, z1 z2, z2^2 z1^2, z2^3 as runs
VARIANT_ORDER11_RELATIONS = [[(1, 4)], [(1, 1), (2, 1)], [(2, 2), (1, 2)], [(2, 3)]]


@dataclass(frozen=True)
class CheckResult:
    number: int
    title: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  [{self.number:2d}] {self.title}: {self.detail}"


class _Fail(Exception):
    pass


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise _Fail(msg)


def _run(number: int, title: str, body: Callable[[], str]) -> CheckResult:
    try:
        return CheckResult(number, title, True, body())
    except _Fail as exc:
        return CheckResult(number, title, False, str(exc))
    except (KKInconsistency, AssertionError, ValueError, ArithmeticError) as exc:
        return CheckResult(number, title, False, f"{type(exc).__name__}: {exc}")


def suite_fans() -> list[tuple[str, Fan]]:
    """The named fans every collection check runs over."""
    fans = [
        ("P2", validate_fan(P2)),
        ("P(1,2,3)", validate_fan(P123)),
        ("(P1xP1)/mu2", validate_fan(P1P1_MU2)),
        ("P2/mu3", validate_fan(P2_MU3)),
        ("P(2,3,11)", wpp_fan(2, 3, 11)),
        ("P(3,5,7)", wpp_fan(3, 5, 7)),
        ("F_3", validate_fan(((1, 0), (0, 1), (-1, 3), (0, -1)))),
    ]
    fans += [(f"P(1,1,{d})", wpp_fan(d, 1, 1)) for d in range(2, 7)]
    return fans


def random_fans(count: int, rng: random.Random, max_n: int = 6, max_r: int = 12) -> list[Fan]:
    """Random complete fans with at most ``max_n`` rays and orders at most ``max_r``."""
    out = []
    while len(out) < count:
        n = rng.randint(3, max_n)
        rays = set()
        while len(rays) < n:
            v = (rng.randint(-5, 5), rng.randint(-5, 5))
            if v != (0, 0) and gcd(*v) == 1:
                rays.add(v)
        ordered = sorted(rays, key=_angle_key)
        try:
            f = validate_fan(ordered)
        except FanError:
            continue
        if max(f.orders()) <= max_r:
            out.append(f)
    return out


def _angle_key(v):
    from fractions import Fraction

    x, y = v
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    # monotone in the angle within each half-plane
    if half == 0:
        return (0, Fraction(-x, abs(x) + abs(y)))
    return (1, Fraction(x, abs(x) + abs(y)))


# -- the criteria


def check_kk75() -> CheckResult:
    def body():
        p = kk_presentation((7, 5))
        rel = set(p.relations())
        _need(p.cs == (4, 2), f"cs = {p.cs}")
        _need(dual_fraction((7, 5)) == [4, 2], "dual fraction of 7/2")
        _need(rel == {"z1^4", "z2^2", "z1*z2", "z2*z1^3"}, f"relations {sorted(rel)}")
        _need(len(p.forbidden) == 4, "extra relations")
        b = monomial_basis(p)
        _need(len(b) == 7, f"basis size {len(b)}")
        return f"{p.render()}, basis size {len(b)}"

    return _run(1, "K(7,5) presentation", body)


def check_hj_sweep() -> CheckResult:
    def body():
        count = 0
        for r in range(1, 201):
            for a in range(r):
                if (r > 1 and gcd(a, r) != 1) or (r == 1 and a != 0) or (r > 1 and a == 0):
                    continue
                ds = hj_expand((r, a))
                _need(tuple(hj_eval(ds)) == (r, a), f"round trip ({r},{a})")
                if r > 1:
                    _need(hj_expand(inverse_type((r, a))) == ds[::-1], f"reversal ({r},{a})")
                count += 1
        for r in range(2, 61):
            for a in range(1, r):
                if gcd(a, r) == 1:
                    _need(len(monomial_basis(kk_presentation((r, a)))) == r, f"dim K({r},{a})")
        for r in range(2, 41):
            for a in range(1, r):
                if gcd(a, r) == 1:
                    comm = is_commutative(kk_presentation((r, a)))
                    _need(comm == (a in (1, r - 1)), f"commutativity of K({r},{a})")
        for r in range(2, 31):
            for a in range(1, r):
                if gcd(a, r) == 1:
                    _need(opposite_check((r, a)), f"opposite K({r},{a})")
        return f"{count} types up to r=200; dims to 60, commutativity to 40, opposites to 30"

    return _run(2, "continued fractions and KK algebras sweep", body)


def check_p123() -> CheckResult:
    def body():
        f = validate_fan(P123)
        _need(sorted(f.orders()) == [1, 2, 3], f"orders {f.orders()}")
        cg = divisor_class_groups(f)
        _need(str(cg.cl) == "Z" and cg.pic_rank == 1, f"Cl = {cg.cl}, Pic rank {cg.pic_rank}")
        _need(brauer_from_rays(f).is_trivial(), "Br nonzero")
        smooth = f.orders().index(1)
        rep = sod_report(f, rotate=smooth)
        algs = [b.algebra.render() for b in rep.blocks]
        _need(algs == ["k", "k[z]/z^2", "k[z]/z^3"], f"algebras {algs}")
        _need(rep.perf_valid and rep.untwisted and rep.beta.is_zero(), "perf/untwist/beta")
        g0 = g0_untwisted(f)
        _need(str(g0) == "Z^3", f"G0 = {g0}")
        w = wpp_fan(1, 2, 3)
        _need(str(divisor_class_groups(w).cl) == "Z" and sorted(w.orders()) == [1, 2, 3], "wpp fan")
        return rep.render() + f"; Cl = Z, Br = 0, G0 = {g0}"

    return _run(3, "P(1,2,3)", body)


def check_p11d() -> CheckResult:
    def body():
        for d in range(2, 13):
            f = wpp_fan(d, 1, 1)
            s = minimal_resolution(f)
            chains = [c for c in s.chains if c]
            _need(chains == [(d,)], f"chains {s.chains} for d={d}")
            rep = sod_report(f)
            first = rep.blocks[0]
            _need((first.r, first.a) == (d, 1), f"first point type ({first.r},{first.a})")
            alg = first.algebra
            _need(alg.l == d - 1 and set(alg.cs) == {2} and alg.dim == d, f"K({d},1) shape")
            _need(len(monomial_basis(alg)) == d, "K(d,1) dimension")
            _need([b.algebra.render() for b in rep.blocks[1:]] == ["k", "k"], "smooth blocks")
            _need(rep.perf_valid, f"perf_valid for d={d}")
        return "d = 2..12: one (-d)-curve, algebras (K(d,1), k, k), perf_valid"

    return _run(4, "P(1,1,d)", body)


def check_p2311() -> CheckResult:
    def body():
        f = wpp_fan(2, 3, 11)
        rep = sod_report(f)
        dims = [b.algebra.dim for b in rep.blocks]
        _need(dims == [2, 3, 11], f"dims {dims}")
        a2, a3, a11 = (b.algebra for b in rep.blocks)
        _need(a2.render() == "k[z]/z^2", a2.render())
        _need(a3.l == 2 and a3.cs == (2, 2), f"order 3: {a3.render()}")
        _need(a11.l == 2 and len(monomial_basis(a11)) == 11, "order 11 basis")
        variant = custom_presentation((a11.source_type.r, a11.source_type.a), VARIANT_ORDER11_RELATIONS)
        n_variant = len(enumerate_words(variant, 20))
        _need(n_variant == 10, f"z2^2*z1^2 variant gives {n_variant} words")
        try:
            monomial_basis(variant)
            raise _Fail("dimension guard did not reject the z2^2*z1^2 variant")
        except KKInconsistency:
            pass
        return (
            f"{a11.render()} has dim 11; the z2^2*z1^2 variant gives {n_variant} "
            "and is rejected by the dimension guard"
        )

    return _run(5, "P(2,3,11)", body)


def check_p2mu3() -> CheckResult:
    def body():
        f = validate_fan(P2_MU3)
        s = minimal_resolution(f)
        br_rays = brauer_from_rays(f)
        br_ip = ip_cokernel(s).br
        _need(br_rays.invariant_factors == (3,) and br_ip.invariant_factors == (3,), "Br = Z/3 twice")
        for k in range(3):
            for refl in (False, True):
                rep = sod_report(f, rotate=k, reflect=refl, check_cohomology=False)
                _need(rep.beta.order == 3, f"beta order {rep.beta.order}")
                _need([b.algebra.render() for b in rep.blocks] == ["k[z]/z^3"] * 3, "algebras")
                _need(not rep.untwisted, "untwisted")
        rel = beta_relations(s)
        _need(rel.ok and rel.literal_form, f"relations {rel.to_json()}")
        _need(all(b == rel.betas[0] for b in rel.betas), "beta_i = beta_1")
        tw = theorem_twist(s)
        G = g0_twisted(s, tw)
        _need(G.free_rank == 3 and not G.invariant_factors, f"G0(X,beta) = {G}")
        _need(g0_ext1_check(s, tw) and g0_ext1_check(s, [0] * len(tw)), "Ext1 check")
        _need(str(g0_twisted(s, [0] * len(tw))) == "Z^3 + Z/3", "untwisted G0")
        _need(untwist(s) is None, "untwist should be obstructed")
        return "Br = Z/3 (rays and IP), beta of order 3, G0(X,beta) = Z^3, no untwist"

    return _run(6, "P2/mu3", body)


def check_p1p1mu2() -> CheckResult:
    def body():
        f = validate_fan(P1P1_MU2)
        s = minimal_resolution(f)
        _need(brauer_from_rays(f).invariant_factors == (2,), "Br rays")
        _need(ip_cokernel(s).br.invariant_factors == (2,), "Br IP")
        rep = sod_report(f)
        _need([b.algebra.render() for b in rep.blocks] == ["k[z]/z^2"] * 4, "algebras")
        _need(not rep.untwisted and untwist(s) is None, "untwist should be obstructed")
        _need(not standard_beta(s).is_zero(), "beta")
        _need(beta_relations(s).ok, "relations")
        return "Br = Z/2, four k[z]/z^2 blocks, beta nontrivial, no untwist"

    return _run(7, "(P1xP1)/mu2", body)


def check_collections() -> CheckResult:
    def body():
        names = []
        for name, f in suite_fans():
            for k in range(f.n):
                s = minimal_resolution(f if k == 0 else _rot(f, k))
                blocks = build_collection(s)
                _need(all(verify_adherence(s, b) for b in blocks), f"adherence on {name}")
                _need(verify_semiorthogonality(s, blocks), f"semiorthogonality on {name}")
                _need(numeric_fullness(s, blocks), f"fullness on {name}")
                u = untwist(s)
                if u is not None:
                    _need(all(verify_adherence(s, b) for b in u.blocks), f"untwisted adherence on {name}")
                    _need(verify_semiorthogonality(s, u.blocks), f"untwisted semiorthogonality on {name}")
                    _need(numeric_fullness(s, u.blocks), f"untwisted fullness on {name}")
            names.append(name)
        return f"{len(names)} fans, every rotation"

    return _run(8, "exceptional collections", body)


def _rot(f: Fan, k: int) -> Fan:
    from .toricfan import reorder

    return reorder(f, rotate=k)


def check_generators() -> CheckResult:
    def body():
        n1 = 0
        for b in range(2, 21):
            for a in range(1, b):
                if gcd(a, b) != 1:
                    continue
                want = (-b - 1, -b, 0)
                _need(wpp_generators(1, a, b, point_orders=(b, a, 1)) == want, f"closed form (1,{a},{b})")
                _need(tuple(wpp_generator_degrees(b, a, 1)) == want, f"resolution (1,{a},{b})")
                n1 += 1
        n2 = 0
        for w3 in range(1, 31):
            for w2 in range(1, w3 + 1):
                for w1 in range(1, w2 + 1):
                    if gcd(w1, w2) != 1 or gcd(w1, w3) != 1 or gcd(w2, w3) != 1:
                        continue
                    perms = set(permutations((w1, w2, w3))) if w3 <= 12 else {(w1, w2, w3)}
                    for w in sorted(perms):
                        _need(list(wpp_generators(*w)) == wpp_generator_degrees(*w), f"agreement {w}")
                        n2 += 1
        for name, f in suite_fans() + [("P(5,7,9)", wpp_fan(5, 7, 9))]:
            s = minimal_resolution(f)
            if not ip_cokernel(s).br.is_trivial():
                continue
            gs = generator_classes(s)
            _need(gs.classes[-1] == gs.C, f"R_n = C on {name}")
            Cs = gs.divisor_classes
            _need(gs.classes[0] - gs.K - gs.C == Cs[0], f"R_1 on {name}")
            for i in range(1, f.n):
                _need(gs.classes[i] - gs.classes[i - 1] == Cs[i], f"telescoping on {name}")
            u = untwist(s)
            for i in range(1, f.n + 1):
                cd = chain_degrees(s, u.blocks[i - 1].classes[0], i)
                _need(reflexive_pushforward_test(cd) and higher_pushforward_vanishes(cd), f"chain tests {name}")
            _need(gs.m_ranks == f.orders(), "ranks")
        return f"{n1} P(1,a,b) cases, {n2} weight orderings agree; telescoping and chain tests hold"

    return _run(9, "reflexive generators", body)


def check_properties() -> CheckResult:
    def body():
        rng = random.Random(SEED)
        for _ in range(500):
            m, n = rng.randint(1, 6), rng.randint(1, 6)
            A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
            U, S, V = ea.smith_normal_form(A)
            _need(ea.matmul(ea.matmul(U, A), V) == S, f"U A V != S for {A}")
            _need(abs(ea.det(U)) == 1 and abs(ea.det(V)) == 1, "unimodularity")
            d = ea.diagonal(S)
            _need(all(S[i][j] == 0 for i in range(m) for j in range(n) if i != j), "diagonal")
            nz = [x for x in d if x]
            _need(all(x > 0 for x in nz) and d[: len(nz)] == nz, "nonzero entries first")
            _need(all(b % a == 0 for a, b in zip(nz, nz[1:])), "divisibility")
        fans = [f for _, f in suite_fans()] + random_fans(50, rng)
        for f in fans:
            s = minimal_resolution(f)
            br = ip_cokernel(s).br
            for _ in range(100):
                D = s.cls(rng.randint(-4, 4) for _ in range(s.size))
                _need(brauer_class_of(s, ip_vector(s, D)).is_zero(), "B(IP(D)) != 0")
            exc = s.exceptional_labels
            for e1 in exc:
                for e2 in exc:
                    b1, b2 = rng.randint(-5, 5), rng.randint(-5, 5)
                    v = MukaiVector(0, s.divisor(*e1), b1)
                    w = MukaiVector(0, s.divisor(*e2), b2)
                    E = intersection_number(s, s.divisor(*e1), s.divisor(*e2))
                    _need(mukai_pairing(s, v, w) == -E, "Mukai sign identity")
        rand = fans[-50:]
        for f in rand:
            orders = f.orders()
            g = reduce(gcd, orders)
            br = brauer_from_rays(f)
            _need((br.order or 0) == g and len(br.invariant_factors) <= 1, f"|Br| != gcd for {f.rays}")
            for i in range(len(orders)):
                _need(reduce(gcd, orders[:i] + orders[i + 1:]) == g, f"leave-one-out for {f.rays}")
            s = minimal_resolution(f)
            _need(ip_cokernel(s).br.invariant_factors == br.invariant_factors, "IP vs rays")
            _need(divisor_class_groups(f).cl.invariant_factors == br.invariant_factors, "torsion(Cl) vs Br")
        return "500 SNF cases, B.IP = 0 on 100 classes per fan, Mukai sign, gcd on 50 random fans"

    return _run(10, "property suite", body)


CRITERIA: list[Callable[[], CheckResult]] = [
    check_kk75,
    check_hj_sweep,
    check_p123,
    check_p11d,
    check_p2311,
    check_p2mu3,
    check_p1p1mu2,
    check_collections,
    check_generators,
    check_properties,
]


def run_all() -> list[CheckResult]:
    return [c() for c in CRITERIA]
