"""Command-line front end.

    toricsod analyze --weights 1,2,3
    toricsod sod --fan fan.json --order rotate=1,reflect --format text
    toricsod kk --type 7,5

Exit status is 0 on success, 1 on a domain error (reported as a JSON error
object on stdout) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .brauer_groth import beta_relations, g0_ext1_check, g0_twisted, g0_untwisted, ip_cokernel
from .generators import ObstructionPresent, generator_classes
from .golden import run_all
from .hjfrac import as_type
from .kkalg import KKInconsistency, kk_presentation, monomial_basis
from .resolution import CohomologyInconsistency, minimal_resolution
from .sodbuilder import sod_report, theorem_twist
from .toricfan import (
    Fan,
    FanError,
    WeightError,
    brauer_from_rays,
    divisor_class_groups,
    reorder,
    validate_fan,
    wpp_fan,
)


class DomainError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{what} must be comma-separated integers: {text!r}") from None


def _weights(text: str) -> list[int]:
    ws = _ints(text, "weights")
    if len(ws) != 3:
        raise argparse.ArgumentTypeError("exactly three weights are needed")
    return ws


def _type(text: str) -> tuple[int, int]:
    t = _ints(text, "type")
    if len(t) != 2:
        raise argparse.ArgumentTypeError("type is r,a")
    return t[0], t[1]


def _order(text: str) -> tuple[int, bool]:
    rotate, reflect = 0, False
    for part in text.split(","):
        part = part.strip()
        if part == "reflect":
            reflect = True
        elif part.startswith("rotate="):
            try:
                rotate = int(part[len("rotate="):])
            except ValueError:
                raise argparse.ArgumentTypeError(f"bad rotation: {part!r}") from None
        else:
            raise argparse.ArgumentTypeError(f"ordering is rotate=k[,reflect], got {text!r}")
    return rotate, reflect


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricsod", description="Singularity, resolution and decomposition data of toric surfaces.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fan=True):
        if fan:
            src = p.add_mutually_exclusive_group(required=True)
            src.add_argument("--fan", metavar="PATH", help='JSON file with {"rays": [[x, y], ...]} or {"weights": [a, b, c]}')
            src.add_argument("--weights", type=_weights, metavar="A,B,C")
            p.add_argument("--order", type=_order, default=(0, False), metavar="rotate=K[,reflect]")
            p.add_argument("--reverse-input", action="store_true", help="reverse a clockwise ray list before validating")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")

    for name, help_ in (
        ("analyze", "singular points, class group, Picard rank and Brauer group"),
        ("resolve", "minimal resolution"),
        ("sod", "semiorthogonal decomposition data"),
        ("brauer", "Brauer group and the classes beta_i"),
        ("generators", "reflexive generators (needs a trivial Brauer class)"),
    ):
        common(sub.add_parser(name, help=help_))
    g0 = sub.add_parser("g0", help="Grothendieck groups")
    common(g0)
    g0.add_argument("--twist", type=lambda s: _ints(s, "twist"), metavar="B1,B2,...", help="values on the exceptional curves in ray order")
    kk = sub.add_parser("kk", help="Kalck-Karmazyn algebra of a cyclic quotient singularity")
    kk.add_argument("--type", type=_type, required=True, metavar="R,A")
    common(kk, fan=False)
    st = sub.add_parser("selftest", help="run the golden examples")
    common(st, fan=False)
    return parser


def load_fan(args) -> Fan:
    if args.weights is not None:
        f = wpp_fan(*args.weights)
    else:
        try:
            with open(args.fan) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise DomainError("unreadable_input", str(exc)) from None
        except json.JSONDecodeError as exc:
            raise DomainError("bad_json", str(exc)) from None
        if isinstance(data, list):
            data = {"rays": data}
        if not isinstance(data, dict) or ("rays" in data) == ("weights" in data):
            raise DomainError("bad_input", 'expected exactly one of "rays" or "weights"')
        if "weights" in data:
            ws = data["weights"]
            if not isinstance(ws, list) or len(ws) != 3:
                raise DomainError("bad_weights", "weights must be a list of three integers")
            f = wpp_fan(*ws)
        else:
            rays = data["rays"]
            if args.reverse_input and isinstance(rays, list):
                rays = rays[::-1]
            f = validate_fan(rays)
    rotate, reflect = args.order
    if rotate or reflect:
        f = reorder(f, rotate % f.n, reflect)
    return f


# -- commands; each returns (json object, text)


def cmd_analyze(args):
    f = load_fan(args)
    cg = divisor_class_groups(f)
    br = brauer_from_rays(f)
    obj = {
        "fan": f.to_json(),
        "points": [p.to_json() for p in f.points()],
        "class_group": cg.cl.to_json(),
        "picard_rank": cg.pic_rank,
        "divisor_classes": [list(c.coords) for c in cg.divisor_classes],
        "brauer": br.to_json(),
    }
    degs = cg.degrees()
    if degs is not None:
        obj["degrees"] = degs
    lines = [f"x_{p.label}: " + ("smooth" if p.r == 1 else f"1/{p.r}(1,{p.a})") + (" Gorenstein" if p.gorenstein and p.r > 1 else "") for p in f.points()]
    lines += [f"Cl(X) = {cg.cl}", f"Pic rank = {cg.pic_rank}", f"Br(X) = {br}"]
    return obj, "\n".join(lines)


def cmd_resolve(args):
    s = minimal_resolution(load_fan(args))
    obj = s.to_json()
    lines = [f"{s.size} rays on the resolution"]
    for k, (pt, ch) in enumerate(zip(s.base.points(), s.chains)):
        chain = ", ".join(f"-{d}" for d in ch) or "none"
        lines.append(f"x_{pt.label} ({pt.r},{pt.a}): chain {chain}")
    return obj, "\n".join(lines)


def cmd_sod(args):
    f = load_fan(args)
    rep = sod_report(f)
    text = rep.render()
    text += f"\nbeta order {rep.beta.order}, Br(X) = {rep.brauer}, perf_valid = {str(rep.perf_valid).lower()}"
    return rep.to_json(), text


def cmd_brauer(args):
    f = load_fan(args)
    s = minimal_resolution(f)
    br = ip_cokernel(s).br
    rel = beta_relations(s)
    obj = {
        "order": br.order,
        "group": br.to_json(),
        "group_from_rays": brauer_from_rays(f).to_json(),
        "relations": rel.to_json(),
    }
    text = f"Br(X) = {br} (order {br.order})\n" + ("relations hold" if rel.ok else "relations FAIL")
    return obj, text


def cmd_g0(args):
    f = load_fan(args)
    s = minimal_resolution(f)
    b = theorem_twist(s) if args.twist is None else args.twist
    if len(b) != len(s.exceptional_labels):
        raise DomainError("bad_twist", f"twist needs {len(s.exceptional_labels)} values, got {len(b)}")
    G = g0_untwisted(f)
    T = g0_twisted(s, b)
    ok = g0_ext1_check(s, b)
    obj = {
        "untwisted": G.to_json(),
        "twist": list(b),
        "twisted": T.to_json(),
        "ext1_check": ok,
    }
    return obj, f"G0(X) = {G}\nG0(X, beta) = {T}\nExt1 check {'passes' if ok else 'FAILS'}"


def cmd_generators(args):
    s = minimal_resolution(load_fan(args))
    gs = generator_classes(s)
    obj = gs.to_json()
    degs = gs.degrees()
    lines = []
    for k, g in enumerate(gs.generators, 1):
        c = str(degs[k - 1]) if degs is not None else str(list(g.cls.coords))
        lines.append(f"R_{k}: class {c}, rank {g.rank}, locally free at {list(g.locally_free_at)}")
    return obj, "\n".join(lines)


def cmd_kk(args):
    t = as_type(args.type)
    p = kk_presentation(t)
    obj = p.to_json()
    obj["type"] = [t.r, t.a]
    basis = [str(w) for w in monomial_basis(p)]
    obj["basis"] = basis
    return obj, f"K({t.r},{t.a}) = {p.render()}\nbasis ({len(basis)}): {', '.join(basis)}"


def cmd_selftest(args):
    results = run_all()
    obj = {
        "passed": all(r.ok for r in results),
        "criteria": [{"number": r.number, "title": r.title, "ok": r.ok, "detail": r.detail} for r in results],
    }
    return obj, "\n".join(r.line() for r in results)


COMMANDS = {
    "analyze": cmd_analyze,
    "resolve": cmd_resolve,
    "sod": cmd_sod,
    "brauer": cmd_brauer,
    "g0": cmd_g0,
    "generators": cmd_generators,
    "kk": cmd_kk,
    "selftest": cmd_selftest,
}

_CODES = {KKInconsistency: "kk_dimension_mismatch", CohomologyInconsistency: "cohomology_mismatch"}
_DOMAIN_ERRORS = (FanError, WeightError, ObstructionPresent, KKInconsistency, CohomologyInconsistency, ValueError)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        obj, text = COMMANDS[args.command](args)
    except DomainError as exc:
        return _error(exc.code, str(exc))
    except _DOMAIN_ERRORS as exc:
        code = getattr(exc, "code", None) or _CODES.get(type(exc), "invalid_input")
        return _error(code, str(exc))
    body = json.dumps(obj, indent=2) if args.format == "json" else text
    _emit(body + "\n", args.out)
    if args.command == "selftest" and not obj["passed"]:
        return 1
    return 0


def _error(code: str, message: str) -> int:
    sys.stdout.write(json.dumps({"error": {"code": code, "message": message}}, indent=2) + "\n")
    return 1


if __name__ == "__main__":
    sys.exit(main())
