"""Command-line front end: ``agt <group> <verb> [options]``.

Every command writes one artifact to stdout.  Output is a pure function of
the arguments, so repeated invocations are byte-identical.  Library errors
exit with status 2 and a one-line message on stderr; ``module verify`` exits
with 1 when a check fails.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Sequence

from .errors import AgtError
from .rootsys import Weight, format_rational, parse_rational

__all__ = ["build_parser", "main"]


def _weight(text: str) -> Weight:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise argparse.ArgumentTypeError("a weight needs at least one coordinate")
    try:
        return Weight(tuple(parse_rational(p) for p in parts))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"cannot parse weight {text!r}: {exc}") from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"cannot parse rational {text!r}: {exc}") from None


def _int_list(text: str) -> tuple[int, ...]:
    body = text.strip().strip("{}[]")
    try:
        return tuple(int(x) for x in body.replace(" ", "").split(",") if x)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse index list {text!r}") from exc


def _shift(text: str) -> tuple[int, ...]:
    return _int_list(text)


def _emit(obj, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    raise AgtError(f"format {fmt!r} is not available for this command")


# --- admissible -----------------------------------------------------------------------------


def _level(args):
    from .admissible import AdmissibleLevel, admissible_number

    if args.k is not None:
        return admissible_number(args.n, args.k)
    if args.p is None or args.q is None:
        raise AgtError("give either --k or both --p and --q")
    return AdmissibleLevel(args.n, args.p, args.q)


def cmd_admissible_check(args) -> str:
    L = _level(args)
    data = {"n": L.n, "p": L.p, "q": L.q, "k": format_rational(L.k), "admissible": True}
    if args.format == "txt":
        return f"k = {data['k']} is admissible for sl_{L.n + 1}: k + {L.n + 1} = {L.p}/{L.q}\n"
    return _emit(data, args.format)


def cmd_admissible_enumerate(args) -> str:
    from .admissible import enumerate_all, enumerate_orbit_weights
    from .orbits import Partition

    L = _level(args)
    if args.orbit:
        weights = enumerate_orbit_weights(L, Partition.parse(args.orbit))
        if args.format == "txt":
            return "".join(f"{w}\n" for w in weights)
        return _emit([w.to_json() for w in weights], args.format)
    table = enumerate_all(L, jobs=args.jobs)
    if args.format == "txt":
        lines = []
        for orbit, ws in table.items():
            lines.append(f"{orbit}: {len(ws)}")
            lines.extend(f"  {w}" for w in ws)
        return "\n".join(lines) + "\n"
    return _emit({str(o): [w.to_json() for w in ws] for o, ws in table.items()}, args.format)


def cmd_admissible_classify(args) -> str:
    from .admissible import classify_weight

    L = _level(args)
    if args.weight.n != L.n:
        raise AgtError(f"weight has rank {args.weight.n}, level has rank {L.n}")
    c = classify_weight(L, args.weight)
    if args.format == "txt":
        return (f"orbit {c.orbit}, Sigma {c.parabolic}, w {c.coset_rep.name()}, "
                f"w.lambda = {c.base}\n")
    return _emit(c.to_json(), args.format)


# --- weyl ------------------------------------------------------------------------------------


def _sigma(args):
    from .weylgrp import ParabolicSet

    return ParabolicSet(args.n, frozenset(_int_list(args.sigma)))


def cmd_weyl_cosets(args) -> str:
    from .weylgrp import min_coset_reps

    reps = min_coset_reps(_sigma(args))
    if args.format == "txt":
        return "".join(f"{w.name()}\n" for w in reps)
    return _emit([{"name": w.name(), "word": list(w.word), "length": w.length} for w in reps],
                 args.format)


def cmd_weyl_hasse(args) -> str:
    from .weylgrp import hasse_to_dot, sort_key, wp_hasse

    sig = _sigma(args)
    g = wp_hasse(sig, include_dotted=not args.solid_only)
    if args.format == "dot":
        return hasse_to_dot(g, title=f"W^p sl{args.n + 1} Sigma={sig}")
    nodes = sorted(g.nodes, key=sort_key)
    edges = sorted(g.edges, key=lambda e: (sort_key(e[0]), sort_key(e[1])))
    data = {
        "vertices": [{"name": w.name(), "length": w.length, "black": g.nodes[w]["black"]}
                     for w in nodes],
        "edges": [{"from": u.name(), "to": w.name(), "label": g.edges[u, w]["label"],
                   "style": g.edges[u, w]["style"]} for u, w in edges],
    }
    if args.format == "txt":
        lines = [f"{len(nodes)} vertices, {len(edges)} edges"]
        lines += [f"{e['from']} -> {e['to']} {e['label'] or '(dotted)'}" for e in data["edges"]]
        return "\n".join(lines) + "\n"
    return _emit(data, args.format)


def cmd_weyl_wplus(args) -> str:
    from .weylgrp import wplus_stabilizer_and_orbits

    stab, orbits = wplus_stabilizer_and_orbits(_sigma(args))
    data = {"stabilizer": stab, "orbits": [[w.name() for w in o] for o in orbits]}
    if args.format == "txt":
        lines = [f"W_+^p rotations: {stab}"]
        lines += [" ".join(o) for o in data["orbits"]]
        return "\n".join(lines) + "\n"
    return _emit(data, args.format)


# --- orbits ---------------------------------------------------------------------------------


def cmd_orbits_list(args) -> str:
    from .orbits import orbit_dim, partitions_of, transpose
    from .rootsys import check_rank

    check_rank(args.n)
    parts = partitions_of(args.n + 1)
    if args.format == "txt":
        return "".join(f"{p} dim {orbit_dim(p)}\n" for p in parts)
    rows = [{"partition": list(p.parts), "dim": orbit_dim(p), "transpose": list(transpose(p).parts)}
            for p in parts]
    return _emit(rows, args.format)


def cmd_orbits_hasse(args) -> str:
    from .orbits import dominance_hasse, orbit_dim, orbit_hasse_dot
    from .rootsys import check_rank

    check_rank(args.n)
    if args.format == "dot":
        return orbit_hasse_dot(args.n)
    g = dominance_hasse(args.n)
    data = {"vertices": [{"partition": list(p.parts), "dim": orbit_dim(p)} for p in sorted(g.nodes)],
            "edges": [[list(a.parts), list(b.parts)] for a, b in sorted(g.edges)]}
    if args.format == "txt":
        return "".join(f"{a} < {b}\n" for a, b in sorted(g.edges))
    return _emit(data, args.format)


def cmd_orbits_richardson(args) -> str:
    from .orbits import block_partition, richardson

    sig = _sigma(args)
    r = richardson(sig)
    data = {"sigma": list(sig.sorted_tuple()), "blocks": list(block_partition(sig).parts),
            "richardson": list(r.parts)}
    if args.format == "txt":
        return f"{r}\n"
    return _emit(data, args.format)


# --- modules --------------------------------------------------------------------------------


def _module(args):
    from .gtcore import GTModule, builtin_module

    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            return GTModule.from_json(json.load(fh))
    kind = args.builtin
    if kind in ("verma", "finite", "lemma") and args.weight is None:
        raise AgtError(f"--weight is required for the {kind} module")
    if kind == "verma":
        return builtin_module("verma", lam=args.weight, relations=args.relations)
    if kind == "finite":
        return builtin_module("finite", lam=args.weight)
    if kind == "lemma":
        if args.r is None:
            raise AgtError("--r is required for the lemma module")
        return builtin_module("lemma", lam=args.weight, r=args.r)
    if kind == "table":
        if args.orbit is None:
            raise AgtError("--orbit is required for a table module")
        return builtin_module("table_sl4", orbit=args.orbit, row=args.row, lam=args.weight,
                              nu=args.nu)
    raise AgtError("give --builtin or --input")


def _module_text(M) -> str:
    lines = [f"module {M.label}", f"frame {M.frame.name()}", M.base.render(), "arrows:"]
    lines += [f"  {a}" for a in M.relations.sorted()]
    return "\n".join(lines) + "\n"


def cmd_module_build(args) -> str:
    M = _module(args)
    if args.format == "txt":
        return _module_text(M)
    return _emit(M.to_json(), args.format)


def cmd_module_act(args) -> str:
    from .gtcore import ModuleVector

    M = _module(args)
    z = args.shift if args.shift is not None else M.zero_shift()
    if len(z) != M.dim_shift:
        raise AgtError(f"shift needs {M.dim_shift} entries, got {len(z)}")
    if not M.contains(z):
        raise AgtError(f"shift {list(z)} is not a basis member")
    res = M.act(args.op, ModuleVector.basis(z), twisted=not args.untwisted)
    if args.format == "txt":
        return f"{res!r}\n"
    return _emit({"operators": args.op, "shift": list(z), "result": res.to_json()}, args.format)


def cmd_module_verify(args) -> tuple[str, int]:
    from .gtcore import Window
    from .verify import check_lie_relations, closure_check, generation_check, tameness_check

    M = _module(args)
    window = Window.radius(M.n, args.radius)
    reports = [check_lie_relations(M, window, jobs=args.jobs), tameness_check(M, window)]
    if args.closure:
        reports.append(closure_check(M, window))
    if args.generation:
        reports.append(generation_check(M, M.zero_shift(), window))
    code = 0 if all(r.passed for r in reports) else 1
    if args.format == "txt":
        return "".join(r.summary() + "\n" for r in reports), code
    return _emit([r.to_json() for r in reports], args.format), code


def cmd_module_localize(args) -> str:
    from .localize import localize_module

    D = localize_module(_module(args), args.nu if args.nu is not None else 0)
    if args.format == "txt":
        return _module_text(D)
    return _emit(D.to_json(), args.format)


def cmd_module_twist(args) -> str:
    from .localize import twisting_functor

    T = twisting_functor(_module(args))
    if args.format == "txt":
        return _module_text(T)
    return _emit(T.to_json(), args.format)


# --- tables ---------------------------------------------------------------------------------


def cmd_tables_sl4(args) -> str:
    from .tables import ORBITS, ROWS, compare_table, render_markdown

    orbits = [args.orbit] if args.orbit else list(ORBITS)
    if args.format == "md":
        return "\n".join(render_markdown(o) for o in orbits)
    data = [compare_table(o, r).to_json() for o in orbits for r in ROWS]
    if args.format == "txt":
        return "".join(f"{d['orbit']} {d['row']}: {'match' if d['matches'] else 'DIFF'}\n"
                       for d in data)
    return _emit(data, args.format)


# --- parser ---------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "dot", "md", "txt"), default=None,
                        help="output format (each command has its own default)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for parallel checks")

    parser = argparse.ArgumentParser(prog="agt", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    def verb(sub, name, func, default_format, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func, default_format=default_format)
        return p

    def level_args(p):
        p.add_argument("--n", type=int, required=True, help="rank (sl_{n+1})")
        p.add_argument("--p", type=int)
        p.add_argument("--q", type=int)
        p.add_argument("--k", type=_rational, help="level as num/den instead of --p/--q")

    adm = groups.add_parser("admissible", help="admissible levels and weights").add_subparsers(
        dest="verb", required=True)
    p = verb(adm, "check", cmd_admissible_check, "json", "validate an admissible level")
    level_args(p)
    p = verb(adm, "enumerate", cmd_admissible_enumerate, "json", "list admissible weights")
    level_args(p)
    p.add_argument("--orbit", help="partition such as 2,1 (all orbits when omitted)")
    p = verb(adm, "classify", cmd_admissible_classify, "json", "attach a weight to its orbit")
    level_args(p)
    p.add_argument("--weight", type=_weight, required=True)

    wey = groups.add_parser("weyl", help="Weyl group cosets and diagrams").add_subparsers(
        dest="verb", required=True)
    for name, func, fmt, text in (("cosets", cmd_weyl_cosets, "json", "minimal coset representatives"),
                                  ("hasse", cmd_weyl_hasse, "dot", "Hasse diagram of W^p"),
                                  ("wplus", cmd_weyl_wplus, "json", "W_+^p and its orbits on W^p")):
        p = verb(wey, name, func, fmt, text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--sigma", default="", help="simple-root indices of Sigma, e.g. 1,3")
        if name == "hasse":
            p.add_argument("--solid-only", action="store_true", help="omit dotted Bruhat covers")

    orb = groups.add_parser("orbits", help="nilpotent orbits as partitions").add_subparsers(
        dest="verb", required=True)
    p = verb(orb, "list", cmd_orbits_list, "json", "partitions of n+1 with orbit dimensions")
    p.add_argument("--n", type=int, required=True)
    p = verb(orb, "hasse", cmd_orbits_hasse, "dot", "closure order as a DOT graph")
    p.add_argument("--n", type=int, required=True)
    p = verb(orb, "richardson", cmd_orbits_richardson, "json", "Richardson orbit of a parabolic")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", default="")

    mod = groups.add_parser("module", help="Gelfand-Tsetlin tableau modules").add_subparsers(
        dest="verb", required=True)

    def module_args(p):
        p.add_argument("--input", help="module JSON file (overrides --builtin)")
        p.add_argument("--builtin", choices=("verma", "finite", "lemma", "table"), default="verma")
        p.add_argument("--weight", type=_weight)
        p.add_argument("--relations", choices=("maximal", "chain"), default="maximal")
        p.add_argument("--r", type=int, help="parameter of the lemma tableau")
        p.add_argument("--orbit", choices=("principal", "subregular", "rectangular", "minimal"))
        p.add_argument("--row", choices=("M", "D_f", "T_f", "D_nu"), default="M")
        p.add_argument("--nu", type=_rational)

    p = verb(mod, "build", cmd_module_build, "json", "construct a module")
    module_args(p)
    p = verb(mod, "act", cmd_module_act, "json", "apply a product of operators to a basis member")
    module_args(p)
    p.add_argument("--op", action="append", required=True,
                   help="operator such as e1, f2, h3 or E13; repeat for products (leftmost last)")
    p.add_argument("--shift", type=_shift, help="basis member as comma-separated shifts")
    p.add_argument("--untwisted", action="store_true")
    p = verb(mod, "verify", cmd_module_verify, "txt", "Lie relations and tameness on a window")
    module_args(p)
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--closure", action="store_true", help="also run the strict closure check")
    p.add_argument("--generation", action="store_true", help="also run generation from the seed")
    p = verb(mod, "localize", cmd_module_localize, "json", "twisted localization D^nu_f")
    module_args(p)
    p = verb(mod, "twist", cmd_module_twist, "json", "twisting functor T_f")
    module_args(p)

    tab = groups.add_parser("tables", help="the sl_4 tables").add_subparsers(dest="verb",
                                                                             required=True)
    p = verb(tab, "sl4", cmd_tables_sl4, "md", "inequality sets derived from the diagrams")
    p.add_argument("--orbit", choices=("principal", "subregular", "rectangular", "minimal"))
    return parser


_NEGATIVE = re.compile(r"^-\d+(/\d+)?(,.*)?$")


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Attach values such as ``-3/2`` or ``-1,0`` to their option so argparse accepts them."""
    out: list[str] = []
    for tok in argv:
        if out and _NEGATIVE.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(sys.argv[1:] if argv is None else argv))
    if args.format is None:
        args.format = args.default_format
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        out = args.func(args)
    except (AgtError, ValueError) as exc:
        print(f"agt: error: {exc}", file=sys.stderr)
        return 2
    code = 0
    if isinstance(out, tuple):
        out, code = out
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
