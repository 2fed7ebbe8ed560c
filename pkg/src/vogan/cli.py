"""Command line front end: ``vogan <verb> ...``.

Exit status 0 on success, 1 on a domain error (bad diagram, bad type,
inapplicable move), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import classify, diagram as dg, equiv, sweep
from .rootsys import RootSystemError, SimpleType, cartan_matrix, diagram_involutions, format_root, positive_roots

MAX_RANK_ENV = "VOGAN_MAX_RANK"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _roots_line(roots) -> str:
    return ", ".join(format_root(r) for r in roots) or "-"


def _pairs_line(pairs) -> str:
    return ", ".join(f"{{{format_root(a)}, {format_root(b)}}}" for a, b in pairs) or "-"


def cmd_roots(args) -> str:
    d = cartan_matrix(SimpleType.parse(args.type))
    roots = positive_roots(d)
    if args.format == "json":
        return _dump({"type": str(d.type), "count": len(roots), "roots": [list(r) for r in roots]})
    lines = [f"# {d.type}: {len(roots)} positive roots"]
    lines += [f"{format_root(r)}\t{list(r)}\theight={sum(r)}" for r in roots]
    return "\n".join(lines)


def cmd_check(args) -> str:
    d = dg.parse(args.diagram)
    rep = classify.noticed_report(d)
    card, minimal = classify.theorem55_check(d)
    nodes = {i: classify.node_supports_g2p(d, i) for i in d.diagram.nodes}
    if args.format == "json":
        out = rep.to_dict()
        out["diagram"] = dg.to_dict(d)
        out["theorem55"] = {"cardinality": card, "minimality": minimal}
        out["nodes"] = {str(i): (list(w) if w else None) for i, (_, w) in nodes.items()}
        return _dump(out)
    a, b, c, e = rep.lhs_terms()
    lines = [
        f"diagram: {dg.render_text(d)}",
        f"lhs: {a} + {b} + {c} + {e} = {rep.lhs}",
        f"rhs: {len(rep.P_p2)} + {len(rep.K2)} = {rep.rhs}",
        f"noticed: {str(rep.noticed).lower()}",
        f"theorem55: cardinality={str(card).lower()} minimality={str(minimal).lower()}",
        f"P_np(0): {_roots_line(rep.P_np0)}",
        f"K(0): {_pairs_line(rep.K0)}",
        f"P_p(2): {_roots_line(rep.P_p2)}",
        f"K(2): {_pairs_line(rep.K2)}",
    ]
    for i, (ok, w) in nodes.items():
        lines.append(f"node {i}: {'ok ' + format_root(w) if ok else 'fails'}")
    return "\n".join(lines)


def cmd_equiv(args) -> str:
    d1, d2 = dg.parse(args.first), dg.parse(args.second)
    moves = equiv.move_sequence(d1, d2)
    via = None
    if moves is None and args.up_to_iso:
        for e in equiv.isomorphic_images(d2):
            moves = equiv.move_sequence(d1, e)
            if moves is not None:
                via = e
                break
    ok = moves is not None
    if args.format == "json":
        out = {"equivalent": ok, "moves": moves}
        if via is not None:
            out["via"] = dg.to_dict(via)
        return _dump(out)
    line = f"equivalent: {str(ok).lower()}"
    if ok:
        line += "\nmoves: [" + ", ".join(f"A@{j}" for j in moves) + "]"
        if via is not None:
            line += f"\nvia relabelling: {dg.render_text(via)}"
    return line


def cmd_class(args) -> str:
    d = dg.parse(args.diagram)
    cls = equiv.equivalence_class(d)
    members = list(cls.members)
    if args.up_to_iso:
        members = []
        for e in equiv.isomorphic_images(d):
            for m in equiv.equivalence_class(e).members:
                if m not in members:
                    members.append(m)
    if args.format == "json":
        out = cls.to_dict()
        if args.up_to_iso:
            out["iso_members"] = [dg.to_dict(m) for m in members]
        return _dump(out)
    lines = [
        f"canonical: {dg.render_text(cls.canonical)}",
        f"size: {len(cls)}",
        f"noticed: {str(cls.noticed).lower()} (lhs={cls.report.lhs} rhs={cls.report.rhs})",
    ]
    p_members = set(cls.property_p_members)
    for m in members:
        tag = " (P)" if m in p_members else ""
        lines.append(f"  {dg.render_text(m)}{tag}")
    return "\n".join(lines)


def cmd_normalize(args) -> str:
    d = equiv.normalize_p(dg.parse(args.diagram))
    return _dump(dg.to_dict(d)) if args.format == "json" else dg.render_text(d)


def _max_rank() -> int:
    raw = os.environ.get(MAX_RANK_ENV)
    if raw is None:
        return sweep.DEFAULT_MAX_RANK
    try:
        return int(raw)
    except ValueError:
        raise sweep.SweepError(f"{MAX_RANK_ENV}={raw!r} is not an integer") from None


def cmd_sweep(args) -> str:
    t = SimpleType.parse(args.type)
    if args.theta == "all":
        thetas = list(diagram_involutions(cartan_matrix(t)))
    else:
        thetas = [args.theta]
    fmt = "json" if args.format == "json" else "text"
    docs = []
    for th in thetas:
        cat = sweep.classify_all(
            t, th,
            full=args.full, check_members=args.check, up_to_iso=args.up_to_iso,
            workers=args.workers, max_rank=_max_rank(),
        )
        docs.append(sweep.export_catalog(cat, fmt).rstrip("\n"))
    if fmt == "json" and len(docs) > 1:
        return "[" + ",".join(docs) + "]"
    return "\n".join(docs)


def cmd_render(args) -> str:
    d = dg.parse(args.diagram)
    if args.format == "dot":
        return dg.render_dot(d).rstrip("\n")
    if args.format == "json":
        return dg.to_json(d)
    return dg.render_text(d)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vogan", description="Weighted Vogan diagram combinatorics.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, func, help, formats=("text", "json")):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--format", choices=formats, default="text")
        sp.set_defaults(func=func)
        return sp

    sp = verb("roots", cmd_roots, "list positive roots of a type")
    sp.add_argument("type", help="e.g. B5")

    sp = verb("check", cmd_check, "noticed report and necessary conditions")
    sp.add_argument("diagram")

    sp = verb("equiv", cmd_equiv, "decide equivalence, print a move sequence")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--up-to-iso", action="store_true", help="also allow diagram relabelling")

    sp = verb("class", cmd_class, "print the equivalence class")
    sp.add_argument("diagram")
    sp.add_argument("--up-to-iso", action="store_true")

    sp = verb("normalize", cmd_normalize, "canonical class member with property (P)")
    sp.add_argument("diagram")

    sp = verb("sweep", cmd_sweep, "catalog all diagrams of a type")
    sp.add_argument("type")
    sp.add_argument("--theta", default="id", help="id, an image list like 1,2,4,3, or all")
    sp.add_argument("--full", action="store_true", help="keep every class member")
    sp.add_argument("--up-to-iso", action="store_true", help="merge classes related by automorphisms")
    sp.add_argument("--check", action="store_true", help="recheck verdicts on every member")
    sp.add_argument("--workers", type=int, default=1)

    sp = verb("render", cmd_render, "print a diagram as text, JSON or DOT", ("text", "json", "dot"))
    sp.add_argument("diagram")
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.func(args)
    except (dg.DiagramError, RootSystemError, equiv.EquivalenceError, sweep.SweepError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    out.write(text + "\n")
    return 0


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = 0
    sys.exit(code)
