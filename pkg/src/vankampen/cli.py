"""
Batch command line.

``vankampen compute doc.svk`` prints a presentation for every space,
atlas and attach declaration in the document.  Exit status is 0 on
success, 1 when diagnostics were reported, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .combspace import pi1_combinatorial, validate
from .dsl import AttachTask, DslError, GraphDecl, SpaceTask, build_tasks, parse
from .errors import VanKampenError
from .svk import TREE, attach_graph
from .topograph import cycle_rank, graph_pi1
from .verify import DEFAULT_COSET_CAP, abelianization, check_map_abelianized, smith_normal_form, todd_coxeter
from .words import tietze_simplify

__all__ = ["run", "main", "build_parser"]

EXIT_OK, EXIT_DIAGNOSTICS, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vankampen", description="Fundamental groups of spaces glued from pieces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="compute pi1 for every task in a document")
    c.add_argument("file")
    c.add_argument("--simplify", action="store_true", help="apply Tietze simplification")
    c.add_argument("--abelianize", action="store_true", help="report the abelianization")
    c.add_argument("--coxeter-cap", type=_positive, metavar="N", default=None,
                   help=f"enumerate cosets with at most N cosets (default off; {DEFAULT_COSET_CAP} is typical)")
    c.add_argument("--json", action="store_true", help="emit JSON")

    k = sub.add_parser("check", help="validate spaces and check maps after abelianizing")
    k.add_argument("file")

    g = sub.add_parser("graph-pi1", help="fundamental group of a declared graph")
    g.add_argument("file")
    g.add_argument("--graph", required=True, metavar="NAME")
    g.add_argument("--json", action="store_true")

    s = sub.add_parser("snf", help="Smith normal form of an integer matrix file")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    return p


class _Failure(Exception):
    pass


def _read(path, err) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        print(f"vankampen: cannot read {path}: {exc.strerror}", file=err)
        raise _Failure from None


def _load(path, err):
    data = _read(path, err)
    try:
        return parse(data)
    except DslError as exc:
        print(exc.format(path), file=err)
        raise _Failure from None


def _compute_task(task, args):
    if isinstance(task, SpaceTask):
        result = pi1_combinatorial(task.space)
        kind = "atlas" if task.atlas else "space"
    else:
        result = attach_graph(task.base, task.graph, task.h_edges, task.loops, full_output=True)
        kind = "attach"
    pres = tietze_simplify(result.pres) if args.simplify else result.pres
    out = {
        "name": task.name,
        "kind": kind,
        "generators": [str(g) for g in pres.gens],
        "relators": [str(r) for r in pres.relators],
        "stable_letters": [{"component": c, "letter": s if s == TREE else str(s)}
                           for c, s in result.stable_letters],
    }
    if args.abelianize:
        out["abelianization"] = abelianization(pres).as_dict()
    if args.coxeter_cap is not None:
        table = todd_coxeter(pres, args.coxeter_cap)
        out["coset_count"] = table.cosets if table.complete else None
    out["provenance"] = [s.as_dict() for s in result.provenance]
    return pres, out


def _text(pres, out, cap) -> str:
    lines = [f"{out['name']}: {pres}"]
    if out["stable_letters"]:
        marks = ", ".join(f"{m['component']} = {m['letter']}" for m in out["stable_letters"])
        lines.append(f"  stable letters: {marks}")
    if "abelianization" in out:
        a = out["abelianization"]
        parts = ["Z"] * a["free_rank"] + [f"Z/{d}" for d in a["torsion"]]
        lines.append(f"  abelianization: {' + '.join(parts) if parts else '0'}")
    if "coset_count" in out:
        n = out["coset_count"]
        lines.append(f"  cosets: {n}" if n is not None else f"  cosets: not closed within {cap}")
    return "\n".join(lines)


def _cmd_compute(args, out, err) -> int:
    doc = _load(args.file, err)
    status = EXIT_OK
    records = []
    for task in build_tasks(doc):
        try:
            pres, rec = _compute_task(task, args)
        except VanKampenError as exc:
            print(f"{args.file}: {task.name}: error: {exc}", file=err)
            status = EXIT_DIAGNOSTICS
            continue
        records.append(rec)
        if not args.json:
            print(_text(pres, rec, args.coxeter_cap), file=out)
    if args.json:
        print(json.dumps(records, indent=2), file=out)
    return status


def _cmd_check(args, out, err) -> int:
    doc = _load(args.file, err)
    problems = 0
    for task in build_tasks(doc):
        if isinstance(task, AttachTask):
            try:
                attach_graph(task.base, task.graph, task.h_edges, task.loops)
            except VanKampenError as exc:
                print(f"{args.file}: {task.name}: error: {exc}", file=err)
                problems += 1
            continue
        report = validate(task.space)
        for d in report.diagnostics:
            print(f"{args.file}: {task.name}: error: {d}", file=err)
            problems += 1
        if not report.ok:
            continue
        for e in task.space.edges:
            for c in e.components:
                for end, f in zip(e.ends, (c.into_u, c.into_v)):
                    r = check_map_abelianized(f)
                    if not r.passed:
                        print(f"{args.file}: {task.name}: warning: component {c.id} of {e.id}, "
                              f"map into {end}: {r.summary()}", file=err)
                        problems += 1
    if problems:
        return EXIT_DIAGNOSTICS
    print("ok", file=out)
    return EXIT_OK


def _cmd_graph_pi1(args, out, err) -> int:
    doc = _load(args.file, err)
    decl = next((i for i in doc.items if i.name == args.graph), None)
    if not isinstance(decl, GraphDecl):
        print(f"{args.file}: no graph named {args.graph}", file=err)
        return EXIT_DIAGNOSTICS
    g = decl.graph
    if not g.vertices:
        print(f"{args.file}: graph {args.graph} has no vertices", file=err)
        return EXIT_DIAGNOSTICS
    try:
        pres, gens = graph_pi1(g, g.vertices[0])
    except VanKampenError as exc:
        print(f"{args.file}: {args.graph}: error: {exc}", file=err)
        return EXIT_DIAGNOSTICS
    if args.json:
        rec = {"name": args.graph, "basepoint": g.vertices[0], "cycle_rank": cycle_rank(g),
               "generators": [str(s) for s in pres.gens], "relators": [],
               "edge_generators": {e: str(s) for e, s in gens.items()}}
        print(json.dumps(rec, indent=2), file=out)
    else:
        print(f"{args.graph}: {pres}", file=out)
        print(f"  cycle rank: {cycle_rank(g)}", file=out)
    return EXIT_OK


_ROW_SPLIT = re.compile(r"[\s,]+")


def _read_matrix(text: str):
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].replace("[", " ").replace("]", " ")
        tokens = [t for t in _ROW_SPLIT.split(line) if t]
        if not tokens:
            continue
        try:
            rows.append([int(t) for t in tokens])
        except ValueError:
            raise ValueError(f"line {lineno}: expected integers") from None
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("rows have different lengths")
    return rows


def _cmd_snf(args, out, err) -> int:
    data = _read(args.file, err)
    try:
        rows = _read_matrix(data.decode("utf-8"))
    except (UnicodeDecodeError, ValueError) as exc:
        print(f"{args.file}: {exc}", file=err)
        return EXIT_DIAGNOSTICS
    snf = smith_normal_form(rows)
    if args.json:
        print(json.dumps({"diagonal": list(snf.diagonal), "rank": snf.rank}), file=out)
    else:
        print(f"diagonal: {' '.join(map(str, snf.diagonal))}", file=out)
        print(f"rank: {snf.rank}", file=out)
    return EXIT_OK


_COMMANDS = {"compute": _cmd_compute, "check": _cmd_check,
             "graph-pi1": _cmd_graph_pi1, "snf": _cmd_snf}


def run(argv=None, stdout=None, stderr=None) -> int:
    """Run the command line with ``argv`` (default ``sys.argv[1:]``); return the exit status."""
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    saved = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = out, err  # argparse writes usage to the real streams
    try:
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as exc:
            return exc.code if isinstance(exc.code, int) else EXIT_USAGE
        try:
            return _COMMANDS[args.command](args, out, err)
        except _Failure:
            return EXIT_DIAGNOSTICS
    finally:
        sys.stdout, sys.stderr = saved


def main() -> None:
    sys.exit(run())
