"""``qsym`` command line.

Inputs are JSON files, or ``@name`` for a shipped fixture.  Exit codes:
0 success, 1 negative result, 2 usage or input error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from pathlib import Path

from . import __version__
from .analyzer import analyze
from .composition import (DEFAULT_SKELETON_BOUND, CompositionError, Triple, composable_pairs,
                          count_thetas, enumerate_thetas, pullback, skeleton_count, validate_theta)
from .equivalence import automorphisms, is_equivalent
from .fixtures import fixture_names, load_fixture, random_triple, serialize_fixture, shipped_text
from .graph import GraphError, OneGraph, validate_graph
from .ncalgebra import DEFAULT_BUDGET, DEFAULT_DEGREE_BOUND, BudgetExceeded
from .presentation import canonicalize, generate, relation_counts
from .serialize import (SchemaError, dumps, graph_from_json, load_json, theta_to_json,
                        triple_from_json, triple_to_json)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(source: str):
    """Parsed JSON and a display name for a path or ``@fixture``."""
    if source.startswith("@"):
        name = source[1:]
        if name not in fixture_names():
            raise InputError(f"{source}: unknown fixture; choose from {', '.join(fixture_names())}")
        return json.loads(shipped_text(name)), source
    if not Path(source).exists():
        raise InputError(f"{source}: no such file")
    return load_json(source), source


def _is_triple(data) -> bool:
    return isinstance(data, dict) and "graph1" in data


def read_triple(source: str) -> Triple:
    data, where = _read(source)
    if not _is_triple(data):
        raise InputError(f"{where}: expected a triple with graph1, graph2, theta")
    t = triple_from_json(data, where)
    res = validate_theta(t)
    if not res.ok:
        raise InputError(f"{where}: invalid triple: " + "; ".join(res.violations))
    return t


def read_graph(source: str) -> OneGraph:
    data, where = _read(source)
    if _is_triple(data):
        raise InputError(f"{where}: expected a graph, got a triple")
    return graph_from_json(data, where)


def read_graph_pair(sources: list[str]) -> tuple[OneGraph, OneGraph]:
    """Two graphs from one triple file or from two graph files."""
    if len(sources) == 1:
        data, where = _read(sources[0])
        if not _is_triple(data):
            raise InputError(f"{where}: pass a triple, or two graph files")
        return graph_from_json(data["graph1"], f"{where}.graph1"), graph_from_json(data["graph2"], f"{where}.graph2")
    if len(sources) == 2:
        return read_graph(sources[0]), read_graph(sources[1])
    raise InputError("expected one triple file or two graph files")


def _emit(args, data, text: str | None = None) -> None:
    if args.json or text is None:
        sys.stdout.write(dumps(data))
    else:
        sys.stdout.write(text)


def _rows(rows) -> str:
    return "".join("\t".join(str(c) for c in r) + "\n" for r in rows)


# subcommands

def cmd_validate(args) -> int:
    data, where = _read(args.file)
    if _is_triple(data):
        res = validate_theta(triple_from_json(data, where))
        kind = "triple"
    else:
        res = validate_graph(graph_from_json(data, where))
        kind = "graph"
    out = {"kind": kind, "ok": res.ok, "violations": res.violations, "notes": res.notes}
    text = f"{kind}\t{'ok' if res.ok else 'invalid'}\n"
    text += _rows([("violation", v) for v in res.violations]) + _rows([("note", v) for v in res.notes])
    _emit(args, out, text)
    return EXIT_OK if res.ok else EXIT_NEGATIVE


def cmd_pairs(args) -> int:
    g1, g2 = read_graph_pair(args.files)
    x, y = (g2, g1) if args.reverse else (g1, g2)
    pairs = composable_pairs(x, y)
    _emit(args, [list(p) for p in pairs], _rows(pairs))
    return EXIT_OK


def cmd_theta_count(args) -> int:
    g1, g2 = read_graph_pair(args.files)
    c = count_thetas(g1, g2)
    _emit(args, {"count": c}, f"{c}\n")
    return EXIT_OK


def cmd_theta_enum(args) -> int:
    g1, g2 = read_graph_pair(args.files)
    thetas = list(enumerate_thetas(g1, g2, limit=args.limit))
    if args.json:
        _emit(args, [theta_to_json(th) for th in thetas])
        return EXIT_OK
    rows = []
    for k, th in enumerate(thetas):
        rows += [(k, a[0], a[1], b[0], b[1]) for a, b in th.mapping]
    sys.stdout.write(_rows(rows))
    return EXIT_OK


def cmd_pullback(args) -> int:
    t = pullback(read_graph(args.file))
    text = dumps(triple_to_json(t))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_skeleton(args) -> int:
    t = read_triple(args.file)
    m = skeleton_count(t, args.m, args.n, args.bound)
    _emit(args, {"m": args.m, "n": args.n, "matrix": [list(r) for r in m]}, _rows(m))
    return EXIT_OK


def cmd_equiv(args) -> int:
    t1, t2 = read_triple(args.first), read_triple(args.second)
    if t1.n != t2.n:
        found = []
    else:
        found = is_equivalent(t1, t2, all_witnesses=args.all, jobs=args.jobs)
    if args.json:
        _emit(args, {"equivalent": bool(found), "witnesses": [list(p) for p in found]})
    elif found:
        sys.stdout.write("equivalent\n" + _rows([("witness", " ".join(map(str, p))) for p in found]))
    else:
        sys.stdout.write("not equivalent\n")
    return EXIT_OK if found else EXIT_NEGATIVE


def cmd_aut(args) -> int:
    g = automorphisms(read_triple(args.file), jobs=args.jobs)
    _emit(args, g.as_dict())
    return EXIT_OK


def cmd_presentation(args) -> int:
    p = generate(read_triple(args.file))
    if not args.raw:
        p = canonicalize(p)
    if args.json:
        sys.stdout.write(p.dumps())
        return EXIT_OK
    counts = relation_counts(p)
    text = _rows(("count", tag, c) for tag, c in counts.items())
    text += _rows((r.tag, r.poly) for r in p.relations)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_analyze(args) -> int:
    t = read_triple(args.file)
    report = analyze(t, args.degree_bound, args.budget, jobs=args.jobs, dump_ideal=args.dump_ideal)
    if args.figure:
        from .plotting import report_figure
        report_figure(t, report, args.figure)
    _emit(args, report.as_dict(), report.text())
    return EXIT_OK


def cmd_fixtures(args) -> int:
    if args.action == "list":
        _emit(args, fixture_names(), "".join(n + "\n" for n in fixture_names()))
        return EXIT_OK
    if args.action == "export":
        if not args.name:
            raise InputError("fixtures export needs a fixture name")
        if args.name not in fixture_names():
            raise InputError(f"{args.name}: unknown fixture; choose from {', '.join(fixture_names())}")
        text = serialize_fixture(load_fixture(args.name))
    else:
        text = serialize_fixture(random_triple(random.Random(args.seed), n_max=args.max_vertices))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON output")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, metavar="N",
                        help="worker processes for permutation search (default: all cores)")

    parser = argparse.ArgumentParser(prog="qsym", description="Quantum symmetry of 2-graphs given by triples.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("validate", parents=[common], help="check a graph or triple")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("pairs", parents=[common], help="list composable pairs")
    p.add_argument("files", nargs="+", metavar="FILE", help="a triple, or two graphs")
    p.add_argument("--reverse", action="store_true", help="list E2*E1 instead of E1*E2")
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("theta-count", parents=[common], help="number of valid thetas")
    p.add_argument("files", nargs="+", metavar="FILE", help="a triple, or two graphs")
    p.set_defaults(func=cmd_theta_count)

    p = sub.add_parser("theta-enum", parents=[common], help="enumerate valid thetas")
    p.add_argument("files", nargs="+", metavar="FILE", help="a triple, or two graphs")
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_theta_enum)

    p = sub.add_parser("pullback", parents=[common], help="triple (G, G, id) of a graph")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_pullback)

    p = sub.add_parser("skeleton", parents=[common], help="count degree-(m, n) morphisms")
    p.add_argument("file")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--bound", type=int, default=DEFAULT_SKELETON_BOUND, help="maximum m + n")
    p.set_defaults(func=cmd_skeleton)

    p = sub.add_parser("equiv", parents=[common], help="test two triples for equivalence")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--all", action="store_true", help="list every witness")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("aut", parents=[common], help="classical automorphism group")
    p.add_argument("file")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("presentation", parents=[common], help="defining relations")
    p.add_argument("file")
    p.add_argument("--raw", action="store_true", help="skip canonicalization")
    p.set_defaults(func=cmd_presentation)

    p = sub.add_parser("analyze", parents=[common], help="full classification report")
    p.add_argument("file")
    p.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE_BOUND, metavar="L")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, metavar="W", help="max tracked normal words")
    p.add_argument("--text", action="store_true", help="human-readable report (default)")
    p.add_argument("--dump-ideal", metavar="PATH", help="write the saturated ideal as JSON")
    p.add_argument("--figure", metavar="PATH", help="render entry classes and the skeleton to an image")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("fixtures", parents=[common], help="shipped examples and random triples")
    p.add_argument("action", choices=["list", "export", "random"])
    p.add_argument("name", nargs="?")
    p.add_argument("-o", "--output")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-vertices", type=int, default=5)
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "text", False) and args.json:
        parser.error("--text and --json are mutually exclusive")
    if getattr(args, "degree_bound", 1) < 1:
        parser.error("--degree-bound must be at least 1")
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"qsym: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, SchemaError, GraphError, CompositionError) as exc:
        print(f"qsym: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"qsym: {exc.filename or ''}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
