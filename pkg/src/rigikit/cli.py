"""Command-line front end: ``rigikit <command> [options]``.

Every command prints JSON (one object per line) unless ``--out table``
is given. Exit codes: 0 ok, 1 I/O or input format error, 2 domain
precondition failure or unknown check name.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import graphs as G
from . import matroid as M
from .graphs import Graph, edge
from .rigidity import (
    BACKENDS,
    DEFAULT_SEED,
    PreconditionError,
    RankOracle,
    bridges,
    is_independent,
    is_rigid,
)

EXIT_OK, EXIT_IO, EXIT_PRECONDITION = 0, 1, 2


class InputError(Exception):
    """Bad input file or malformed parameters (exit code 1)."""


def _emit(args, payload) -> None:
    if getattr(args, "out", "json") == "table" and isinstance(payload, dict):
        width = max((len(str(k)) for k in payload), default=0)
        for k, v in payload.items():
            if isinstance(v, (list, dict)):
                v = json.dumps(v)
            print(f"{str(k).ljust(width)}  {v}")
    else:
        print(json.dumps(payload, sort_keys=False))


def _read_graph(path: str) -> Graph:
    try:
        if path == "-":
            return G.parse_graph(sys.stdin.read())
        return G.load_graph(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed graph {path}: {exc}") from exc


def _oracle(args, g: Graph) -> RankOracle:
    if args.dim is None:
        raise InputError("--dim is required")
    return RankOracle.for_graph(g, args.dim, seed=args.seed, backend=args.backend, trials=args.trials)


def _parts(pp) -> list:
    return [[list(e) for e in part] for part in pp.sorted_parts()]


# ------------------------------------------------------------------ analysis commands

def cmd_rank(args) -> int:
    g = _read_graph(args.graph)
    o = _oracle(args, g)
    r = o.rank(g.edges)
    if args.out == "table":
        _emit(args, {"rank": r, "edges": g.m, "vertices": g.n})
    else:
        print(r)
    return EXIT_OK


def cmd_analyze(args) -> int:
    g = _read_graph(args.graph)
    o = _oracle(args, g)
    k = M.require_kfold(o, g.edges)
    rep = M.balanced_report(o, g.edges)
    out = {
        "k": k,
        "parts": rep.partition.ell,
        "rank": o.rank(g.edges),
        "edges": g.m,
        "rigid": is_rigid(o, g.edges, M.vertices_of(g.edges)),
        "technicolour": sorted(rep.technicolour),
        "trivial": rep.trivial,
        "intersection_rank": rep.intersection_rank,
        "bound": rep.bound,
        "balanced": rep.balanced,
    }
    _emit(args, out)
    return EXIT_OK


def cmd_partition(args) -> int:
    g = _read_graph(args.graph)
    o = _oracle(args, g)
    k = M.require_kfold(o, g.edges)
    pp = M.principal_partition(o, g.edges)
    _emit(args, {"k": k, "parts": _parts(pp), "technicolour": sorted(M.technicolour_vertices(pp))})
    return EXIT_OK


def cmd_balanced(args) -> int:
    g = _read_graph(args.graph)
    o = _oracle(args, g)
    M.require_kfold(o, g.edges)
    rep = M.balanced_report(o, g.edges)
    out = rep.to_dict()
    _emit(args, out)
    return EXIT_OK


def cmd_components(args) -> int:
    g = _read_graph(args.graph)
    o = _oracle(args, g)
    comps = M.components(o, g.edges)
    _emit(args, {"count": len(comps), "components": [[list(e) for e in sorted(c)] for c in comps]})
    return EXIT_OK


def cmd_closure(args) -> int:
    g = _read_graph(args.graph)
    o = _oracle(args, g)
    cl = M.closure(o, g.edges)
    added = sorted(cl - g.edge_set())
    _emit(args, {"n": g.n, "edges": [list(e) for e in sorted(cl)], "added": [list(e) for e in added]})
    return EXIT_OK


def cmd_bridges(args) -> int:
    g = _read_graph(args.graph)
    o = _oracle(args, g)
    br = sorted(bridges(o, g.edges))
    _emit(args, {"bridges": [list(e) for e in br], "independent": is_independent(o, g)})
    return EXIT_OK


# ------------------------------------------------------------------ construct

def _pair(text: str | None, what: str) -> tuple[int, int]:
    if not text:
        raise InputError(f"--{what} is required")
    try:
        u, v = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"--{what} expects 'u,v'") from exc
    return edge(u, v)


def _ints(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"--{name.replace('_', '-')} is required for {args.kind}")


def cmd_construct(args) -> int:
    kind = args.kind
    try:
        if kind == "complete":
            _need(args, "n")
            g = G.complete(args.n)
        elif kind == "bipartite":
            _need(args, "m", "n")
            g = G.complete_bipartite(args.m, args.n)
        elif kind == "cone":
            _need(args, "inp")
            g = G.cone(_read_graph(args.inp))
        elif kind in ("twosum", "parallel"):
            _need(args, "inp", "inp2")
            g1, g2 = _read_graph(args.inp), _read_graph(args.inp2)
            e1, e2 = _pair(args.e1, "e1"), _pair(args.e2, "e2")
            fn = G.graphical_two_sum if kind == "twosum" else G.graphical_parallel_connection
            g = fn(g1, g2, e1, e2)
        elif kind == "banana":
            _need(args, "d")
            g = G.banana_closed(args.d) if args.closed else G.banana(args.d)
        elif kind == "banana-chain":
            _need(args, "d", "copies")
            g = G.banana_chain(args.d, args.copies)
        elif kind == "x-replace":
            _need(args, "inp")
            g = G.x_replacement(_read_graph(args.inp), _pair(args.e1, "e1"), _pair(args.e2, "e2"),
                                _ints(args.extra))
        elif kind == "v-replace":
            _need(args, "inp")
            g = G.v_replacement(_read_graph(args.inp), _pair(args.e1, "e1"), _pair(args.e2, "e2"),
                                _ints(args.extra))
        elif kind == "extensions":
            _need(args, "d", "n")
            g = G.random_extension_graph(args.d, args.n, random.Random(args.seed))
        else:  # argparse choices make this unreachable
            raise InputError(f"unknown kind {kind}")
    except (ValueError, IndexError) as exc:
        if isinstance(exc, PreconditionError):
            raise
        raise InputError(f"invalid parameters for {kind}: {exc}") from exc
    print(g.to_json())
    return EXIT_OK


# ------------------------------------------------------------------ paperlab

def cmd_paperlab(args) -> int:
    from . import paperlab

    if args.backend == "graphic":
        raise InputError("paperlab runs on the field or rational backend")
    if args.list:
        for name in paperlab.check_names():
            print(f"{name}\t{paperlab.REGISTRY[name].anchor}")
        return EXIT_OK
    names = paperlab.check_names() if args.all else args.names
    if not names:
        raise InputError("name at least one check or pass --all")
    unknown = [n for n in names if n not in paperlab.REGISTRY]
    if unknown:
        print(f"unknown check(s): {', '.join(unknown)}", file=sys.stderr)
        return EXIT_PRECONDITION
    results = []
    for name in names:
        r = paperlab.run_check(name, seed=args.seed, backend=args.backend, instances=args.instances)
        results.append(r)
        if args.out == "table":
            status = "PASS" if r.passed else "FAIL"
            print(f"{status}  {r.name:<28} {r.elapsed:7.2f}s  {r.error or ''}")
        else:
            print(r.to_json())
        sys.stdout.flush()
    if args.junit:
        try:
            paperlab.write_junit(results, args.junit)
        except OSError as exc:
            raise InputError(f"cannot write {args.junit}: {exc}") from exc
    return EXIT_OK if all(r.passed for r in results) else EXIT_PRECONDITION


# ------------------------------------------------------------------ parser

def _common(p: argparse.ArgumentParser, dim_required: bool = False) -> None:
    p.add_argument("--dim", type=int, default=None, help="dimension d of R_d")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"configuration seed (default {DEFAULT_SEED})")
    p.add_argument("--backend", choices=BACKENDS, default="field")
    p.add_argument("--trials", type=int, default=1, help="random configurations per rank query")
    p.add_argument("--out", choices=("json", "table"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rigikit", description="Generic rigidity matroids and k-fold circuits.")
    sub = parser.add_subparsers(dest="command", required=True)

    simple = {
        "rank": (cmd_rank, "rank of the edge set in R_d"),
        "analyze": (cmd_analyze, "fold, partition size and balancedness of a k-fold circuit"),
        "partition": (cmd_partition, "principal partition of a k-fold circuit"),
        "balanced": (cmd_balanced, "full balancedness report"),
        "components": (cmd_components, "connected components of the restricted matroid"),
        "closure": (cmd_closure, "closure within the complete graph on the same vertices"),
        "bridges": (cmd_bridges, "coloops (edges on no circuit)"),
    }
    for name, (fn, help_) in simple.items():
        p = sub.add_parser(name, help=help_)
        p.add_argument("graph", help="graph JSON file, or - for stdin")
        _common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("construct", help="print a generated graph as JSON")
    p.add_argument("kind", choices=("complete", "bipartite", "cone", "twosum", "parallel", "banana",
                                    "banana-chain", "x-replace", "v-replace", "extensions"))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--copies", type=int)
    p.add_argument("--closed", action="store_true", help="banana: include the edge e")
    p.add_argument("--in", dest="inp")
    p.add_argument("--in2", dest="inp2")
    p.add_argument("--e1", help="edge 'u,v' (first graph, or uv for replacements)")
    p.add_argument("--e2", help="edge 'u,v' (second graph, or the second replaced edge)")
    p.add_argument("--extra", help="extra neighbours of the new vertex, comma separated")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("paperlab", help="run registered checks")
    p.add_argument("names", nargs="*")
    p.add_argument("--all", action="store_true")
    p.add_argument("--list", action="store_true")
    p.add_argument("--junit", help="write a JUnit XML report here")
    p.add_argument("--instances", type=int, default=50, help="random instances per randomized check")
    _common(p)
    p.set_defaults(func=cmd_paperlab)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "dim", None) is not None and args.dim < 1:
        parser.error("--dim must be at least 1")
    if getattr(args, "trials", 1) < 1:
        parser.error("--trials must be at least 1")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
