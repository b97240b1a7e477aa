"""Command line interface: ``oddminor <subcommand> [options] GRAPH``.

Graphs are read in DIMACS edge format (default) or graph6; ``-`` reads
stdin.  Vertex ids in every JSON output and auxiliary input file are
0-based.  Exit codes: 0 success, 2 bad input or precondition, 3 resource
limit, 4 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import signal
import sys
from pathlib import Path

from . import io as gio
from .errors import (InstanceTooLarge, LiftingFailure, PreconditionViolation, StateBudgetExceeded,
                     TimeLimitExceeded)
from .graph import Graph, ListAssignment
from .oddmodel import DEFAULT_MAX_N, find_odd_clique_model, validate_odd_model
from .pipeline import Config, conjecture_sweep, solve, verify_report
from .planar import (NonplanarCertificate, RotationEmbedding, boundary_layering, greedy_disk_cover,
                     merge_disk_cover, planar_embed, precolored_face_extend, radial_distance, thomassen_extend)
from .reductions import reduce_to_fixpoint
from .structure import Thresholds, classify_bag, min_odd_cycle_transversal
from .treewidth import (DEFAULT_EXACT_LIMIT, TreeDecomposition, chromatic_number_dp, exact_treewidth,
                        heuristic_decomposition, odd_model_dp, validate_decomposition)

EXIT_OK, EXIT_PRECONDITION, EXIT_RESOURCE, EXIT_VERIFY = 0, 2, 3, 4


class VerificationFailed(Exception):
    pass


# ----------------------------------------------------------------------
# input helpers


def _read_graph(args) -> Graph:
    src = sys.stdin if args.graph == "-" else args.graph
    return gio.read_graph(src, args.graph_format)


def _read_lists(path: str, n: int) -> ListAssignment:
    """Lines ``v <vertex> <color> ...``; ``c`` lines are comments."""
    lists: list[set[int] | None] = [None] * n
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        tok = raw.split()
        if not tok or tok[0] == "c":
            continue
        if tok[0] != "v" or len(tok) < 2:
            raise gio.FormatError(f"{path}:{lineno}: expected 'v <vertex> <colors...>'")
        v = int(tok[1])
        if not 0 <= v < n:
            raise gio.FormatError(f"{path}:{lineno}: vertex {v} out of range")
        lists[v] = {int(c) for c in tok[2:]}
    missing = [v for v, l in enumerate(lists) if l is None]
    if missing:
        raise gio.FormatError(f"{path}: no list for vertices {missing}")
    return ListAssignment(lists)


def _read_pairs(path: str) -> dict[int, int]:
    """Lines ``<vertex> <color>``."""
    out = {}
    for raw in Path(path).read_text().splitlines():
        tok = raw.split()
        if tok and tok[0] != "c":
            out[int(tok[0])] = int(tok[1])
    return out


def _read_positions(path: str) -> list[tuple[float, float]]:
    return [tuple(map(float, line.split()[:2])) for line in Path(path).read_text().splitlines() if line.strip()]


def _embedding(g: Graph, args):
    if getattr(args, "positions", None):
        e = RotationEmbedding.from_positions(g, _read_positions(args.positions))
        if not e.euler_ok():
            raise PreconditionViolation("the drawing given by the positions is not a plane embedding")
        return e
    return planar_embed(g)


def _decomposition(g: Graph, args) -> TreeDecomposition:
    if getattr(args, "decomposition", None):
        d = TreeDecomposition.from_json(json.loads(Path(args.decomposition).read_text()))
        bad = validate_decomposition(g, d)
        if bad is not None:
            raise PreconditionViolation(f"invalid decomposition: {bad}")
        return d
    return heuristic_decomposition(g)


def _config(args) -> Config:
    return Config(state_budget=args.state_budget, timeout_s=args.timeout_s,
                  limit_n=args.limit_n or Config.limit_n, seed=args.seed)


# ----------------------------------------------------------------------
# subcommands; each returns a JSON-serializable dict


def cmd_solve(args):
    g = _read_graph(args)
    r = solve(g, args.t, _config(args))
    bad = verify_report(g, args.t, r)
    if bad is not None:
        raise VerificationFailed(str(bad))
    return r.to_json(timings=args.timings)


def cmd_reduce(args):
    g = _read_graph(args)
    trace = reduce_to_fixpoint(g, args.t)
    if trace.replay() != trace.reduced:
        raise VerificationFailed("trace does not replay")
    if args.out:
        gio.write_graph(trace.reduced, args.out, args.graph_format)
    out = {"n": trace.reduced.n, "m": trace.reduced.m, "reduced": gio.format_graph6(trace.reduced),
           "trace": trace.to_json()}
    if args.trace_out:
        Path(args.trace_out).write_text(json.dumps(trace.to_json(), sort_keys=True) + "\n")
    return out


def cmd_odd_model(args):
    g = _read_graph(args)
    if args.method == "dp":
        verdict = odd_model_dp(g, _decomposition(g, args), args.k, args.state_budget)
        return {"k": args.k, "method": "dp", "verdict": verdict.verdict, "states": verdict.states}
    engines: list = []
    model = find_odd_clique_model(g, args.k, support_limit=args.limit_support,
                                  max_n=args.limit_n or DEFAULT_MAX_N, search=engines)
    if model is not None and validate_odd_model(g, model) is not None:
        raise VerificationFailed("model does not validate")
    return {"k": args.k, "method": "search", "verdict": "found" if model else "absent",
            "model": model.to_json() if model else None, "nodesVisited": engines[0].nodes_visited}


def cmd_color(args):
    g = _read_graph(args)
    d = _decomposition(g, args)
    found = chromatic_number_dp(g, d, args.k_max, args.state_budget)
    if found is None:
        return {"kMax": args.k_max, "colors": None, "coloring": None}
    k, col = found
    if not col.is_proper(g, k):
        raise VerificationFailed("coloring is not proper")
    return {"kMax": args.k_max, "colors": k, "coloring": list(col.assignment), "width": d.width}


def cmd_treewidth(args):
    g = _read_graph(args)
    if args.heuristic:
        d = heuristic_decomposition(g)
        width, exact = d.width, False
    else:
        width, d = exact_treewidth(g, args.limit_n or DEFAULT_EXACT_LIMIT)
        exact = True
    if validate_decomposition(g, d) is not None:
        raise VerificationFailed("decomposition does not validate")
    return {"width": width, "exact": exact, "decomposition": d.to_json()}


def cmd_oct(args):
    g = _read_graph(args)
    apex = min_odd_cycle_transversal(g, args.k_max)
    return {"kMax": args.k_max, "size": None if apex is None else len(apex),
            "apex": None if apex is None else sorted(apex)}


def cmd_classify(args):
    g = _read_graph(args)
    n = args.n if args.n is not None else g.n
    th = Thresholds.default(n, args.t)
    th = Thresholds(args.size_threshold or th.size, args.apex_threshold or th.apex,
                    args.degree_threshold or th.degree)
    c = classify_bag(g, n, th, args.t)
    if not c.verify(g):
        raise VerificationFailed("classification does not verify")
    return c.to_json()


def cmd_planar(args):
    g = _read_graph(args)
    e = _embedding(g, args)
    if isinstance(e, NonplanarCertificate):
        return {"planar": False, "kuratowski": [list(x) for x in e.edges]}
    out = {"planar": True, "embedding": e.to_json()}
    if args.check:
        return {"planar": True, "faces": len(e.faces), "eulerOk": e.euler_ok()}
    if args.layering:
        lay = boundary_layering(g, e, args.face)
        out["layering"] = {"startFace": args.face, "phases": lay.phases, "phaseBound": lay.phase_bound(),
                           "region": sorted(lay.region),
                           "phaseOf": {str(v): p for v, p in sorted(lay.phase_of.items())},
                           "maxOutsideNeighbors": lay.max_outside_neighbors(g)}
    if args.radial_dist is not None:
        a, b = args.radial_dist
        out["radialDistance"] = {"atoms": [a, b], "distance": radial_distance(e).distance(a, b)}
    if args.radius is not None:
        metric = radial_distance(e)
        targets = [metric.face_atom(f) for f in range(len(e.faces))]
        cover = merge_disk_cover(metric, greedy_disk_cover(metric, range(len(e.faces)), args.radius), targets)
        bad = cover.verify(metric, targets)
        if bad is not None:
            raise VerificationFailed(bad)
        out["diskCover"] = {"centers": [[c, r] for c, r in cover.centers],
                            "assignment": {str(a): i for a, i in sorted(cover.assignment.items())}}
    return out


def cmd_listcolor(args):
    g = _read_graph(args)
    e = _embedding(g, args)
    if isinstance(e, NonplanarCertificate):
        raise PreconditionViolation("graph is not planar")
    lists = _read_lists(args.lists, g.n)
    if args.precolor:
        col = precolored_face_extend(g, e, lists, _read_pairs(args.precolor))
    else:
        if args.x is None or args.y is None:
            raise PreconditionViolation("give --x and --y, or --precolor")
        col = thomassen_extend(g, e, lists, args.x, args.y)
    return {"coloring": list(col.assignment)}


def cmd_sweep(args):
    summary = conjecture_sweep(args.family, args.t, _config(args), workers=args.workers)
    if summary["invalid"]:
        raise VerificationFailed(f"{len(summary['invalid'])} reports did not verify")
    return summary


# ----------------------------------------------------------------------


def _add_graph(p):
    p.add_argument("graph", help="graph file (DIMACS unless --graph-format graph6); '-' for stdin")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oddminor", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--graph-format", choices=("dimacs", "graph6"), default="dimacs")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--limit-n", type=int, default=None,
                        help="largest instance exhaustive routines accept (default depends on the command)")
    parser.add_argument("--state-budget", type=int, default=10**7, help="table entries allowed per DP")
    parser.add_argument("--timeout-s", type=int, default=None, help="wall-clock limit for the whole command")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="reduce, then color / find an odd model / report structure")
    _add_graph(p)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--timings", action="store_true", help="include per-phase timings (not byte-stable)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", help="apply the reduction rules to a fixpoint")
    _add_graph(p)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--out", help="write the reduced graph here")
    p.add_argument("--trace-out", help="write the JSON trace here")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("odd-model", help="search for an odd K_k model")
    _add_graph(p)
    p.add_argument("--t", "--k", dest="k", type=int, required=True, help="clique order")
    p.add_argument("--limit-support", type=int, default=None, help="largest total model support to try")
    p.add_argument("--method", choices=("search", "dp"), default="search")
    p.add_argument("--decomposition", help="tree decomposition JSON for --method dp")
    p.set_defaults(func=cmd_odd_model)

    p = sub.add_parser("color", help="chromatic number by tree-decomposition DP")
    _add_graph(p)
    p.add_argument("--kmax", "--k-max", dest="k_max", type=int, required=True)
    p.add_argument("--decomposition", help="tree decomposition JSON (default: min-fill heuristic)")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("treewidth", help="exact or heuristic tree decomposition")
    _add_graph(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="branch and bound (default)")
    mode.add_argument("--heuristic", action="store_true", help="min-fill elimination")
    p.set_defaults(func=cmd_treewidth)

    p = sub.add_parser("oct", help="minimum odd cycle transversal")
    _add_graph(p)
    p.add_argument("--kmax", "--k-max", dest="k_max", type=int, default=None)
    p.set_defaults(func=cmd_oct)

    p = sub.add_parser("classify", help="classify a bag as small / nearly bipartite / neither")
    _add_graph(p)
    p.add_argument("--t", type=int, default=4)
    p.add_argument("--n", type=int, default=None, help="host graph size used for the size threshold")
    p.add_argument("--size-threshold", type=int)
    p.add_argument("--apex-threshold", type=int)
    p.add_argument("--degree-threshold", type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("planar", help="embedding, boundary layering and disk covers")
    _add_graph(p)
    p.add_argument("--positions", help="'x y' per vertex; embed the straight-line drawing")
    p.add_argument("--check", action="store_true", help="only report planarity (or a Kuratowski subgraph)")
    p.add_argument("--layering", action="store_true", help="run boundary layering from --face")
    p.add_argument("--face", type=int, default=0, help="start face index for --layering")
    p.add_argument("--radial-dist", type=int, nargs=2, metavar=("A", "B"),
                   help="radial distance between two atoms (vertices 0..n-1, then faces)")
    p.add_argument("--radius", type=float, help="greedy + merged disk cover of all faces")
    p.set_defaults(func=cmd_planar)

    p = sub.add_parser("listcolor", help="list-coloring extension on a plane graph")
    _add_graph(p)
    p.add_argument("--lists", required=True, help="lines 'v <vertex> <colors...>'")
    p.add_argument("--positions")
    p.add_argument("--x", type=int)
    p.add_argument("--y", type=int)
    p.add_argument("--precolor", help="lines '<vertex> <color>' for a 3- or 4-vertex outer face")
    p.set_defaults(func=cmd_listcolor)

    p = sub.add_parser("sweep", help="solve a whole graph family and count outcomes")
    p.add_argument("--family", required=True, help="all:N, connected:N or random:COUNT:NMAX:SEED")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def _text(data, indent=0) -> str:
    lines = []
    pad = "  " * indent
    for key, val in data.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_text(val, indent + 1))
        else:
            lines.append(f"{pad}{key}: {json.dumps(val) if isinstance(val, list) else val}")
    return "\n".join(lines)


def _on_alarm(signum, frame):
    raise TimeLimitExceeded("wall-clock limit reached")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.timeout_s:
        signal.signal(signal.SIGALRM, _on_alarm)
        signal.alarm(args.timeout_s)
    try:
        result = args.func(args)
    except (InstanceTooLarge, StateBudgetExceeded, TimeLimitExceeded) as exc:
        print(f"oddminor: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (LiftingFailure, VerificationFailed) as exc:
        print(f"oddminor: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (PreconditionViolation, gio.FormatError, ValueError, OSError) as exc:
        print(f"oddminor: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    finally:
        if args.timeout_s:
            signal.alarm(0)
    if args.format == "json":
        print(json.dumps(result, sort_keys=True, indent=2))
    else:
        print(_text(result))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
