"""Command-line entry point: ``kempe-reconfig <command> ...``.

Exit codes: 0 verified / success, 1 property violated, 2 resource budget
exhausted, 3 bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .colouring import ColouringError, is_proper
from .formats import format_edge_list, read_colouring, read_edge_list, reconfig_to_dot, to_dot, witness_to_json
from .graph import GraphError
from .harness import verify_max_degree, verify_regular
from .kempe import BudgetExceeded, are_kempe_equivalent, build_reconfig_graph, default_budget, reconfig_diameter
from .lattices import FAMILIES, LatticeSpec, random_k_regular_connected
from .wsk import WskConfig, random_proper_colouring, run_chain

EXIT_OK, EXIT_VIOLATION, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3


def _emit(obj: dict, out) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _build_family(args: argparse.Namespace):
    if args.family == "random_regular":
        if args.k is None or args.n is None:
            raise GraphError("random_regular needs --n and --k")
        return random_k_regular_connected(args.n, args.k, args.seed)
    return LatticeSpec(args.family, args.m, args.n).build()


def cmd_generate(args: argparse.Namespace) -> int:
    G = _build_family(args)
    sys.stdout.write(to_dot(G) if args.format == "dot" else format_edge_list(G))
    return EXIT_OK


def cmd_classes(args: argparse.Namespace) -> int:
    G = read_edge_list(args.graph)
    R = build_reconfig_graph(G, args.k, args.budget_states)
    if args.format == "dot":
        sys.stdout.write(reconfig_to_dot(R))
        return EXIT_OK
    out = {
        "n": G.n,
        "k": args.k,
        "states": len(R.states),
        "classes": R.num_classes,
        "sizes": R.class_sizes(),
    }
    if not R.states:
        out["note"] = f"graph has no proper {args.k}-colourings"
    elif not args.no_diameter:
        diam = reconfig_diameter(R, args.budget_states)
        out["diameters"] = diam
        out["n_squared"] = G.n * G.n
    _emit(out, sys.stdout)
    return EXIT_OK


def cmd_equiv(args: argparse.Namespace) -> int:
    G = read_edge_list(args.graph)
    a = read_colouring(args.colouring_a)
    b = read_colouring(args.colouring_b)
    for c in (a, b):
        if c.k != args.k or len(c) != G.n or not is_proper(G, c):
            raise ColouringError("input colourings must be proper k-colourings of the graph")
    ok, path = are_kempe_equivalent(G, args.k, a, b, args.budget_states)
    out = {"equivalent": ok, "steps": len(path) if path is not None else None}
    if ok and args.witness:
        Path(args.witness).write_text(json.dumps(witness_to_json(a, path), sort_keys=True) + "\n")
        out["witness"] = str(args.witness)
    _emit(out, sys.stdout)
    return EXIT_OK


def _write_report(report, args: argparse.Namespace) -> int:
    for row in report.json_lines(all_instances=args.all_instances):
        _emit(row, sys.stdout)
    # wall-clock time goes to its own line so the rest stays reproducible
    if args.timing:
        _emit({"type": "timing", "wall_time": report.wall_time}, sys.stdout)
    return report.exit_code


def cmd_verify_regular(args: argparse.Namespace) -> int:
    if args.n_max > args.n_ceiling:
        raise GraphError(f"--n-max above ceiling {args.n_ceiling}; raise --n-ceiling to proceed")
    report = verify_regular(
        args.k, args.n_max, jobs=args.jobs, budget=args.budget_states, iso_cache=not args.no_iso_cache
    )
    return _write_report(report, args)


def cmd_max_degree(args: argparse.Namespace) -> int:
    report = verify_max_degree(args.d, args.k, args.n_max, samples=args.samples, seed=args.seed, budget=args.budget_states)
    return _write_report(report, args)


def cmd_wsk(args: argparse.Namespace) -> int:
    G = read_edge_list(args.graph) if args.graph else _build_family(args)
    init = read_colouring(args.init) if args.init else random_proper_colouring(G, args.q, args.seed)
    cfg = WskConfig(
        args.q, args.steps, args.seed, record_every=args.record_every,
        track_vertex=args.track_vertex, check_proper=args.check_proper,
    )
    report = run_chain(G, init, cfg)
    out = report.to_json()
    if not args.histograms:
        out.pop("histograms")
    _emit(out, sys.stdout)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["vertex"] + [f"colour_{c}" for c in range(1, args.q + 1)])
            for v, row in enumerate(report.histograms):
                w.writerow([v] + row)
    return EXIT_OK if report.proper_throughout is not False else EXIT_VIOLATION


def _family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=FAMILIES + ("random_regular",), default="kagome")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None, help="degree for random_regular")
    p.add_argument("--seed", type=int, default=0)


def _budget_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-states", type=int, default=None,
                   help=f"state budget (default {default_budget()}, env KEMPE_BUDGET_STATES)")


def _report_args(p: argparse.ArgumentParser) -> None:
    _budget_arg(p)
    p.add_argument("--all-instances", action="store_true", help="one JSON line per instance, not just failures")
    p.add_argument("--timing", action="store_true", help="append a wall-time line")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kempe-reconfig", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a graph as an edge list or DOT")
    _family_args(p)
    p.add_argument("--format", choices=("edges", "dot"), default="edges")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("classes", help="Kempe classes of k-colourings of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--no-diameter", action="store_true")
    _budget_arg(p)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("equiv", help="decide Kempe equivalence of two colourings")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("colouring_a")
    p.add_argument("colouring_b")
    p.add_argument("--witness", help="write the witness path JSON here")
    _budget_arg(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("verify-regular", help="exhaustive check over k-regular graphs")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-ceiling", type=int, default=8, help="refuse larger --n-max unless raised (n=9 is slow)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-iso-cache", action="store_true", help="recompute every labelled graph")
    _report_args(p)
    p.set_defaults(func=cmd_verify_regular)

    p = sub.add_parser("max-degree", help="one Kempe class of d-colourings for k-colourable graphs of maximum degree k")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    _report_args(p)
    p.set_defaults(func=cmd_max_degree)

    p = sub.add_parser("wsk", help="run the zero-temperature WSK chain")
    _family_args(p)
    p.add_argument("--graph", help="edge-list file instead of a family")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--steps", type=int, default=10_000)
    p.add_argument("--init", help="initial colouring JSON (default: random proper)")
    p.add_argument("--record-every", type=int, default=100)
    p.add_argument("--track-vertex", type=int, default=None)
    p.add_argument("--check-proper", action="store_true")
    p.add_argument("--histograms", action="store_true", help="include per-vertex histograms in the JSON")
    p.add_argument("--csv", help="write per-vertex colour histograms as CSV")
    p.set_defaults(func=cmd_wsk, m=3, n=3)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphError, ColouringError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
