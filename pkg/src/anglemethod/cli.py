"""Command line front end.

Exit codes: 0 success, 1 failed check, 2 bad input, 3 undetermined angle,
4 exhaustive search refused by the subset cap.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .angle_model import ModelError, load_system, solve_angle_detail
from .discovery import DEFAULT_SUBSET_CAP, BudgetExceeded, DiscoveryError, SearchStrategy, dependency_certificates, discover, report_json
from .exact_linalg import StructuralError
from .graphs import GraphError, MAX_P, generate_cubic_hamiltonian, load_graph
from .patterns import (
    PatternError,
    assigned_matrix,
    derived_dot,
    derived_graph,
    parse_code,
    pattern_dot,
    pattern_matrix,
    remove_edge,
    sweep,
)
from .verification import FixtureSet, run_checks

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_UNDETERMINED, EXIT_BUDGET = 0, 1, 2, 3, 4

INPUT_ERRORS = (ModelError, StructuralError, GraphError, PatternError, DiscoveryError, OSError)


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    system = load_system(args.system)
    a, b = args.angle
    sol = solve_angle_detail(system, a, b)
    if sol is None:
        print("undetermined")
        return EXIT_UNDETERMINED
    suffix = "" if sol.scale == 1 else f" (mod 2*pi/{sol.scale})"
    print(f"d({a}) - d({b}) = {sol.value}{suffix}")
    return EXIT_OK


def cmd_discover(args) -> int:
    system = load_system(args.system)
    if args.seed is not None:
        strategy = SearchStrategy.random_permutations(args.seed, args.budget)
    else:
        strategy = SearchStrategy.exhaustive(args.cap)
    for cert in dependency_certificates(system):
        print("dependent hypotheses: " + " ".join(str(c) for c in cert), file=sys.stderr)
    try:
        theorems = discover(system, strategy, args.min_hypotheses, args.max_support)
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    _write(dump_json(report_json(theorems)), args.out)
    if args.out:
        print(f"{len(theorems)} theorem(s) written to {args.out}")
    return EXIT_OK


def _pattern(args):
    graph = load_graph(Path(args.graph).read_text())
    return remove_edge(graph, args.remove_edge)


def cmd_sweep(args) -> int:
    pattern = pattern_matrix(_pattern(args))
    report = sweep(pattern)
    if args.out:
        Path(args.out).write_text(dump_json(report.to_json()))
    print(f"hits: {report.hit_count} / {report.total}")
    print(
        f"symmetry-reduced hits: {report.symmetry_classes} "
        f"(automorphisms: {report.automorphism_count})"
    )
    print(f"rank-deficient assignments: {len(report.rank_deficient)}")
    return EXIT_OK


def cmd_graphs(args) -> int:
    if not 1 <= args.p <= MAX_P:
        print(f"--p must lie in 1..{MAX_P}", file=sys.stderr)
        return EXIT_INPUT
    graphs = generate_cubic_hamiltonian(args.p)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    files = []
    for k, g in enumerate(graphs, start=1):
        name = f"cubic_{2 * args.p}_{k:03d}.txt"
        (out / name).write_text(g.to_text())
        files.append(name)
    index = {"p": args.p, "vertices": 2 * args.p, "count": len(graphs), "files": files}
    (out / "index.json").write_text(dump_json(index))
    print(f"{len(graphs)} cubic Hamiltonian graph(s) on {2 * args.p} vertices")
    return EXIT_OK


def cmd_verify(args) -> int:
    fx = FixtureSet.from_dir(args.fixture_dir) if args.fixture_dir else FixtureSet.embedded()
    results = run_checks(fx)
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK


def cmd_export_dot(args) -> int:
    if args.system:
        system = load_system(args.system)
        matrix = system.matrix()
        dangling = [c for c in range(system.width) if sum(1 for r in matrix if r[c]) == 1]
        text = derived_dot(derived_graph(matrix), dangling)
    else:
        if not (args.graph and args.remove_edge):
            raise PatternError("export-dot needs --system, or --graph with --remove-edge")
        pg = _pattern(args)
        if args.code:
            pm = pattern_matrix(pg)
            matrix = assigned_matrix(pm, parse_code(args.code))
            text = derived_dot(derived_graph(matrix), pm.dangling_columns)
        else:
            text = pattern_dot(pg)
    _write(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="anglemethod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve for the angle between two lines")
    p.add_argument("--system", required=True)
    p.add_argument("--angle", nargs=2, required=True, metavar=("LINE_A", "LINE_B"))
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("discover", help="search a system for theorems")
    p.add_argument("--system", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--cap", type=int, default=DEFAULT_SUBSET_CAP)
    p.add_argument("--min-hypotheses", type=int, default=1)
    p.add_argument("--max-support", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_discover)

    p = sub.add_parser("sweep", help="sweep all coefficient placements of a pattern")
    p.add_argument("--graph", required=True)
    p.add_argument("--remove-edge", nargs=2, type=int, required=True, metavar=("U", "V"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("graphs", help="write cubic Hamiltonian graphs on 2p vertices")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_graphs)

    p = sub.add_parser("verify", help="run the reference-matrix checks")
    p.add_argument("--fixture-dir", help="read fixtures from files instead of the embedded copies")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-dot", help="DOT for a pattern graph or a derived graph")
    p.add_argument("--graph")
    p.add_argument("--remove-edge", nargs=2, type=int, metavar=("U", "V"))
    p.add_argument("--code", help="assignment code; exports the derived graph of that matrix")
    p.add_argument("--system", help="system JSON; exports its derived graph")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    if args.command == "discover" and args.seed is not None and args.budget <= 0:
        print("--budget must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
