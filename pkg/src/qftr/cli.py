"""Command-line front end: ``qftr {synthesize,cost,verify,solve-path}``."""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from .covering import SolverCapError, max_exact_vertices
from .graph import GraphError, load_graph
from .sim import MAX_VERIFY, SimulationCapError, verify_statevector, verify_synthesis
from .synth import METHODS, solve_covering_path, synthesize_qft
from .circuit import emit_qasm

log = logging.getLogger("qftr")

EXIT_INPUT = 1
EXIT_CAP = 2
EXIT_VERIFY = 3


def _resolve_method(method: str, n: int) -> str:
    if method == "auto" and n > max_exact_vertices():
        log.warning("%d vertices exceed the exact cap of %d; using the approximate solver", n, max_exact_vertices())
        return "approx"
    return method


def _synthesize(args):
    g = load_graph(args.graph)
    return g, synthesize_qft(g, _resolve_method(args.method, g.n))


def cmd_synthesize(args) -> int:
    g, syn = _synthesize(args)
    report = syn.report
    if args.verify:
        check = verify_synthesis if g.n <= MAX_VERIFY else verify_statevector
        result = check(syn.lowered)
        report.residual = result.residual
        if not result.equivalent:
            log.error("verification failed: residual %.3e", result.residual)
    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    qasm_path = prefix.with_name(prefix.name + ".qasm")
    json_path = prefix.with_name(prefix.name + ".report.json")
    qasm_path.write_text(emit_qasm(syn.lowered))
    json_path.write_text(report.to_json())
    print(f"n={report.n} method={report.method} actual={report.actual} predicted={report.predicted}")
    print(f"wrote {qasm_path} and {json_path}")
    if args.verify and report.residual is not None and report.residual >= 1e-9:
        return EXIT_VERIFY
    return 0


def cmd_cost(args) -> int:
    _, syn = _synthesize(args)
    report = syn.report
    rows = [("r", "len", "cnots")] + [(row["r"], row["len"], row["cnots"]) for row in report.per_cascade]
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerows(rows)
    print(f"# n={report.n} K={report.K} predicted={report.predicted} actual={report.actual} method={report.method}")
    if args.out:
        from .plotting import plot_cascade_costs

        prefix = Path(args.out)
        prefix.parent.mkdir(parents=True, exist_ok=True)
        csv_path = prefix.with_name(prefix.name + ".cost.csv")
        png_path = prefix.with_name(prefix.name + ".cost.png")
        with open(csv_path, "w", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows(rows)
        plot_cascade_costs(report, png_path, title=args.graph)
        print(f"# wrote {csv_path} and {png_path}")
    return 0


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    if g.n > MAX_VERIFY:
        raise SimulationCapError(f"verify is capped at {MAX_VERIFY} qubits; {args.graph} has {g.n}")
    syn = synthesize_qft(g, _resolve_method(args.method, g.n))
    result = verify_synthesis(syn.lowered)
    status = "PASS" if result.equivalent else "FAIL"
    print(f"residual={result.residual:.3e} cnots={syn.report.actual} {status}")
    return 0 if result.equivalent else EXIT_VERIFY


def cmd_solve_path(args) -> int:
    g = load_graph(args.graph)
    method = _resolve_method(args.method, g.n)
    sol = solve_covering_path(g, method)
    print(f"method: {sol.method}")
    print("path: " + " ".join(map(str, sol.path)))
    print(f"length: {sol.length}")
    print("visited: " + " ".join(map(str, sorted(sol.visited))))
    print("boundary: " + " ".join(map(str, sorted(sol.boundary))))
    print(f"objective: {sol.objective}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qftr", description="QFT synthesis for qubit connectivity graphs")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--graph", required=True, help="edge-list file, lnn:<n>, sun16 or suns27")
        p.add_argument("--method", choices=METHODS, default="auto")
        p.add_argument("--seed", type=int, default=None, help="accepted for interface stability; unused")

    p = sub.add_parser("synthesize", help="write lowered QASM and a JSON cost report")
    common(p)
    p.add_argument("--out", default="qft", help="output prefix (default: qft)")
    p.add_argument("--verify", action="store_true", help="simulate and record the residual")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("cost", help="print per-cascade CNOT counts as CSV")
    common(p)
    p.add_argument("--out", default=None, help="also write <out>.cost.csv and <out>.cost.png")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("verify", help=f"synthesize and check against the QFT (n <= {MAX_VERIFY})")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve-path", help="print a (3,2,1)-covering path of the graph")
    common(p)
    p.set_defaults(func=cmd_solve_path)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except SolverCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphError, SimulationCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
