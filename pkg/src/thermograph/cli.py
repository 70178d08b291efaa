"""Command-line front end.

Subcommands: ``graph``, ``sweep``, ``tc``, ``window`` and ``verify``.
Exit status is 0 on success, 1 for usage errors, 2 for cap or precondition
violations, 3 when a critical-temperature search fails and 4 when
``verify`` finds a trace distance at or above the tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import entanglement as ent
from . import graph_core as gc
from .densop import DEFAULT_MAX_QUBITS, HARD_MAX_QUBITS
from .errors import CapExceededError, SolverError
from .states import VERIFY_MAX_QUBITS, equivalence_check

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_SOLVER, EXIT_VERIFY_FAILED = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def parse_temps(spec: str) -> list[float]:
    """``start:stop:steps`` (inclusive linspace) or a comma-separated list."""
    try:
        if ":" in spec:
            start, stop, steps = spec.split(":")
            start, stop, steps = float(start), float(stop), int(steps)
            if not start < stop or steps < 2:
                raise UsageError("temperature grid needs start < stop and steps >= 2")
            return [float(t) for t in np.linspace(start, stop, steps)]
        temps = [float(t) for t in spec.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"malformed temperature spec {spec!r}") from None
    if not temps:
        raise UsageError("empty temperature list")
    return temps


def _parse_couplings(text: str) -> float | list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"malformed couplings {text!r}") from None
    return values[0] if len(values) == 1 else values


def load_graph_source(src: str, couplings: str | None = None) -> gc.Graph:
    """Load a graph JSON file, or build one from ``chain:<n>``, ``lattice:<r>x<c>``, ``star:<k>``."""
    path = Path(src)
    try:
        if path.exists():
            g = gc.load_graph(path)
        else:
            kind, sep, arg = src.partition(":")
            if not sep:
                raise UsageError(f"graph source {src!r} is neither a file nor a generator spec")
            if kind == "chain":
                g = gc.linear_chain(int(arg))
            elif kind == "lattice":
                rows, _, cols = arg.partition("x")
                g = gc.square_lattice(int(rows), int(cols or rows))
            elif kind == "star":
                g = gc.star_graph(int(arg))
            else:
                raise UsageError(f"unknown generator {kind!r}")
        if couplings is not None:
            g = g.with_couplings(_parse_couplings(couplings))
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot build graph from {src!r}: {exc}") from None
    return g


def _partition(spec: str, g: gc.Graph) -> gc.Bipartition:
    try:
        return gc.parse_partition(spec, g)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_graph(args) -> int:
    couplings = _parse_couplings(args.couplings) if args.couplings else args.coupling
    try:
        if args.gen == "chain":
            g = gc.linear_chain(args.n, couplings)
        elif args.gen == "lattice":
            g = gc.square_lattice(args.rows, args.cols, couplings)
        else:
            g = gc.star_graph(args.leaves, couplings)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(json.dumps(g.to_dict(), indent=1) + "\n", args.output)
    return EXIT_OK


def cmd_sweep(args) -> int:
    g = load_graph_source(args.graph, args.couplings)
    p = _partition(args.partition, g)
    temps = parse_temps(args.temps)
    reduce = not args.no_reduce
    curve = ent.negativity_sweep(g, p, temps, jobs=args.jobs, reduce=reduce, max_qubits=args.max_qubits)
    rp = gc.boundary_reduce(g, p)
    meta = {
        "graph_sha256": g.digest(),
        "n": g.n,
        "partition": p.describe(),
        "reduction": reduce,
        "computed_qubits": rp.n if reduce else g.n,
        "zero_threshold": ent.ZERO_THRESHOLD,
        "temps": args.temps,
        "max_qubits": args.max_qubits,
    }
    if args.format == "json":
        body = json.dumps({"metadata": meta, "temperatures": list(curve.temperatures),
                           "negativity": list(curve.values)}, indent=1) + "\n"
    else:
        rows = ["T,negativity"] + [f"{_fmt(t)},{_fmt(v)}" for t, v in zip(curve.temperatures, curve.values)]
        body = "\n".join(rows) + "\n"
    _emit(body, args.output)
    if args.output and args.format == "csv":
        Path(args.output + ".meta.json").write_text(json.dumps(meta, indent=1) + "\n")
    return EXIT_OK


def cmd_tc(args) -> int:
    modes = [args.equal is not None, args.pair is not None, args.graph is not None]
    if sum(modes) != 1:
        raise UsageError("select exactly one of --equal, --pair or --graph/--partition")
    if args.equal is not None:
        if not args.equal > 0:
            raise UsageError("--equal needs a positive coupling")
        result = ent.critical_temperature_equal(args.equal)
    elif args.pair is not None:
        if min(args.pair) <= 0:
            raise UsageError("--pair needs positive couplings")
        result = ent.critical_temperature_pair(*args.pair, rtol=args.tol or ent.DEFAULT_PAIR_RTOL)
    else:
        if args.partition is None:
            raise UsageError("--graph needs --partition")
        g = load_graph_source(args.graph, args.couplings)
        p = _partition(args.partition, g)
        result = ent.critical_temperature_numeric(
            g, p, t_max=args.t_max, grid_points=args.grid_points, tol=args.tol or ent.DEFAULT_T_TOL,
            max_qubits=args.max_qubits, reduce=not args.no_reduce)
    _emit(json.dumps(result.to_dict(), indent=1) + "\n", args.output)
    return EXIT_OK


def _probes(specs: list[str] | None, g: gc.Graph, family) -> list[gc.Bipartition]:
    if not specs or specs == ["all"]:
        return family(g)
    return [_partition(s, g) for s in specs]


def cmd_window(args) -> int:
    g = load_graph_source(args.graph, args.couplings)
    cuts = _probes(args.cuts, g, gc.all_contiguous_cuts)
    sites = _probes(args.sites, g, gc.interior_sites)
    if not cuts or not sites:
        raise UsageError("window needs non-empty cut and site probes")
    kw = {"grid_points": args.grid_points}
    if args.tol:
        kw["tol"] = args.tol
    report = ent.bound_entanglement_window(g, cuts, sites, max_qubits=args.max_qubits, jobs=args.jobs, **kw)
    _emit(json.dumps(report.to_dict(), indent=1) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = load_graph_source(args.graph, args.couplings)
    if g.n > VERIFY_MAX_QUBITS:
        raise CapExceededError(f"verify is limited to {VERIFY_MAX_QUBITS} qubits, graph has {g.n}")
    if args.randomize_couplings:
        rng = np.random.default_rng(args.seed)
        g = g.with_couplings([float(b) for b in rng.uniform(0.1, 3.0, g.n)])
    tol = args.tol or 1e-10
    reports = [equivalence_check(g, T, tol) for T in parse_temps(args.temps)]
    if args.format == "json":
        body = json.dumps({"couplings": list(g.couplings), "tol": tol,
                           "results": [{"T": r.temperature, "trace_distance": r.trace_distance,
                                        "pass": r.passed} for r in reports]}, indent=1) + "\n"
    else:
        rows = ["T,trace_distance,pass"] + [f"{_fmt(r.temperature)},{_fmt(r.trace_distance)},{str(r.passed).lower()}"
                                            for r in reports]
        body = "\n".join(rows) + "\n"
    _emit(body, args.output)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="output file (default stdout)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--tol", type=float, help="solver or verification tolerance")
    common.add_argument("--max-qubits", type=int, default=DEFAULT_MAX_QUBITS,
                        help=f"dense cap for computed systems (hard limit {HARD_MAX_QUBITS})")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--no-reduce", action="store_true", help="diagonalize the full state")
    common.add_argument("--couplings", help="override couplings: one value or a comma list")

    parser = _Parser(prog="thermograph", description="Thermal graph-state entanglement tools.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("graph", parents=[common], help="write a generated graph as JSON")
    p.add_argument("gen", choices=["chain", "lattice", "star"])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--rows", type=int, default=2)
    p.add_argument("--cols", type=int, default=2)
    p.add_argument("--leaves", type=int, default=4)
    p.add_argument("--coupling", type=float, default=1.0)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("sweep", parents=[common], help="negativity versus temperature")
    p.add_argument("--graph", required=True, help="graph JSON path or chain:<n> / lattice:<r>x<c> / star:<k>")
    p.add_argument("--partition", required=True, help="cut:<i> | site:<i> | even-odd | set:<i,j,...>")
    p.add_argument("--temps", default="0.05:3.0:60", help="start:stop:steps or comma list")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("tc", parents=[common], help="critical temperature")
    p.add_argument("--equal", type=float, metavar="B")
    p.add_argument("--pair", type=float, nargs=2, metavar=("B_I", "B_J"))
    p.add_argument("--graph")
    p.add_argument("--partition")
    p.add_argument("--t-max", type=float)
    p.add_argument("--grid-points", type=int, default=ent.DEFAULT_GRID_POINTS)
    p.set_defaults(func=cmd_tc)

    p = sub.add_parser("window", parents=[common], help="bound-entanglement temperature window")
    p.add_argument("--graph", required=True)
    p.add_argument("--cuts", action="append", help="'all' or a partition spec; repeatable")
    p.add_argument("--sites", action="append", help="'all' or a partition spec; repeatable")
    p.add_argument("--grid-points", type=int, default=ent.DEFAULT_GRID_POINTS)
    p.set_defaults(func=cmd_window)

    p = sub.add_parser("verify", parents=[common], help="thermal vs dephased equivalence check")
    p.add_argument("--graph", required=True)
    p.add_argument("--temps", default="0.5,1,2")
    p.add_argument("--randomize-couplings", action="store_true",
                   help="draw couplings uniformly from (0.1, 3) using --seed")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits for --help (0) and for usage errors (via _Parser.error)
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.max_qubits > HARD_MAX_QUBITS or args.max_qubits < 1:
        print(f"error: --max-qubits must be within [1, {HARD_MAX_QUBITS}]", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if args.tol is not None and not args.tol > 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except ValueError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
