"""Command-line entry point.

Exit codes: 0 success, 1 verification suite failure, 2 invalid input,
3 resource cap exceeded.  Results go to stdout as one JSON document;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import assignment, forest
from .errors import ResourceCapError, ValidationError
from .graph import BipartiteRateGraph, CompleteRateGraph
from .instance import Instance, load_instance
from .numerics import format_rational
from .oracles import SimulationConfig, lattice_dp, monte_carlo
from .oracles.lattice import MAX_EDGES, evaluate_forest_length
from .oracles.stop import components_at_most, matching_at_least
from .verify import SUITES, run_suite

log = logging.getLogger("graphexp")

# Apery's constant, the unit-rate MST limit
ZETA3 = 1.2020569031595942


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", metavar="FILE", help="JSON instance file")
    p.add_argument("--unit", action="store_true", help="all rates equal to 1")
    p.add_argument("--n", type=int, help="vertex count (complete) or column count (bipartite)")
    p.add_argument("--m", type=int, help="row count; selects a bipartite board with --unit")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--threads", type=int, default=1, help="parallel workers where supported")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphexp", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_ in [
        ("forest-time", "expected time until k components remain"),
        ("forest-length", "expected minimal spanning k-forest length"),
    ]:
        p = sub.add_parser(name, help=help_)
        _add_instance_args(p)
        p.add_argument("--k", type=int, default=1)
        p.add_argument("--cap", type=int, default=forest.DEFAULT_CAP, help="max vertex count")

    p = sub.add_parser("assignment-time", help="expected time to the first k-assignment")
    _add_instance_args(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, default=assignment.DEFAULT_CAP, help="max board side")

    p = sub.add_parser("assignment-length2", help="expected minimal 2-assignment length")
    _add_instance_args(p)
    p.add_argument("--which", choices=("v1", "v2", "both"), default="both")

    p = sub.add_parser("oracle", help="exact expectation by lattice dynamic programming")
    _add_instance_args(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--statistic", choices=("time", "length"), default="time")
    p.add_argument("--cap", type=int, default=MAX_EDGES, help="max edge count")

    p = sub.add_parser("simulate", help="seeded Monte Carlo estimate")
    _add_instance_args(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--statistic", choices=("time", "length"), default="time")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify", help="run a named property suite")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("zeta-table", help="unit-rate spanning tree lengths next to zeta(3)")
    p.add_argument("--cap", type=int, default=10, help="largest n")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    return parser


def _instance(args) -> Instance:
    if args.input:
        if args.unit:
            raise ValidationError("--input and --unit are mutually exclusive")
        return load_instance(args.input)
    if not args.unit:
        raise ValidationError("give either --input FILE or --unit --n N [--m M]")
    if args.n is None:
        raise ValidationError("--unit needs --n")
    if args.m is not None:
        return Instance(BipartiteRateGraph.unit(args.m, args.n), unit=True)
    return Instance(CompleteRateGraph.unit(args.n), unit=True)


def _require(inst: Instance, kind: str, command: str):
    if inst.kind != kind:
        raise ValidationError(f"{command} needs a {kind} instance, got {inst.kind}")
    return inst.graph


def _graph_info(inst: Instance) -> dict:
    g = inst.graph
    if inst.kind == "complete":
        return {"type": "complete", "n": g.n, "unit": inst.unit}
    return {"type": "bipartite", "m": g.m, "n": g.n, "unit": inst.unit}


def _value_fields(value, mode: str) -> dict:
    if mode == "exact":
        return {"exact": format_rational(value), "float": float(value)}
    return {"exact": None, "float": float(value)}


def _result(statistic: str, k, value, term_count: int, mode: str, inst: Instance | None = None) -> dict:
    doc = {"statistic": statistic, "k": k, **_value_fields(value, mode), "term_count": term_count, "mode": mode}
    if inst is not None:
        doc["graph"] = _graph_info(inst)
    return doc


def cmd_forest(args) -> tuple[dict, int]:
    inst = _instance(args)
    g = _require(inst, "complete", args.command)
    statistic = "time" if args.command == "forest-time" else "length"
    if inst.unit and args.k == 1 and g.n >= 2:
        # integer-partition fast path
        ev = forest.unit_rate_sum(g.n, statistic, args.mode)
        doc = _result(args.command, args.k, ev.value, ev.term_count, args.mode, inst)
        doc["method"] = "unit-rate partition sum"
        return doc, 0
    ev = forest.evaluate_forest(g, args.k, statistic, args.mode, args.cap, args.threads)
    doc = _result(args.command, args.k, ev.value, ev.term_count, args.mode, inst)
    doc["method"] = "clique-cover sum"
    return doc, 0


def cmd_assignment_time(args) -> tuple[dict, int]:
    inst = _instance(args)
    g = _require(inst, "bipartite", args.command)
    ev = assignment.evaluate_assignment_time(g, args.k, args.mode, args.cap)
    return _result(args.command, args.k, ev.value, ev.term_count, args.mode, inst), 0


def cmd_assignment_length2(args) -> tuple[dict, int]:
    inst = _instance(args)
    g = _require(inst, "bipartite", args.command)
    variants = ["v1", "v2"] if args.which == "both" else [args.which]
    funcs = {
        "v1": assignment.expected_min_2assignment_length_v1,
        "v2": assignment.expected_min_2assignment_length_v2,
    }
    values = {name: funcs[name](g, args.mode) for name in variants}
    first = values[variants[0]]
    doc = _result(args.command, 2, first, g.num_edges, args.mode, inst)
    for name, v in values.items():
        doc[name] = _value_fields(v, args.mode)
    if args.which == "both" and args.mode == "exact" and values["v1"] != values["v2"]:
        log.warning("v1 and v2 disagree")
        doc["agree"] = False
    elif args.which == "both":
        doc["agree"] = True
    return doc, 0


def cmd_oracle(args) -> tuple[dict, int]:
    inst = _instance(args)
    g = inst.graph
    if inst.kind == "complete":
        if not 1 <= args.k <= g.n:
            raise ValidationError(f"need 1 <= k <= n, got k={args.k}")
        if args.statistic == "length":
            ev = evaluate_forest_length(g, args.k, args.mode, args.cap)
        else:
            stop = components_at_most(args.k)
            ev = lattice_dp(g, lambda a: stop.holds(g, a), None, args.mode, args.cap)
    else:
        if args.statistic == "length":
            raise ValidationError("the lattice oracle has no minimal assignment length")
        if not 1 <= args.k <= min(g.m, g.n):
            raise ValidationError(f"no {args.k}-assignment on a {g.m}x{g.n} board")
        stop = matching_at_least(args.k)
        ev = lattice_dp(g, lambda a: stop.holds(g, a), None, args.mode, args.cap)
    doc = _result(f"oracle-{args.statistic}", args.k, ev.value, ev.term_count, args.mode, inst)
    return doc, 0


def cmd_simulate(args) -> tuple[dict, int]:
    inst = _instance(args)
    config = SimulationConfig(args.trials, args.seed, args.statistic, args.k)
    res = monte_carlo(inst.graph, config, workers=args.threads)
    doc = {
        "statistic": f"simulate-{args.statistic}",
        "k": args.k,
        "mean": res.mean,
        "std_error": res.std_error,
        "trials": args.trials,
        "seed": args.seed,
        "mode": "float",
        "graph": _graph_info(inst),
    }
    return doc, 0


def cmd_verify(args) -> tuple[dict, int]:
    checks = run_suite(args.suite, args.seed)
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})", file=sys.stderr)
    passed = all(ok for _, ok, _ in checks)
    doc = {
        "suite": args.suite,
        "seed": args.seed,
        "passed": passed,
        "results": [{"name": n, "passed": ok, "detail": d} for n, ok, d in checks],
    }
    return doc, 0 if passed else 1


def cmd_zeta_table(args) -> tuple[dict, int]:
    rows = []
    for n in range(3, args.cap + 1):
        value = forest.unit_rate_length(n, args.mode)
        rows.append({"n": n, **_value_fields(value, args.mode)})
        print(f"n={n:3d}  E(L_n) = {float(value):.12f}", file=sys.stderr)
    print(f"zeta(3) = {ZETA3:.12f}", file=sys.stderr)
    return {"statistic": "zeta-table", "mode": args.mode, "zeta3": ZETA3, "rows": rows}, 0


COMMANDS = {
    "forest-time": cmd_forest,
    "forest-length": cmd_forest,
    "assignment-time": cmd_assignment_time,
    "assignment-length2": cmd_assignment_length2,
    "oracle": cmd_oracle,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "zeta-table": cmd_zeta_table,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        doc, code = COMMANDS[args.command](args)
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(doc, indent=2))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
