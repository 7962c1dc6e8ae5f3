"""Command line front end.

Subcommands: generate, run, exact, validate, bounds, compare.  Metrics
are exact rationals; human output shows p/q plus a 4-place decimal,
CSV carries only p/q so exactness survives pipelines.

Exit codes: 0 success, 2 bad arguments, 3 malformed file, 4 schedule
violation, 5 scheduler horizon exceeded, 6 oracle gave up within its
node budget, 1 anything else.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from .bounds import blocking_forest, gathering_lower_bound, greedy_completion_bound
from .exact import DEFAULT_BUDGET, solve_exact
from .fileio import (instance_to_text, load_instance, load_schedule,
                     save_instance, save_schedule, schedule_to_text)
from .generators import (four_layer_instance, grid, line, random_graph, star,
                         trap_instance)
from .model import (FormatError, HorizonError, ScheduleError,
                    validate_schedule)
from .schedulers import approach_greedy, fifo, sigma_fifo, speed_for_optimality

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FORMAT = 3
EXIT_SCHEDULE = 4
EXIT_HORIZON = 5
EXIT_UNKNOWN = 6

TOPOLOGIES = ("line", "star", "grid", "random", "relay", "trap")
ALGOS = ("fifo", "pg-r", "sigma-fifo")


def _fmt(value) -> str:
    f = Fraction(value)
    return f"{f} ({float(f):.4f})"


def _oracle_budget(args):
    if args.budget is not None:
        return args.budget
    env = os.environ.get("WGP_NODE_BUDGET")
    if env is not None:
        try:
            budget = int(env)
        except ValueError:
            raise ValueError(f"WGP_NODE_BUDGET must be an integer, got {env!r}")
        if budget <= 0:
            raise ValueError("WGP_NODE_BUDGET must be positive")
        return budget
    return DEFAULT_BUDGET


def _emit(text, output):
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def cmd_generate(args) -> int:
    kind = args.topology
    packet_keys = dict(packets=args.packets, origins=args.origins,
                       release=args.release, seed=args.seed)
    if kind in ("relay", "trap"):
        for key, val in packet_keys.items():
            if val is not None:
                raise ValueError(f"--{key} does not apply to the {kind} topology")
        if args.d_i is not None:
            raise ValueError(f"the {kind} construction fixes the interference distance at 1")
    d_i = 1 if args.d_i is None else args.d_i

    if kind == "line":
        if args.nodes is None:
            raise ValueError("line needs --nodes")
        inst = line(args.nodes, d_i=d_i, **_packet_args(packet_keys, packets=1))
    elif kind == "star":
        if args.leaves is None:
            raise ValueError("star needs --leaves")
        inst = star(args.leaves, d_i=d_i, **_packet_args(packet_keys, packets=None))
    elif kind == "grid":
        if args.rows is None or args.cols is None:
            raise ValueError("grid needs --rows and --cols")
        inst = grid(args.rows, args.cols, d_i=d_i, **_packet_args(packet_keys, packets=1))
    elif kind == "random":
        if args.nodes is None or args.prob is None:
            raise ValueError("random needs --nodes and --prob")
        if args.seed is None:
            raise ValueError("random needs --seed")
        inst = random_graph(args.nodes, args.prob, args.seed, d_i=d_i,
                            **_packet_args(packet_keys, packets=1, origins="uniform",
                                           drop_seed=True))
    elif kind == "relay":
        if args.lanes is None or args.phases is None:
            raise ValueError("relay needs --lanes and --phases")
        inst = four_layer_instance(args.lanes, args.phases)
    else:
        if args.phases is None:
            raise ValueError("trap needs --phases")
        inst = trap_instance(args.phases)

    _emit(instance_to_text(inst), args.output)
    net = inst.network
    print(f"nodes={net.node_count} packets={inst.packet_count} "
          f"d_I={net.d_I} contention={_fmt(net.contention_ratio)}", file=sys.stderr)
    return EXIT_OK


def _packet_args(keys, packets, origins="spread", drop_seed=False):
    out = {}
    out["packets"] = keys["packets"] if keys["packets"] is not None else packets
    out["origins"] = keys["origins"] if keys["origins"] is not None else origins
    out["release"] = keys["release"] if keys["release"] is not None else "zero"
    if not drop_seed:
        out["seed"] = keys["seed"]
    if out["packets"] is None:
        del out["packets"]
    return out


def _run_algo(instance, algo, sigma, horizon):
    if algo == "fifo":
        return fifo(instance, horizon=horizon).schedule
    if algo == "pg-r":
        return approach_greedy(instance, horizon=horizon).schedule
    if sigma is None:
        sigma = speed_for_optimality(instance.network)
    return sigma_fifo(instance, sigma, horizon=horizon)


def cmd_run(args) -> int:
    if args.sigma is not None and args.algo != "sigma-fifo":
        raise ValueError("--sigma only applies to --algo sigma-fifo")
    if args.sigma is not None and args.sigma < 1:
        raise ValueError("--sigma must be at least 1")
    inst = load_instance(args.instance)
    schedule = _run_algo(inst, args.algo, args.sigma, args.horizon)
    metrics = validate_schedule(inst, schedule)
    if args.output is not None:
        save_schedule(schedule, args.output)
    print(f"max_completion {_fmt(metrics.max_completion)}")
    print(f"max_flow {_fmt(metrics.max_flow)}")
    if args.verbose:
        print("packet origin release completion flow")
        for j in range(inst.packet_count):
            p = inst.packets[j]
            print(f"{j} {p.origin} {p.release} "
                  f"{metrics.completion[j]} {metrics.flow[j]}")
    return EXIT_OK


def cmd_exact(args) -> int:
    inst = load_instance(args.instance)
    result = solve_exact(inst, objective=args.objective, budget=_oracle_budget(args),
                         size_guard=not args.no_size_guard)
    if result.status != "optimal":
        print("unknown")
        print(f"gave up after {result.nodes} search nodes", file=sys.stderr)
        return EXIT_UNKNOWN
    print(result.value)
    print(f"searched {result.nodes} nodes", file=sys.stderr)
    if args.output is not None:
        save_schedule(result.schedule, args.output)
    return EXIT_OK


def cmd_validate(args) -> int:
    inst = load_instance(args.instance)
    schedule = load_schedule(args.schedule)
    metrics = validate_schedule(inst, schedule)
    print(f"max_completion {_fmt(metrics.max_completion)}")
    print(f"max_flow {_fmt(metrics.max_flow)}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    inst = load_instance(args.instance)
    run = fifo(inst)
    metrics = validate_schedule(inst, run.schedule)
    forest = blocking_forest(inst, run)
    print("packet,completion,upper_bound,slack")
    for j in range(inst.packet_count):
        ub = greedy_completion_bound(inst, forest, j)
        c = metrics.completion[j]
        print(f"{j},{c},{ub},{ub - c}")
    best = max(gathering_lower_bound(inst, tree) for tree in forest.trees())
    print(f"certified lower bound: {_fmt(best)}", file=sys.stderr)
    return EXIT_OK


def cmd_compare(args) -> int:
    directory = Path(args.corpus)
    if not directory.is_dir():
        raise ValueError(f"{args.corpus} is not a directory")
    paths = sorted(directory.glob("*.json"))
    if not paths:
        raise ValueError(f"no *.json instance files in {args.corpus}")
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGOS:
            raise ValueError(f"unknown algorithm {a!r}")
    budget = _oracle_budget(args)

    lines = ["instance,algo,sigma,max_completion,max_flow,opt,ratio"]
    any_unknown = False
    for path in paths:
        inst = load_instance(path)
        result = solve_exact(inst, objective=args.objective, budget=budget,
                             size_guard=not args.no_size_guard)
        if result.status == "optimal":
            opt = str(result.value)
        else:
            opt = "unknown"
            any_unknown = True
        for algo in algos:
            if algo == "sigma-fifo":
                sigma = (args.sigma if args.sigma is not None
                         else speed_for_optimality(inst.network))
                schedule = _run_algo(inst, algo, sigma, None)
            else:
                sigma = 1
                schedule = _run_algo(inst, algo, None, None)
            metrics = validate_schedule(inst, schedule)
            value = (metrics.max_completion if args.objective == "completion"
                     else metrics.max_flow)
            if opt == "unknown" or result.value == 0:
                ratio = ""
            else:
                ratio = str(value / result.value)
            lines.append(f"{path.name},{algo},{sigma},"
                         f"{metrics.max_completion},{metrics.max_flow},{opt},{ratio}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_UNKNOWN if any_unknown else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wgather",
        description="Round-based gathering under distance-d_I interference: "
                    "generators, greedy schedulers, bounds and an exact solver.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write an instance file")
    g.add_argument("--topology", choices=TOPOLOGIES, required=True)
    g.add_argument("--nodes", type=int, help="node count (line, random)")
    g.add_argument("--leaves", type=int, help="leaf count (star)")
    g.add_argument("--rows", type=int, help="grid rows")
    g.add_argument("--cols", type=int, help="grid columns")
    g.add_argument("--prob", type=float, help="edge probability (random)")
    g.add_argument("--lanes", type=int, help="parallel relay lanes (relay)")
    g.add_argument("--phases", type=int, help="release phases (relay, trap)")
    g.add_argument("--d-i", dest="d_i", type=int, help="interference distance, default 1")
    g.add_argument("--packets", type=int, help="packet count")
    g.add_argument("--origins", help="spread | uniform | uniform-nonsink | fixed:<node>")
    g.add_argument("--release", help="zero | uniform:<hi> | spaced:<gap>")
    g.add_argument("--seed", type=int, help="seed for any randomized choice")
    g.add_argument("-o", "--output", help="instance file (default: standard output)")
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("run", help="run a scheduler and print its metrics")
    r.add_argument("instance")
    r.add_argument("--algo", choices=ALGOS, default="fifo")
    r.add_argument("--sigma", type=int,
                   help="speed for sigma-fifo (default: smallest provably optimal speed)")
    r.add_argument("--horizon", type=int, help="override the round cap")
    r.add_argument("--verbose", action="store_true", help="per-packet table")
    r.add_argument("-o", "--output", help="write the schedule trace here")
    r.set_defaults(func=cmd_run)

    e = sub.add_parser("exact", help="optimal objective value via exhaustive search")
    e.add_argument("instance")
    e.add_argument("--objective", choices=("completion", "flow"), default="completion")
    e.add_argument("--budget", type=int,
                   help="search node budget (default: WGP_NODE_BUDGET or built-in)")
    e.add_argument("--no-size-guard", action="store_true",
                   help="allow instances beyond the default size guard")
    e.add_argument("-o", "--output", help="write the optimal schedule here")
    e.set_defaults(func=cmd_exact)

    v = sub.add_parser("validate", help="replay a schedule against an instance")
    v.add_argument("instance")
    v.add_argument("schedule")
    v.set_defaults(func=cmd_validate)

    b = sub.add_parser("bounds", help="per-packet completion bounds for a fifo run")
    b.add_argument("instance")
    b.set_defaults(func=cmd_bounds)

    c = sub.add_parser("compare", help="CSV of schedulers vs the exact optimum")
    c.add_argument("corpus", help="directory of *.json instances")
    c.add_argument("--algos", default="fifo",
                   help="comma-separated subset of fifo,pg-r,sigma-fifo")
    c.add_argument("--sigma", type=int, help="speed for sigma-fifo rows")
    c.add_argument("--objective", choices=("completion", "flow"), default="completion")
    c.add_argument("--budget", type=int)
    c.add_argument("--no-size-guard", action="store_true")
    c.add_argument("-o", "--output", help="CSV file (default: standard output)")
    c.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except ScheduleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEDULE
    except HorizonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HORIZON
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run_main()
