# -*- coding: utf-8 -*-
"""
Command line interface ``flocknav``.

Exit codes: ``0`` success, ``1`` validation or usage error, ``2`` I/O error,
``3`` more failed runs than ``--failure-budget`` allows.
"""

import argparse
import logging
import os
import sys

from flocknav.core import naming
from flocknav.core._compat import load_json
from flocknav.core.errors import MapParseError
from flocknav.core.map_generation import example_map, generate_grid_map
from flocknav.core.semantic_map import save_map, validate_map
from flocknav.io.plot import render_run, render_timing
from flocknav.io.results import get_store, write_results, write_run
from flocknav.sim.config import (
    CooperationMode,
    builtin_scenario_names,
    load_builtin_scenario,
    load_scenario,
    resolve_map,
    save_scenario,
)
from flocknav.sim.record import RunRecord, summary_frame
from flocknav.sim.scenario import compare_configurations, run_scenario

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2
EXIT_FAILURE_BUDGET = 3

BENCHMARK_MAP_FILE = "benchmark_map.json"
EXAMPLE_MAP_FILE = "example_map.json"


class UsageError(ValueError):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, "{}: error: {}\n".format(self.prog, message))


def _positive_int(value):
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("{!r} is not an integer".format(value))
    if number < 1:
        raise argparse.ArgumentTypeError("{} is not a positive integer".format(number))
    return number


def _non_negative_int(value):
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("{!r} is not an integer".format(value))
    if number < 0:
        raise argparse.ArgumentTypeError("{} is negative".format(number))
    return number


def _read_bytes(path):
    with open(path, "rb") as fd:
        return fd.read()


def _write_bytes(path, content):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "wb") as fd:
        fd.write(content)


def _parse_params(raw):
    if raw is None:
        return None
    try:
        params = load_json(raw)
    except ValueError as exc:
        raise UsageError("--params is not valid JSON: {}".format(exc))
    if not isinstance(params, dict):
        raise UsageError("--params must be a JSON object")
    return params


def _load_config(args, mode=None):
    overrides = {
        "mode": mode,
        "runs": args.runs,
        "seed": args.seed,
        "max_steps": args.max_steps,
        "route_set": args.route_set,
        "params": _parse_params(args.params),
    }
    scenario = args.scenario
    if scenario.startswith(naming.BUILTIN_PREFIX):
        name = scenario[len(naming.BUILTIN_PREFIX) :]
        if name not in builtin_scenario_names():
            raise UsageError(
                "Unknown builtin scenario {!r}, expected one of {}".format(
                    scenario, builtin_scenario_names()
                )
            )
        return load_builtin_scenario(name, **overrides)
    return load_scenario(
        _read_bytes(scenario),
        base_dir=os.path.dirname(os.path.abspath(scenario)),
        **overrides
    )


def _failed_runs(stats_by_mode):
    return sum(
        stats.n_runs - stats.n_success for stats in stats_by_mode.values()
    )


def _store_runs(store, config, stats_by_mode, prefixed, plots):
    for mode, stats in stats_by_mode.items():
        for record in stats.records:
            plot = render_run(record, config.semantic_map) if plots else None
            write_run(store, record, prefix=mode if prefixed else None, plot=plot)
    write_results(store, config.to_dict(), stats_by_mode, prefixed=prefixed)


def _report(args, stats_by_mode):
    print(summary_frame(list(stats_by_mode.values())).to_string())
    failed = _failed_runs(stats_by_mode)
    if args.failure_budget is not None and failed > args.failure_budget:
        LOGGER.error(
            "%s failed runs exceed the failure budget of %s", failed, args.failure_budget
        )
        return EXIT_FAILURE_BUDGET
    return EXIT_OK


def cmd_validate(args):
    """
    Report every structural violation of a map file.
    """
    violations = validate_map(_read_bytes(args.map))
    if not violations:
        print("{}: valid".format(args.map))
        return EXIT_OK
    for node_id, rule, message in violations:
        print("{}: {}: {}".format(node_id, rule, message), file=sys.stderr)
    print(
        "{}: {} violation(s)".format(args.map, len(violations)), file=sys.stderr
    )
    return EXIT_INVALID


def cmd_generate(args):
    """
    Write the benchmark grid map, the example map and the bundled scenarios.
    """
    store = get_store(args.out_dir)
    store.put(BENCHMARK_MAP_FILE, save_map(generate_grid_map()))
    store.put(EXAMPLE_MAP_FILE, save_map(example_map()))
    for name in builtin_scenario_names():
        config = load_builtin_scenario(name).copy(map_ref=BENCHMARK_MAP_FILE)
        store.put(name + naming.JSON_SUFFIX, save_scenario(config))
    LOGGER.info("Generated maps and scenarios in %s", args.out_dir)
    return EXIT_OK


def cmd_run(args):
    """
    Simulate a scenario in one cooperation mode and store the artifacts.
    """
    config = _load_config(args, mode=args.mode)
    stats = run_scenario(config, jobs=args.jobs)
    stats_by_mode = {config.mode.value: stats}
    _store_runs(get_store(args.out_dir), config, stats_by_mode, False, args.plots)
    return _report(args, stats_by_mode)


def cmd_compare(args):
    """
    Simulate a scenario in every requested cooperation mode.
    """
    config = _load_config(args)
    modes = [CooperationMode.parse(mode) for mode in args.modes]
    stats_by_mode = compare_configurations(config, jobs=args.jobs, modes=modes)
    _store_runs(get_store(args.out_dir), config, stats_by_mode, True, args.plots)
    return _report(args, stats_by_mode)


def cmd_plot(args):
    """
    Render a stored run record as SVG.
    """
    try:
        record = RunRecord.from_json(_read_bytes(args.record))
    except (KeyError, TypeError) as exc:
        raise MapParseError("Not a run record: {}".format(exc))
    if args.timing:
        svg = render_timing(record)
    else:
        map_ref = args.map or record.map_ref
        if map_ref is None:
            raise UsageError("The record names no map; pass --map")
        semantic_map, _ = resolve_map(map_ref)
        svg = render_run(record, semantic_map)
    _write_bytes(args.out, svg)
    return EXIT_OK


def _add_simulation_arguments(parser):
    parser.add_argument(
        "scenario", help="Scenario file or builtin:<name> of a bundled scenario"
    )
    parser.add_argument("--runs", type=_positive_int, help="Number of runs")
    parser.add_argument("--seed", type=int, help="Base seed of the runs")
    parser.add_argument("--max-steps", type=_positive_int, help="Step limit per run")
    parser.add_argument(
        "--route-set",
        type=_non_negative_int,
        help="Index of the route set to simulate (default: the scenario's)",
    )
    parser.add_argument("--params", help="JSON object of MPC parameter overrides")
    parser.add_argument(
        "--out-dir", default="results", help="Artifact directory (default: results)"
    )
    parser.add_argument(
        "--jobs",
        type=_positive_int,
        default=os.cpu_count() or 1,
        help="Worker processes (default: logical cores)",
    )
    parser.add_argument(
        "--failure-budget",
        type=_non_negative_int,
        help="Exit with 3 if more runs fail",
    )
    parser.add_argument(
        "--plots", action="store_true", help="Store an SVG plot for every run"
    )


def get_parser():
    parser = _ArgumentParser(
        prog="flocknav",
        description="Semantic-map configured multi-robot MPC simulations",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    subparsers = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)
    subparsers.required = True

    validate = subparsers.add_parser("validate", help="Validate a map file")
    validate.add_argument("map")
    validate.set_defaults(func=cmd_validate)

    generate = subparsers.add_parser(
        "generate", help="Write the benchmark map and scenarios"
    )
    generate.add_argument("out_dir")
    generate.set_defaults(func=cmd_generate)

    run = subparsers.add_parser("run", help="Simulate a scenario")
    _add_simulation_arguments(run)
    run.add_argument(
        "--mode",
        choices=[mode.value for mode in CooperationMode],
        help="Cooperation mode (default: the scenario's)",
    )
    run.set_defaults(func=cmd_run)

    compare = subparsers.add_parser(
        "compare", help="Simulate a scenario in several cooperation modes"
    )
    _add_simulation_arguments(compare)
    compare.add_argument(
        "--modes",
        nargs="+",
        choices=[mode.value for mode in CooperationMode],
        default=[mode.value for mode in CooperationMode],
    )
    compare.set_defaults(func=cmd_compare)

    plot = subparsers.add_parser("plot", help="Render a run record as SVG")
    plot.add_argument("record")
    plot.add_argument("out")
    plot.add_argument("--map", help="Map file or builtin:<name>")
    plot.add_argument(
        "--timing", action="store_true", help="Plot MPC and configuration times"
    )
    plot.set_defaults(func=cmd_plot)
    return parser


def main(argv=None):
    args = get_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except OSError as exc:
        print("error: {}".format(exc), file=sys.stderr)
        return EXIT_IO
    except (ValueError, RuntimeError) as exc:
        print("error: {}".format(exc), file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
