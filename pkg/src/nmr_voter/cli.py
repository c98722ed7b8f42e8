"""Command-line entry point: generate, run, check, enumerate, mutate, soak, serve."""

import argparse
import json
import logging
import sys
from collections.abc import Sequence

from .config import VoterConfig, validate_config
from .errors import InitError, VoterError
from .feeds.files import dump_scenario, dump_trace, load_trace, read_scenario
from .models.domain import SignalHealth
from .models.scenario import FaultProfile
from .models.verdict import Verdict
from .oracle import MUTATIONS, check_trace, enumerate_and_check, mutate, soak
from .oracle.exhaustive import DEFAULT_BUDGET
from .sim import format_summary, generate_scenario, run, summarize

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INIT = 3


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _health_list(text: str) -> list[SignalHealth]:
    try:
        return [SignalHealth(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected good and/or bad, got {text!r}") from None


def _config_flags(parser: argparse.ArgumentParser, **defaults: int) -> None:
    parser.add_argument("--units", type=int, default=defaults.get("units", 4))
    parser.add_argument("--delta", type=int, default=defaults.get("delta", 10))
    parser.add_argument("--persistence", type=int, default=defaults.get("persistence", 3))
    parser.add_argument("--max-simul-fault", type=int, default=1)
    parser.add_argument("--min-required", type=int, default=None)


def _config_from(args: argparse.Namespace) -> VoterConfig:
    return validate_config(
        {
            "num_units": args.units,
            "delta": args.delta,
            "persistence_lmt": args.persistence,
            "max_simul_fault": args.max_simul_fault,
            "min_required": args.min_required,
        }
    )


def _print_verdict(verdict: Verdict, as_json: bool) -> None:
    if as_json:
        print(verdict.model_dump_json(by_alias=True, indent=2))
        return
    print("PASS" if verdict.passed else f"FAIL ({len(verdict.findings)} findings)")
    for f in verdict.findings:
        where = "-" if f.cycle is None else f.cycle
        unit = "" if f.uid is None else f" unit {f.uid}"
        print(f"  cycle {where} {f.check}{unit}: {f.detail}")
    if verdict.notes:
        print(f"  {len(verdict.notes)} notes")


def cmd_generate(args: argparse.Namespace) -> int:
    config = _config_from(args)
    profile = FaultProfile(
        fault_rate=args.fault_rate,
        permanent_targets=tuple(args.permanent),
        horizon=args.cycles,
        max_increment=args.max_increment,
        violate_hypothesis=args.violate_hypothesis,
    )
    scenario = generate_scenario(config, args.seed, profile)
    if args.out:
        dump_scenario(scenario, args.out)
    else:
        print(scenario.model_dump_json(indent=2))
    return EXIT_PASS


def cmd_run(args: argparse.Namespace) -> int:
    scenario = read_scenario(args.scenario)
    trace = run(scenario)
    if args.trace:
        dump_trace(trace, args.trace)
    summary = summarize(trace)
    print(json.dumps(summary) if args.json else format_summary(summary))
    return EXIT_PASS


def cmd_check(args: argparse.Namespace) -> int:
    scenario = read_scenario(args.scenario)
    trace = load_trace(args.trace)
    verdict = check_trace(trace, scenario)
    _print_verdict(verdict, args.json)
    return EXIT_PASS if verdict.passed else EXIT_FAIL


def cmd_enumerate(args: argparse.Namespace) -> int:
    config = _config_from(args)
    report = enumerate_and_check(config, args.values, args.healths, args.horizon, args.budget)
    if args.json:
        print(report.model_dump_json(by_alias=True, indent=2))
    else:
        print(
            f"traces={report.traces} init_rejected={report.init_rejected} "
            f"states={report.states_visited} transitions={report.transitions} "
            f"conditioned_checked={report.conditioned_checked} "
            f"conditioned_skipped={report.conditioned_skipped}"
        )
        _print_verdict(report.verdict, False)
    return EXIT_PASS if report.verdict.passed else EXIT_FAIL


def cmd_mutate(args: argparse.Namespace) -> int:
    config = read_scenario(args.scenario).config
    mutated = mutate(load_trace(args.trace), args.kind, config)
    dump_trace(mutated, args.out)
    return EXIT_PASS


def cmd_soak(args: argparse.Namespace) -> int:
    report = soak(args.count, args.seed, args.horizon)
    if args.json:
        print(report.model_dump_json(by_alias=True, indent=2))
    else:
        print(
            f"scenarios={report.scenarios} cycles={report.cycles} switches={report.switches} "
            f"min_switch_gap_margin={report.min_switch_gap_margin} "
            f"min_age_margin={report.min_age_margin}"
        )
        _print_verdict(report.verdict, False)
    return EXIT_PASS if report.verdict.passed else EXIT_FAIL


def cmd_serve(args: argparse.Namespace) -> int:
    from .server import main as serve

    serve()
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")

    parser = argparse.ArgumentParser(prog="nmr-voter", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", parents=[common], help="write a seeded scenario")
    _config_flags(gen)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--cycles", type=int, default=50)
    gen.add_argument("--fault-rate", type=float, default=0.0)
    gen.add_argument("--permanent", type=_int_list, default=[], help="e.g. 3 or 1,3")
    gen.add_argument("--max-increment", type=int, default=None)
    gen.add_argument("--violate-hypothesis", action="store_true")
    gen.add_argument("--out", help="scenario file (stdout if omitted)")
    gen.set_defaults(handler=cmd_generate)

    run_p = sub.add_parser("run", parents=[common], help="run the voter over a scenario")
    run_p.add_argument("scenario", help="scenario path or http(s) URL")
    run_p.add_argument("--trace", help="write the JSON Lines trace here")
    run_p.set_defaults(handler=cmd_run)

    check = sub.add_parser("check", parents=[common], help="check a trace against its scenario")
    check.add_argument("scenario")
    check.add_argument("trace")
    check.set_defaults(handler=cmd_check)

    enum = sub.add_parser("enumerate", parents=[common], help="exhaustively check a small instance")
    _config_flags(enum, persistence=2)
    enum.add_argument("--values", type=_int_list, default=[0, 15, 40])
    enum.add_argument("--healths", type=_health_list, default=[SignalHealth.GOOD])
    enum.add_argument("--horizon", type=int, default=3)
    enum.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    enum.set_defaults(handler=cmd_enumerate)

    mut = sub.add_parser("mutate", parents=[common], help="break a trace on purpose")
    mut.add_argument("trace")
    mut.add_argument("--scenario", required=True, help="scenario the trace came from")
    mut.add_argument("--kind", required=True, choices=sorted(MUTATIONS))
    mut.add_argument("--out", required=True)
    mut.set_defaults(handler=cmd_mutate)

    soak_p = sub.add_parser("soak", parents=[common], help="check many random scenarios")
    soak_p.add_argument("--count", type=int, default=10_000)
    soak_p.add_argument("--seed", type=int, default=0)
    soak_p.add_argument("--horizon", type=int, default=100)
    soak_p.set_defaults(handler=cmd_soak)

    serve = sub.add_parser("serve", parents=[common], help="start the MCP server")
    serve.set_defaults(handler=cmd_serve)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except InitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INIT
    except (VoterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
