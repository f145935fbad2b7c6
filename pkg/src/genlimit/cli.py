"""``genlimit`` command line: run a scenario, sweep a template, or query the minimax oracle.

Exit status: 0 when every bound holds, 1 on a violation, 2 on a configuration error.
"""

from __future__ import annotations

import argparse
import sys

from .bounds import Scenario, parse_range, reports_csv, sweep, verify
from .config import ConfigError, build_class, load_json
from .game import GameError
from .oracle import SearchBudgetExceeded, minimax_oracle

EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG = 0, 1, 2


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _summarize(reports) -> int:
    bad = [(r, b) for r in reports for b in r.failures()]
    for r, b in bad:
        print(f"violated: {r.scenario} seed={r.seed} {b.name} ({b.kind} {b.value}); "
              f"mistakes={r.mistakes} last={r.last_mistake}", file=sys.stderr)
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_run(args) -> int:
    scenario = Scenario.from_dict(load_json(args.scenario))
    seeds = [args.seed] if args.seed is not None else list(scenario.seeds)
    reports = [verify(scenario, s) for s in seeds]
    _emit(reports_csv(reports), args.out)
    return _summarize(reports)


def cmd_sweep(args) -> int:
    template = load_json(args.template)
    ranges = dict(parse_range(r) for r in args.range)
    reports = sweep(template, ranges)
    _emit(reports_csv(reports), args.out)
    return _summarize(reports)


def cmd_oracle(args) -> int:
    cls = build_class(load_json(args.language_class))
    try:
        value = minimax_oracle(cls, args.depth)
    except ValueError as exc:
        raise ConfigError("depth", str(exc)) from None
    print(value)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="genlimit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="play one scenario and check its bounds")
    run.add_argument("--scenario", required=True)
    run.add_argument("--seed", type=int)
    run.add_argument("--out")
    run.set_defaults(func=cmd_run)

    sw = sub.add_parser("sweep", help="play a scenario template over parameter ranges")
    sw.add_argument("--template", required=True)
    sw.add_argument("--range", action="append", default=[], metavar="KEY=A..B")
    sw.add_argument("--out")
    sw.set_defaults(func=cmd_sweep)

    orc = sub.add_parser("oracle", help="exhaustive minimax mistakes for a small class")
    orc.add_argument("--class", dest="language_class", required=True)
    orc.add_argument("--depth", type=int, required=True)
    orc.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (GameError, SearchBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
