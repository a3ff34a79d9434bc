"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 invalid trace, 3 oracle size limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .generators import RandomTraceParams, lower_bound_trace, random_trace
from .harness import ALGORITHMS, evaluate, run_algorithm, sweep_csv, sweep_lower_bound
from .model import SemanticsMode, TraceValidationError
from .offline import DEFAULT_ORACLE_LIMIT, InstanceTooLarge
from .traceio import TraceFormatError, dumps_trace, read_trace

EXIT_OK, EXIT_USAGE, EXIT_TRACE, EXIT_ORACLE = 0, 1, 2, 3
MODES = ("per-arrival", "post-delivery")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_bytes(text.encode("utf-8"))


def cmd_gen_adversarial(args) -> int:
    try:
        trace = lower_bound_trace(args.buffer, args.eps_micro)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(dumps_trace(trace), args.out)
    return EXIT_OK


def cmd_gen_random(args) -> int:
    try:
        params = RandomTraceParams(args.n, args.buffer, args.horizon, args.value_max_micro,
                                   args.max_slack, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(dumps_trace(random_trace(params)), args.out)
    return EXIT_OK


def cmd_run(args) -> int:
    trace = read_trace(args.trace)
    outcome = run_algorithm(args.algo, trace, args.mode, args.oracle_limit)
    if args.json:
        doc = {
            "algorithm": args.algo,
            "mode": SemanticsMode.parse(args.mode).value,
            "total_micro": outcome.total_micro,
            "sends": [list(s) for s in outcome.sends],
            "drops": [[d.step, d.packet_id, d.reason.value] for d in outcome.drops],
        }
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"{args.algo} total_micro={outcome.total_micro} sends={len(outcome.sends)} "
                 f"drops={len(outcome.drops)}"]
        lines += [f"send step={t} id={pid}" for t, pid in outcome.sends]
        lines += [f"drop step={d.step} id={d.packet_id} reason={d.reason.value}"
                  for d in outcome.drops]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_eval(args) -> int:
    trace = read_trace(args.trace)
    report = evaluate(trace, args.algos, args.mode, use_oracle=not args.no_oracle,
                      oracle_limit=args.oracle_limit)
    _emit(report.dumps(), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        rows = sweep_lower_bound(args.b_min, args.b_max, args.eps_micro, args.mode,
                                 args.oracle_limit)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(sweep_csv(rows), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bounded-buffer",
                     description="Packet scheduling in a size-bounded buffer.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen-adversarial", help="write the lower-bound trace")
    p.add_argument("--buffer", type=int, required=True)
    p.add_argument("--eps-micro", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_adversarial)

    p = sub.add_parser("gen-random", help="write a seeded random trace")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--buffer", type=int, required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--value-max-micro", type=int, required=True)
    p.add_argument("--max-slack", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_random)

    def add_mode(p, default="per-arrival"):
        p.add_argument("--mode", choices=MODES, default=default)
        p.add_argument("--oracle-limit", type=int, default=DEFAULT_ORACLE_LIMIT)

    p = sub.add_parser("run", help="run one algorithm on a trace")
    p.add_argument("--algo", choices=ALGORITHMS, required=True)
    p.add_argument("--trace", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default="-")
    add_mode(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("eval", help="compare algorithms with the oracle")
    p.add_argument("--trace", required=True)
    p.add_argument("--algos", nargs="+", choices=ALGORITHMS[:-1], required=True)
    p.add_argument("--no-oracle", action="store_true")
    p.add_argument("--out", required=True)
    add_mode(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="GRQ vs optimum on adversarial traces, as CSV")
    p.add_argument("--b-min", type=int, required=True)
    p.add_argument("--b-max", type=int, required=True)
    p.add_argument("--eps-micro", type=int, required=True)
    p.add_argument("--out", required=True)
    add_mode(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"bounded-buffer: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TraceFormatError, TraceValidationError) as exc:
        print(f"bounded-buffer: invalid trace: {exc}", file=sys.stderr)
        return EXIT_TRACE
    except FileNotFoundError as exc:
        print(f"bounded-buffer: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InstanceTooLarge as exc:
        print(f"bounded-buffer: {exc}; use --no-oracle to report totals only", file=sys.stderr)
        return EXIT_ORACLE


if __name__ == "__main__":
    sys.exit(main())
