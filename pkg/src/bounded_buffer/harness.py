"""Batch evaluation against the oracle and the lower-bound sweep."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from . import __version__
from .generators import expected_ratio, lower_bound_opt_total, lower_bound_trace
from .model import ScheduleOutcome, SemanticsMode, Trace
from .offline import DEFAULT_ORACLE_LIMIT, brute_force_opt, paper_greedy_offline
from .online import SCHEDULERS, run_online
from .traceio import trace_digest

OFFLINE_ALGOS = ("offline-greedy", "oracle")
ALGORITHMS = tuple(SCHEDULERS) + OFFLINE_ALGOS


class DominanceError(AssertionError):
    pass


def run_algorithm(name: str, trace: Trace, mode: SemanticsMode | str,
                  oracle_limit: int = DEFAULT_ORACLE_LIMIT) -> ScheduleOutcome:
    name = name.replace("_", "-")
    if name == "offline-greedy":
        return paper_greedy_offline(trace, mode).outcome
    if name == "oracle":
        return brute_force_opt(trace, mode, limit=oracle_limit).outcome
    return run_online(name, trace, mode)


def competitive_ratio(opt_total: int, alg_total: int) -> Fraction | None:
    """``opt / alg``; 0/0 counts as 1 and ``None`` stands for an infinite ratio."""
    if alg_total == 0:
        return Fraction(1) if opt_total == 0 else None
    return Fraction(opt_total, alg_total)


def format_ratio(ratio: Fraction | None) -> str:
    if ratio is None:
        return "inf"
    return f"{ratio.numerator}/{ratio.denominator}"


def decimal_ratio(ratio: Fraction | None, digits: int = 9) -> str:
    if ratio is None:
        return "inf"
    with localcontext() as ctx:
        ctx.prec = 60
        value = Decimal(ratio.numerator) / Decimal(ratio.denominator)
        return str(value.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN))


@dataclass(frozen=True)
class AlgorithmResult:
    name: str
    total_micro: int
    sends: int
    drops: int
    ratio: Fraction | None = None  # oracle / algorithm; unset without an oracle

    def to_json(self, with_ratio: bool) -> dict:
        out = {"name": self.name, "total_micro": self.total_micro,
               "sends": self.sends, "drops": self.drops}
        if with_ratio:
            out["ratio"] = format_ratio(self.ratio)
            out["ratio_decimal"] = decimal_ratio(self.ratio)
        return out


@dataclass(frozen=True)
class EvalReport:
    trace_id: str
    seed: int | None
    buffer: int
    packets: int
    mode: SemanticsMode
    oracle_total_micro: int | None
    results: tuple[AlgorithmResult, ...] = field(default=())
    version: str = __version__

    def result(self, name: str) -> AlgorithmResult:
        return next(r for r in self.results if r.name == name)

    def to_json(self) -> dict:
        with_ratio = self.oracle_total_micro is not None
        return {
            "version": self.version,
            "trace": {"id": self.trace_id, "seed": self.seed,
                      "buffer": self.buffer, "packets": self.packets},
            "mode": self.mode.value,
            "oracle_total_micro": self.oracle_total_micro,
            "algorithms": [r.to_json(with_ratio) for r in self.results],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def evaluate(trace: Trace, algorithms: Sequence[str],
             mode: SemanticsMode | str = SemanticsMode.PER_ARRIVAL, *,
             use_oracle: bool = True, oracle_limit: int = DEFAULT_ORACLE_LIMIT,
             seed: int | None = None) -> EvalReport:
    """Run ``algorithms`` on ``trace`` and compare each with the oracle.

    Raises ``InstanceTooLarge`` when the oracle cannot be run, and
    ``DominanceError`` if any algorithm beats the oracle.
    """
    mode = SemanticsMode.parse(mode)
    opt = brute_force_opt(trace, mode, limit=oracle_limit).total_micro if use_oracle else None
    results = []
    for name in algorithms:
        outcome = run_algorithm(name, trace, mode, oracle_limit)
        total = outcome.total_micro
        if opt is not None and total > opt:
            raise DominanceError(f"{name} total {total} exceeds oracle {opt}")
        results.append(AlgorithmResult(
            name=name.replace("_", "-"),
            total_micro=total,
            sends=len(outcome.sends),
            drops=len(trace) - len(outcome.sends),
            ratio=None if opt is None else competitive_ratio(opt, total),
        ))
    return EvalReport(trace_digest(trace), seed, trace.capacity, len(trace), mode, opt,
                      tuple(results))


@dataclass(frozen=True)
class SweepRow:
    buffer: int
    grq_total: int
    oracle_total: int
    measured_ratio: Fraction
    expected_ratio: Fraction


SWEEP_HEADER = ("B", "grq_total", "oracle_total", "measured_ratio", "expected_ratio")


def sweep_lower_bound(b_min: int, b_max: int, eps_micro: int,
                      mode: SemanticsMode | str = SemanticsMode.PER_ARRIVAL,
                      oracle_limit: int = DEFAULT_ORACLE_LIMIT) -> list[SweepRow]:
    """GRQ against the optimum on the adversarial trace for each buffer size.

    The optimum comes from its closed form; where the trace is small enough
    the oracle is run as well and must agree.
    """
    mode = SemanticsMode.parse(mode)
    if b_min < 2 and b_min <= b_max:
        raise ValueError("sweep needs B >= 2")
    rows = []
    for b in range(b_min, b_max + 1):
        trace = lower_bound_trace(b, eps_micro)
        grq = run_online("grq", trace, mode).total_micro
        opt = lower_bound_opt_total(b, eps_micro, mode)
        if len(trace) <= oracle_limit:
            found = brute_force_opt(trace, mode, limit=oracle_limit).total_micro
            if found != opt:
                raise AssertionError(f"B={b}: oracle {found} != closed form {opt}")
        rows.append(SweepRow(b, grq, opt, Fraction(opt, grq), expected_ratio(b, eps_micro)))
    return rows


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for r in rows:
        writer.writerow([r.buffer, r.grq_total, r.oracle_total,
                         format_ratio(r.measured_ratio), format_ratio(r.expected_ratio)])
    return buf.getvalue()
