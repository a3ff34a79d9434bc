"""Offline solvers: the value-ordered greedy and an exact subset-search oracle."""

from __future__ import annotations

from dataclasses import dataclass

from .feasibility import edf_deliver, feasible_sorted
from .model import ScheduleOutcome, SemanticsMode, Trace

DEFAULT_ORACLE_LIMIT = 20


class InstanceTooLarge(ValueError):
    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(f"oracle size limit exceeded: {n} packets > {limit}")


@dataclass(frozen=True)
class OfflineResult:
    accepted: frozenset[int]
    outcome: ScheduleOutcome
    solver: str  # "paper_greedy" or "oracle"

    @property
    def total_micro(self) -> int:
        return self.outcome.total_micro


class _Instance:
    """Trace packets as flat arrays indexed by trace position."""

    def __init__(self, trace: Trace, mode: SemanticsMode | str):
        self.trace = trace
        self.capacity = trace.capacity
        self.per_arrival = SemanticsMode.parse(mode) is SemanticsMode.PER_ARRIVAL
        self.packets = trace.arrivals
        self.releases = [p.release for p in self.packets]
        self.deadlines = [p.deadline for p in self.packets]
        self.values = [p.value_micro for p in self.packets]

    def feasible(self, positions: list[int]) -> bool:
        """``positions`` must be sorted (trace order)."""
        rel, dl = self.releases, self.deadlines
        return feasible_sorted([rel[i] for i in positions], [dl[i] for i in positions],
                               self.capacity, self.per_arrival)

    def result(self, positions, solver: str, mode) -> OfflineResult:
        chosen = [self.packets[i] for i in sorted(positions)]
        outcome = edf_deliver(chosen, self.capacity, mode)
        assert isinstance(outcome, ScheduleOutcome), outcome
        return OfflineResult(frozenset(p.id for p in chosen), outcome, solver)


def _greedy_positions(inst: _Instance) -> list[int]:
    order = sorted(range(len(inst.packets)),
                   key=lambda i: (-inst.values[i], -inst.deadlines[i], inst.packets[i].id))
    chosen: list[int] = []
    for i in order:
        trial = sorted(chosen + [i])
        if inst.feasible(trial):
            chosen = trial
    return chosen


def paper_greedy_offline(trace: Trace,
                         mode: SemanticsMode | str = SemanticsMode.PER_ARRIVAL) -> OfflineResult:
    """Value-ordered greedy: accept each packet iff the accepted set stays EDF-feasible.

    Order is value descending, then later deadline, then lower id.
    """
    inst = _Instance(trace, mode)
    return inst.result(_greedy_positions(inst), "paper_greedy", mode)


def _max_value(inst: _Instance, candidates: list[int], incumbent: int) -> int:
    """Branch and bound over ``candidates`` (value-descending) for the best total."""
    values = inst.values
    suffix = [0] * (len(candidates) + 1)
    for k in range(len(candidates) - 1, -1, -1):
        suffix[k] = suffix[k + 1] + values[candidates[k]]
    best = incumbent

    def search(k: int, chosen: list[int], value: int) -> None:
        nonlocal best
        if value > best:
            best = value
        if k == len(candidates) or value + suffix[k] <= best:
            return
        i = candidates[k]
        trial = sorted(chosen + [i])
        if inst.feasible(trial):
            search(k + 1, trial, value + values[i])
        search(k + 1, chosen, value)

    search(0, [], 0)
    return best


def _smallest_set_with_value(inst: _Instance, candidates: list[int], target: int) -> list[int]:
    """First set in include-first, id-ascending order reaching ``target``.

    With strictly positive values this is the lexicographically smallest
    sorted id tuple among all feasible sets of total ``target``.
    """
    values = inst.values
    suffix = [0] * (len(candidates) + 1)
    for k in range(len(candidates) - 1, -1, -1):
        suffix[k] = suffix[k + 1] + values[candidates[k]]

    def search(k: int, chosen: list[int], value: int) -> list[int] | None:
        if value == target:
            return chosen
        if k == len(candidates) or value + suffix[k] < target:
            return None
        i = candidates[k]
        if value + values[i] <= target:
            trial = sorted(chosen + [i])
            if inst.feasible(trial):
                found = search(k + 1, trial, value + values[i])
                if found is not None:
                    return found
        return search(k + 1, chosen, value)

    found = search(0, [], 0)
    assert found is not None
    return found


def brute_force_opt(trace: Trace, mode: SemanticsMode | str = SemanticsMode.PER_ARRIVAL,
                    limit: int = DEFAULT_ORACLE_LIMIT) -> OfflineResult:
    """Exact maximum-value feasible subset by subset search.

    Zero-value packets are never accepted. Among optimal sets the one with
    the lexicographically smallest sorted id tuple is returned.
    """
    if len(trace) > limit:
        raise InstanceTooLarge(len(trace), limit)
    inst = _Instance(trace, mode)
    positive = [i for i, v in enumerate(inst.values) if v > 0]
    by_value = sorted(positive, key=lambda i: (-inst.values[i], -inst.deadlines[i],
                                               inst.packets[i].id))
    greedy = sum(inst.values[i] for i in _greedy_positions(inst))
    best = _max_value(inst, by_value, greedy)
    by_id = sorted(positive, key=lambda i: inst.packets[i].id)
    return inst.result(_smallest_set_with_value(inst, by_id, best), "oracle", mode)
