"""Packets, traces and the event semantics shared by every solver.

A step ``t`` consists of: purge of expired packets (``deadline < t``), the
arrival events of step ``t`` in trace order, and one delivery event.
Values are integers in micro-units so every comparison is exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

MICRO = 1_000_000


class SemanticsMode(str, enum.Enum):
    """When the buffer-capacity bound is enforced within a step."""

    PER_ARRIVAL = "per_arrival"
    POST_DELIVERY = "post_delivery"

    @classmethod
    def parse(cls, text: str | "SemanticsMode") -> "SemanticsMode":
        if isinstance(text, SemanticsMode):
            return text
        return cls(text.replace("-", "_"))


class Checkpoint(str, enum.Enum):
    AFTER_ARRIVAL = "after-arrival"
    AFTER_DELIVERY = "after-delivery"


class DropReason(str, enum.Enum):
    CAPACITY = "capacity"
    EXPIRED = "expired"
    DISPLACED = "displaced"


@dataclass(frozen=True, order=True)
class Packet:
    id: int
    release: int
    deadline: int
    value_micro: int


@dataclass(frozen=True)
class Trace:
    capacity: int
    arrivals: tuple[Packet, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "arrivals", tuple(self.arrivals))

    @property
    def horizon(self) -> int:
        return max((p.deadline for p in self.arrivals), default=0)

    def by_id(self) -> dict[int, Packet]:
        return {p.id: p for p in self.arrivals}

    def __len__(self) -> int:
        return len(self.arrivals)


@dataclass(frozen=True)
class Drop:
    step: int
    packet_id: int
    reason: DropReason


@dataclass(frozen=True)
class ScheduleOutcome:
    sends: tuple[tuple[int, int], ...] = ()
    total_micro: int = 0
    drops: tuple[Drop, ...] = field(default=())

    @property
    def sent_ids(self) -> frozenset[int]:
        return frozenset(pid for _, pid in self.sends)


class TraceValidationError(ValueError):
    """Raised with the full list of invariant violations of a trace."""

    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


def trace_errors(trace: Trace) -> list[str]:
    errors = []
    if trace.capacity < 1:
        errors.append(f"capacity {trace.capacity} < 1")
    seen: set[int] = set()
    last_release = None
    for p in trace.arrivals:
        if p.id < 0:
            errors.append(f"negative id {p.id}")
        if p.id in seen:
            errors.append(f"duplicate id {p.id}")
        seen.add(p.id)
        if p.release < 1:
            errors.append(f"packet {p.id}: release {p.release} < 1")
        if p.deadline < p.release:
            errors.append(f"packet {p.id}: deadline before release")
        if p.value_micro < 0:
            errors.append(f"packet {p.id}: negative value")
        if last_release is not None and p.release < last_release:
            errors.append(f"packet {p.id}: arrivals out of release order")
        last_release = p.release if last_release is None else max(last_release, p.release)
    return errors


def validate_trace(trace: Trace) -> Trace:
    """Return ``trace`` unchanged or raise listing every violation."""
    errors = trace_errors(trace)
    if errors:
        raise TraceValidationError(errors)
    return trace


def occupancy_check(pending_count: int, capacity: int, mode: SemanticsMode | str,
                    point: Checkpoint | str) -> bool:
    mode = SemanticsMode.parse(mode)
    point = Checkpoint(point)
    if mode is SemanticsMode.POST_DELIVERY and point is Checkpoint.AFTER_ARRIVAL:
        return True
    return pending_count <= capacity


def outcome_errors(trace: Trace, outcome: ScheduleOutcome) -> list[str]:
    """Replay ``outcome`` against ``trace`` and list inconsistencies."""
    packets = trace.by_id()
    errors = []
    steps: set[int] = set()
    ids: set[int] = set()
    total = 0
    for step, pid in outcome.sends:
        if step in steps:
            errors.append(f"two sends in step {step}")
        steps.add(step)
        if pid in ids:
            errors.append(f"packet {pid} sent twice")
        ids.add(pid)
        p = packets.get(pid)
        if p is None:
            errors.append(f"unknown packet {pid}")
            continue
        if not p.release <= step <= p.deadline:
            errors.append(f"packet {pid} sent at {step} outside [{p.release}, {p.deadline}]")
        total += p.value_micro
    if total != outcome.total_micro:
        errors.append(f"total {outcome.total_micro} != replayed {total}")
    return errors


def total_value(packets: Iterable[Packet]) -> int:
    return sum(p.value_micro for p in packets)
