"""EDF feasibility of packet sets and GRQ-style provisional schedules."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import (
    Checkpoint,
    Packet,
    ScheduleOutcome,
    SemanticsMode,
    occupancy_check,
)

_ORDINALS = ["first", "second", "third", "fourth", "fifth", "sixth", "seventh",
             "eighth", "ninth", "tenth"]


def _ordinal(k: int) -> str:
    if k <= len(_ORDINALS):
        return _ORDINALS[k - 1]
    suffix = "th" if 10 <= k % 100 <= 20 else {1: "st", 2: "nd", 3: "rd"}.get(k % 10, "th")
    return f"{k}{suffix}"


@dataclass(frozen=True)
class Infeasible:
    """The first event at which delivering every packet of a set fails."""

    step: int
    kind: str  # "occupancy" or "expired"
    packet_id: int | None
    message: str

    def __bool__(self) -> bool:
        return False


def _in_release_order(packets: Iterable[Packet]) -> list[Packet]:
    # stable: intra-step order is the caller's (trace) order
    return sorted(packets, key=lambda p: p.release)


def edf_deliver(accepted: Iterable[Packet], capacity: int,
                mode: SemanticsMode | str = SemanticsMode.PER_ARRIVAL
                ) -> ScheduleOutcome | Infeasible:
    """Deliver ``accepted`` earliest-deadline-first (ties: lower id).

    ``accepted`` must be given in trace order; within a step that order
    decides which arrival trips the capacity bound. Returns the outcome if
    every packet is sent by its deadline without breaking the capacity
    bound under ``mode``, else the first violated event.
    """
    mode = SemanticsMode.parse(mode)
    packets = _in_release_order(accepted)
    if not packets:
        return ScheduleOutcome()
    horizon = max(p.deadline for p in packets)
    heap: list[tuple[int, int, Packet]] = []
    sends: list[tuple[int, int]] = []
    total = 0
    i, n = 0, len(packets)
    t = packets[0].release
    while t <= horizon and (i < n or heap):
        if not heap and packets[i].release > t:
            t = packets[i].release
        if heap and heap[0][0] < t:
            p = heap[0][2]
            return Infeasible(t, "expired", p.id,
                              f"packet {p.id} expired unsent (deadline {p.deadline}) at step {t}")
        k = 0
        while i < n and packets[i].release == t:
            p = packets[i]
            heapq.heappush(heap, (p.deadline, p.id, p))
            k += 1
            i += 1
            if not occupancy_check(len(heap), capacity, mode, Checkpoint.AFTER_ARRIVAL):
                return Infeasible(t, "occupancy", p.id,
                                  f"occupancy {len(heap)} > {capacity} after "
                                  f"{_ordinal(k)} arrival of step {t}")
        _, _, sent = heapq.heappop(heap)
        sends.append((t, sent.id))
        total += sent.value_micro
        if not occupancy_check(len(heap), capacity, mode, Checkpoint.AFTER_DELIVERY):
            return Infeasible(t, "occupancy", None,
                              f"occupancy {len(heap)} > {capacity} after delivery of step {t}")
        t += 1
    if heap:
        p = heap[0][2]
        return Infeasible(t, "expired", p.id,
                          f"packet {p.id} expired unsent (deadline {p.deadline}) at step {t}")
    return ScheduleOutcome(sends=tuple(sends), total_micro=total)


def feasible_sorted(releases: Sequence[int], deadlines: Sequence[int], capacity: int,
                    per_arrival: bool) -> bool:
    """Fast EDF feasibility on parallel arrays already in trace order."""
    heap: list[int] = []
    push, pop = heapq.heappush, heapq.heappop
    i, n = 0, len(releases)
    t = 0
    while i < n or heap:
        if not heap:
            t = releases[i]
        elif heap[0] < t:
            return False
        while i < n and releases[i] == t:
            push(heap, deadlines[i])
            i += 1
            if per_arrival and len(heap) > capacity:
                return False
        pop(heap)
        if len(heap) > capacity:
            return False
        t += 1
    return True


def edf_feasible(accepted: Iterable[Packet], capacity: int,
                 mode: SemanticsMode | str = SemanticsMode.PER_ARRIVAL) -> bool:
    packets = _in_release_order(accepted)
    return feasible_sorted([p.release for p in packets], [p.deadline for p in packets],
                           capacity, SemanticsMode.parse(mode) is SemanticsMode.PER_ARRIVAL)


@dataclass(frozen=True)
class ProvisionalSchedule:
    """Slot ``i`` (1-based) holds the packet planned for step ``now + i - 1``."""

    now: int
    slots: tuple[Packet | None, ...]

    @property
    def occupants(self) -> tuple[Packet, ...]:
        return tuple(p for p in self.slots if p is not None)

    @property
    def ids(self) -> tuple[int | None, ...]:
        return tuple(None if p is None else p.id for p in self.slots)

    @property
    def first(self) -> Packet | None:
        return self.slots[0] if self.slots else None

    @property
    def total_micro(self) -> int:
        return sum(p.value_micro for p in self.occupants)


def alignment_key(p: Packet) -> tuple[int, int, int]:
    return (-p.value_micro, p.deadline, p.id)


def _schedule(placed: list[Packet], now: int, capacity: int) -> ProvisionalSchedule:
    return ProvisionalSchedule(now, tuple(placed) + (None,) * (capacity - len(placed)))


def align_by_value(pending: Iterable[Packet], now: int, capacity: int,
                   key=alignment_key) -> tuple[ProvisionalSchedule, tuple[Packet, ...]]:
    """Align ``pending`` into buffer slots in non-increasing value order.

    Each packet, taken by ``key`` (value descending, then earlier deadline,
    then lower id), goes to the first free slot if that slot's send time is
    within its deadline; otherwise it is dropped. This is GRQ's buffer rule;
    it is not always the most valuable provisional schedule.
    """
    placed: list[Packet] = []
    dropped: list[Packet] = []
    for p in sorted(pending, key=key):
        if len(placed) < capacity and now + len(placed) <= p.deadline:
            placed.append(p)
        else:
            dropped.append(p)
    return _schedule(placed, now, capacity), tuple(dropped)


def _fits(by_deadline: list[Packet], now: int) -> bool:
    return all(p.deadline >= now + k for k, p in enumerate(by_deadline))


def build_provisional(pending: Iterable[Packet], now: int, capacity: int
                      ) -> tuple[ProvisionalSchedule, tuple[Packet, ...]]:
    """Maximum-value provisional schedule over ``pending`` (no future arrivals).

    Packets are considered by value (ties: earlier deadline, lower id) and
    kept when the kept set still fits slots ``now .. now+B-1`` in EDF
    order. Slots are filled earliest deadline first, so values need not be
    monotone across slots.
    """
    kept: list[Packet] = []
    dropped: list[Packet] = []
    for p in sorted(pending, key=alignment_key):
        trial = sorted(kept + [p], key=lambda q: (q.deadline, q.id))
        if len(trial) <= capacity and _fits(trial, now):
            kept = trial
        else:
            dropped.append(p)
    return _schedule(kept, now, capacity), tuple(dropped)
