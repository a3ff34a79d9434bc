"""Online driver and schedulers (GRQ, naive value greedy, unit-value EDF).

The driver owns the model: it purges expired packets, feeds arrivals one at
a time to ``admit``, enforces capacity per the semantics mode, and asks
``select_send`` for at most one packet per step. Schedulers only decide.
"""

from __future__ import annotations

from typing import Callable, Collection, Protocol

from .feasibility import ProvisionalSchedule, align_by_value
from .model import (
    Checkpoint,
    Drop,
    DropReason,
    Packet,
    ScheduleOutcome,
    SemanticsMode,
    Trace,
    occupancy_check,
)


class SchedulerProtocolError(RuntimeError):
    pass


class Scheduler(Protocol):
    name: str

    def start(self, capacity: int, mode: SemanticsMode) -> None: ...

    def admit(self, pending: tuple[Packet, ...], new: Packet, now: int) -> Collection[Packet]: ...

    def select_send(self, pending: tuple[Packet, ...], now: int) -> Packet | None: ...


class GRQ:
    """Keep the buffer aligned in value order; send the slot-1 packet."""

    name = "grq"

    def __init__(self) -> None:
        self.capacity = 0
        self.schedule: ProvisionalSchedule | None = None

    def start(self, capacity: int, mode: SemanticsMode) -> None:
        self.capacity = capacity
        self.schedule = None

    def _align(self, packets, now: int) -> ProvisionalSchedule:
        self.schedule, _ = align_by_value(packets, now, self.capacity)
        return self.schedule

    def admit(self, pending, new, now):
        return self._align(pending + (new,), now).occupants

    def select_send(self, pending, now):
        return self._align(pending, now).first


class UnitEDF:
    """Count-maximizing EDF for uniform values (values are ignored).

    On overflow the earliest-deadline packet is dropped (ties: higher id),
    so the buffer always holds the latest deadlines seen; each step sends
    the earliest deadline. Under post-delivery semantics one extra packet
    may be held through the arrival phase, since the step's send frees it.
    """

    name = "edf-unit"

    def start(self, capacity: int, mode: SemanticsMode) -> None:
        self.limit = capacity + (mode is SemanticsMode.POST_DELIVERY)

    def admit(self, pending, new, now):
        held = pending + (new,)
        if len(held) <= self.limit:
            return held
        victim = min(held, key=lambda p: (p.deadline, -p.id))
        return tuple(p for p in held if p is not victim)

    def select_send(self, pending, now):
        return min(pending, key=lambda p: (p.deadline, p.id), default=None)


class NaiveGreedy:
    """Evict the cheapest packet for a strictly better one; send the most valuable."""

    name = "naive-greedy"

    def start(self, capacity: int, mode: SemanticsMode) -> None:
        self.capacity = capacity

    def admit(self, pending, new, now):
        if len(pending) < self.capacity:
            return pending + (new,)
        # cheapest, then latest deadline, then highest id
        victim = min(pending, key=lambda p: (p.value_micro, -p.deadline, -p.id))
        if new.value_micro > victim.value_micro:
            return tuple(p for p in pending if p is not victim) + (new,)
        return pending

    def select_send(self, pending, now):
        if not pending:
            return None
        return min(pending, key=lambda p: (-p.value_micro, p.deadline, p.id))


SCHEDULERS: dict[str, Callable[[], Scheduler]] = {
    "grq": GRQ,
    "naive-greedy": NaiveGreedy,
    "edf-unit": UnitEDF,
}


def make_scheduler(name: str) -> Scheduler:
    try:
        return SCHEDULERS[name.replace("_", "-")]()
    except KeyError:
        raise ValueError(f"unknown online scheduler {name!r}") from None


def simulate(scheduler: Scheduler, trace: Trace,
             mode: SemanticsMode | str = SemanticsMode.PER_ARRIVAL) -> ScheduleOutcome:
    mode = SemanticsMode.parse(mode)
    capacity = trace.capacity
    scheduler.start(capacity, mode)
    arrivals = trace.arrivals
    pending: tuple[Packet, ...] = ()
    sends: list[tuple[int, int]] = []
    drops: list[Drop] = []
    total = 0
    i, n = 0, len(arrivals)
    for t in range(1, trace.horizon + 1):
        kept = tuple(p for p in pending if p.deadline >= t)
        if len(kept) != len(pending):
            drops.extend(Drop(t, p.id, DropReason.EXPIRED) for p in pending if p.deadline < t)
        pending = kept
        while i < n and arrivals[i].release == t:
            new = arrivals[i]
            i += 1
            offered = pending + (new,)
            retained = tuple(scheduler.admit(pending, new, t))
            retained_ids = {p.id for p in retained}
            if len(retained_ids) != len(retained) or not retained_ids <= {p.id for p in offered}:
                raise SchedulerProtocolError(
                    f"{scheduler.name}: step {t}, arrival {new.id}: retained "
                    f"{sorted(retained_ids)} not a subset of {sorted(p.id for p in offered)}")
            for p in offered:
                if p.id not in retained_ids:
                    reason = DropReason.CAPACITY if p is new else DropReason.DISPLACED
                    drops.append(Drop(t, p.id, reason))
            # keep trace order so replays are independent of scheduler internals
            pending = tuple(p for p in offered if p.id in retained_ids)
            if not occupancy_check(len(pending), capacity, mode, Checkpoint.AFTER_ARRIVAL):
                raise SchedulerProtocolError(
                    f"{scheduler.name}: occupancy {len(pending)} > {capacity} after arrival "
                    f"{new.id} in step {t}")
        sent = scheduler.select_send(pending, t)
        if sent is not None:
            if sent not in pending or not sent.release <= t <= sent.deadline:
                raise SchedulerProtocolError(
                    f"{scheduler.name}: step {t}: packet {sent.id} is not deliverable")
            sends.append((t, sent.id))
            total += sent.value_micro
            pending = tuple(p for p in pending if p.id != sent.id)
        if not occupancy_check(len(pending), capacity, mode, Checkpoint.AFTER_DELIVERY):
            raise SchedulerProtocolError(
                f"{scheduler.name}: occupancy {len(pending)} > {capacity} after delivery "
                f"in step {t}")
    # leftovers expire once the horizon has passed
    drops.extend(Drop(trace.horizon + 1, p.id, DropReason.EXPIRED) for p in pending)
    return ScheduleOutcome(tuple(sends), total, tuple(drops))


def run_online(name: str, trace: Trace,
               mode: SemanticsMode | str = SemanticsMode.PER_ARRIVAL) -> ScheduleOutcome:
    return simulate(make_scheduler(name), trace, mode)
