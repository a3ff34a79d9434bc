"""Adversarial lower-bound traces and seeded random traces."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .model import MICRO, Packet, SemanticsMode, Trace


def lower_bound_trace(buffer: int, eps_micro: int) -> Trace:
    """Adversarial instance against best-effort admission algorithms.

    Step 1 releases ``B`` unit-value packets with deadlines ``B+1..2B`` and
    then ``B`` packets of value ``1+eps`` with deadlines ``1..B``; each step
    ``i = 2..B`` releases one more ``(1+eps, i)`` packet. Ids follow arrival
    order starting at 0.
    """
    if buffer < 2:
        raise ValueError("lower_bound_trace needs buffer >= 2")
    if eps_micro < 1:
        raise ValueError("eps_micro must be >= 1")
    heavy = MICRO + eps_micro
    specs = [(1, buffer + i, MICRO) for i in range(1, buffer + 1)]
    specs += [(1, i, heavy) for i in range(1, buffer + 1)]
    specs += [(i, i, heavy) for i in range(2, buffer + 1)]
    return Trace(buffer, tuple(Packet(k, r, d, v) for k, (r, d, v) in enumerate(specs)))


def expected_ratio(buffer: int, eps_micro: int) -> Fraction:
    """Optimal over best-effort value on the adversarial trace, as a fraction."""
    if buffer < 2:
        raise ValueError("expected_ratio needs buffer >= 2")
    online = buffer * (MICRO + eps_micro)
    return Fraction(online + (buffer - 1) * MICRO, online)


def lower_bound_opt_total(buffer: int, eps_micro: int,
                          mode: SemanticsMode | str = SemanticsMode.PER_ARRIVAL) -> int:
    """Closed-form optimum on ``lower_bound_trace(buffer, eps_micro)``.

    Under per-arrival capacity only ``B - 1`` unit packets can ride along
    with the step-1 heavy packet; post-delivery checking lets all ``B`` stay.
    """
    unit_kept = buffer - 1 if SemanticsMode.parse(mode) is SemanticsMode.PER_ARRIVAL else buffer
    return buffer * (MICRO + eps_micro) + unit_kept * MICRO


@dataclass(frozen=True)
class RandomTraceParams:
    n: int
    buffer: int
    horizon: int
    value_max_micro: int
    max_slack: int
    seed: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.buffer < 1 or self.horizon < 1 or self.max_slack < 0:
            raise ValueError(f"invalid random trace parameters: {self}")
        if self.value_max_micro < 1:
            raise ValueError("value_max_micro must be >= 1")


def random_trace(params: RandomTraceParams) -> Trace:
    """Seeded random trace.

    Uses numpy's PCG64 seeded with ``seed mod 2**64``; per packet it draws
    release (1..horizon), slack (0..max_slack), value (1..value_max_micro)
    in that order. Arrivals are sorted by release, stable in generation
    order, and ids are reassigned 0..n-1 in arrival order.
    """
    rng = np.random.Generator(np.random.PCG64(params.seed % 2**64))
    drawn = []
    for _ in range(params.n):
        release = int(rng.integers(1, params.horizon, endpoint=True))
        slack = int(rng.integers(0, params.max_slack, endpoint=True))
        value = int(rng.integers(1, params.value_max_micro, endpoint=True))
        drawn.append((release, release + slack, value))
    drawn.sort(key=lambda x: x[0])
    return Trace(params.buffer, tuple(Packet(k, r, d, v) for k, (r, d, v) in enumerate(drawn)))


def random_campaign(count: int, base_seed: int, *, n_max: int = 12, buffer_max: int = 4,
                    horizon_max: int = 8, slack_max: int = 6,
                    value_choices: tuple[int, ...] = (3, 10, 1000, MICRO),
                    buffer_at_least_horizon: bool = False) -> Iterator[Trace]:
    """``count`` reproducible random traces with varied shape parameters.

    Trace ``i`` draws its parameters from ``PCG64([base_seed, i])`` and its
    packets from seed ``base_seed * 1_000_003 + i``.
    """
    for i in range(count):
        rng = np.random.Generator(np.random.PCG64([base_seed, i]))
        params = RandomTraceParams(
            n=int(rng.integers(0, n_max, endpoint=True)),
            buffer=int(rng.integers(1, buffer_max, endpoint=True)),
            horizon=int(rng.integers(1, horizon_max, endpoint=True)),
            value_max_micro=int(rng.choice(value_choices)),
            max_slack=int(rng.integers(0, slack_max, endpoint=True)),
            seed=base_seed * 1_000_003 + i,
        )
        trace = random_trace(params)
        if buffer_at_least_horizon and trace.capacity < trace.horizon:
            trace = Trace(trace.horizon, trace.arrivals)
        yield trace
