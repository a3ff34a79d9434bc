from fractions import Fraction

import pytest

from bounded_buffer.generators import (
    RandomTraceParams,
    expected_ratio,
    lower_bound_opt_total,
    lower_bound_trace,
    random_campaign,
    random_trace,
)
from bounded_buffer.model import MICRO, SemanticsMode, validate_trace
from bounded_buffer.offline import brute_force_opt
from bounded_buffer.online import run_online
from bounded_buffer.traceio import dumps_trace

from oracles import opt_by_enumeration

HEAVY = 1_500_000


def test_lower_bound_layout_b2():
    trace = lower_bound_trace(2, 500_000)
    got = [(p.release, p.value_micro, p.deadline) for p in trace.arrivals]
    assert got == [(1, MICRO, 3), (1, MICRO, 4), (1, HEAVY, 1), (1, HEAVY, 2), (2, HEAVY, 2)]
    assert [p.id for p in trace.arrivals] == list(range(5))
    assert trace.capacity == 2


@pytest.mark.parametrize("buffer", range(2, 65))
def test_lower_bound_valid(buffer):
    trace = validate_trace(lower_bound_trace(buffer, 1))
    assert len(trace) == 3 * buffer - 1


def test_lower_bound_rejects_degenerate():
    with pytest.raises(ValueError):
        lower_bound_trace(1, 500_000)
    with pytest.raises(ValueError):
        lower_bound_trace(3, 0)


@pytest.mark.parametrize("buffer, eps, ratio", [
    (2, 500_000, Fraction(4, 3)),
    (3, 500_000, Fraction(13, 9)),
    (4, 500_000, Fraction(3, 2)),
])
def test_expected_ratio(buffer, eps, ratio):
    assert expected_ratio(buffer, eps) == ratio


@pytest.mark.parametrize("buffer", [2, 3, 7, 40])
def test_expected_ratio_at_zero_eps(buffer):
    assert expected_ratio(buffer, 0) == Fraction(2 * buffer - 1, buffer) == 2 - Fraction(1, buffer)


@pytest.mark.parametrize("buffer", range(2, 33))
@pytest.mark.parametrize("eps", [1, 500_000, 999_999])
def test_grq_total_on_lower_bound(buffer, eps, mode):
    assert run_online("grq", lower_bound_trace(buffer, eps), mode).total_micro == \
        buffer * (MICRO + eps)


@pytest.mark.parametrize("buffer", range(2, 8))
def test_closed_form_opt_matches_oracle(buffer, mode):
    trace = lower_bound_trace(buffer, 250_000)
    assert brute_force_opt(trace, mode).total_micro == lower_bound_opt_total(buffer, 250_000, mode)


def test_closed_form_opt_per_arrival():
    assert lower_bound_opt_total(3, 500_000) == 3 * HEAVY + 2 * MICRO
    assert lower_bound_opt_total(3, 500_000, SemanticsMode.POST_DELIVERY) == 3 * HEAVY + 3 * MICRO


def test_random_trace_empty():
    assert len(random_trace(RandomTraceParams(0, 2, 5, 10, 2, 1))) == 0


def test_random_trace_deterministic():
    params = RandomTraceParams(25, 3, 9, 1000, 4, 123456789)
    assert dumps_trace(random_trace(params)) == dumps_trace(random_trace(params))
    other = RandomTraceParams(25, 3, 9, 1000, 4, 123456790)
    assert dumps_trace(random_trace(params)) != dumps_trace(random_trace(other))


def test_random_trace_respects_params():
    params = RandomTraceParams(200, 2, 7, 50, 3, 2**63 + 5)
    trace = validate_trace(random_trace(params))
    assert [p.id for p in trace.arrivals] == list(range(200))
    for p in trace.arrivals:
        assert 1 <= p.release <= 7
        assert 0 <= p.deadline - p.release <= 3
        assert 1 <= p.value_micro <= 50


def test_invalid_params():
    with pytest.raises(ValueError):
        RandomTraceParams(-1, 2, 5, 10, 2, 1)
    with pytest.raises(ValueError):
        RandomTraceParams(3, 0, 5, 10, 2, 1)


GOLDEN = RandomTraceParams(n=10, buffer=2, horizon=6, value_max_micro=1000, max_slack=3, seed=7)


def test_random_trace_golden():
    trace = random_trace(GOLDEN)
    got = [(p.release, p.deadline, p.value_micro) for p in trace.arrivals]
    assert got[:3] == [(1, 2, 817), (2, 3, 874), (2, 3, 279)]
    assert brute_force_opt(trace, "per_arrival").total_micro == 5040
    assert brute_force_opt(trace, "post_delivery").total_micro == 5725


def test_random_trace_golden_independent():
    trace = random_trace(GOLDEN)
    assert opt_by_enumeration(trace, per_arrival=True)[0] == 5040


def test_campaign_reproducible():
    first = [dumps_trace(t) for t in random_campaign(50, 9)]
    assert first == [dumps_trace(t) for t in random_campaign(50, 9)]
    for t in random_campaign(200, 3, buffer_at_least_horizon=True):
        assert t.capacity >= t.horizon
