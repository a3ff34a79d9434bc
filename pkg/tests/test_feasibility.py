import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bounded_buffer.feasibility import (
    Infeasible,
    align_by_value,
    build_provisional,
    edf_deliver,
    edf_feasible,
)
from bounded_buffer.model import MICRO, Packet, ScheduleOutcome, SemanticsMode

from conftest import traces
from oracles import best_slot_assignment, feasible_by_enumeration

M = MICRO


def P(pid, release, deadline, value=M):
    return Packet(pid, release, deadline, value)


THREE = [P(0, 1, 1), P(1, 1, 2), P(2, 1, 3)]


def test_empty_set_is_feasible(mode):
    assert edf_deliver([], 1, mode) == ScheduleOutcome()
    assert edf_feasible([], 1, mode)


def test_transient_overflow_rejected_per_arrival():
    witness = edf_deliver(THREE, 2, "per_arrival")
    assert isinstance(witness, Infeasible)
    assert not witness
    assert witness.message == "occupancy 3 > 2 after third arrival of step 1"
    assert (witness.step, witness.packet_id) == (1, 2)
    assert not feasible_by_enumeration(THREE, 2, per_arrival=True)


def test_transient_overflow_allowed_post_delivery():
    out = edf_deliver(THREE, 2, "post_delivery")
    assert out.sends == ((1, 0), (2, 1), (3, 2))
    assert out.total_micro == 3 * M
    assert feasible_by_enumeration(THREE, 2, per_arrival=False)


def test_expired_witness():
    witness = edf_deliver([P(0, 1, 1), P(1, 1, 1)], 3)
    assert witness.kind == "expired"
    assert witness.packet_id == 1
    assert witness.step == 2


def test_post_delivery_step_end_witness():
    witness = edf_deliver([P(0, 1, 5), P(1, 1, 5), P(2, 1, 5), P(3, 1, 5)], 2, "post_delivery")
    assert witness.message == "occupancy 3 > 2 after delivery of step 1"


def test_edf_tie_breaks_by_lower_id():
    out = edf_deliver([P(5, 1, 2), P(3, 1, 2)], 2)
    assert out.sends == ((1, 3), (2, 5))


@pytest.mark.parametrize("packets, capacity, expected", [
    ([P(0, 1, 3), P(1, 3, 3)], 3, True),
    ([P(0, 1, 1), P(1, 1, 1)], 1, False),
    ([P(0, 1, 1), P(1, 1, 1)], 4, False),
    ([P(0, 1, 2), P(2, 1, 3), P(1, 2, 2), P(3, 3, 3)], 3, False),
])
def test_edf_feasible_examples(packets, capacity, expected):
    assert edf_feasible(packets, capacity, "per_arrival") is expected
    assert feasible_by_enumeration(packets, capacity, True) is expected


@settings(max_examples=300, deadline=None)
@given(traces(max_n=6, max_capacity=3, max_release=4, max_slack=3), st.sampled_from(SemanticsMode))
def test_edf_is_complete_feasibility_test(trace, mode):
    packets = list(trace.arrivals)
    per_arrival = mode is SemanticsMode.PER_ARRIVAL
    assert edf_feasible(packets, trace.capacity, mode) == \
        feasible_by_enumeration(packets, trace.capacity, per_arrival)


@settings(max_examples=300, deadline=None)
@given(traces(max_n=8), st.sampled_from(SemanticsMode), st.data())
def test_feasibility_monotone_under_removal(trace, mode, data):
    packets = list(trace.arrivals)
    if not edf_feasible(packets, trace.capacity, mode):
        return
    keep = data.draw(st.lists(st.booleans(), min_size=len(packets), max_size=len(packets)))
    subset = [p for p, k in zip(packets, keep) if k]
    assert edf_feasible(subset, trace.capacity, mode)


@settings(max_examples=200, deadline=None)
@given(traces(max_n=8), st.sampled_from(SemanticsMode))
def test_feasible_outcome_is_consistent(trace, mode):
    out = edf_deliver(trace.arrivals, trace.capacity, mode)
    if isinstance(out, ScheduleOutcome):
        assert len(out.sends) == len(trace)
        by_id = trace.by_id()
        assert all(by_id[pid].release <= t <= by_id[pid].deadline for t, pid in out.sends)
        assert len({t for t, _ in out.sends}) == len(out.sends)


# -- provisional schedules --------------------------------------------------

def test_single_packet_provisional():
    p = P(0, 1, 6, 10)
    sched, dropped = build_provisional([p], 1, 3)
    assert sched.slots == (p, None, None)
    assert dropped == ()


def test_provisional_fills_by_value():
    c1, c2, b1 = P(0, 1, 1, 3 * M // 2), P(1, 1, 2, 3 * M // 2), P(2, 1, 3, M)
    for build in (build_provisional, align_by_value):
        sched, dropped = build([b1, c2, c1], 1, 2)
        assert sched.ids == (0, 1)
        assert dropped == (b1,)
        assert sched.total_micro == best_slot_assignment([c1, c2, b1], 1, 2) == 3 * M


def test_provisional_slot_time_arithmetic():
    x, y, z = P(0, 1, 2, 3 * M // 2), P(1, 1, 2, 3 * M // 2), P(2, 1, 3, 3 * M // 2)
    for build in (build_provisional, align_by_value):
        sched, dropped = build([z, y, x], 2, 3)
        assert sched.ids == (0, 2, None)
        assert dropped == (y,)
    assert best_slot_assignment([x, y, z], 2, 3) == 3 * M


def test_value_alignment_is_not_always_optimal():
    # the cheaper packet only fits slot 1, which the dearer one takes first
    a, b = P(0, 1, 2, 10), P(1, 1, 1, 5)
    aligned, _ = align_by_value([a, b], 1, 2)
    best, _ = build_provisional([a, b], 1, 2)
    assert aligned.ids == (0, None)
    assert best.ids == (1, 0)
    assert best.total_micro == best_slot_assignment([a, b], 1, 2) == 15


pending_sets = st.tuples(
    st.integers(1, 4),
    st.integers(1, 6),
    st.lists(st.tuples(st.integers(0, 5), st.integers(0, 9)), max_size=8),
).map(lambda t: (t[0], t[1], [P(k, 1, t[1] + s, v) for k, (s, v) in enumerate(t[2])]))


def _check_slots(sched, now):
    occupied = [p is not None for p in sched.slots]
    assert occupied == sorted(occupied, reverse=True)
    for i, p in enumerate(sched.occupants):
        assert p.deadline >= now + i


@settings(max_examples=400, deadline=None)
@given(pending_sets)
def test_build_provisional_optimal(case):
    capacity, now, pending = case
    sched, dropped = build_provisional(pending, now, capacity)
    _check_slots(sched, now)
    assert sorted(sched.occupants + dropped) == sorted(pending)
    assert sched.total_micro == best_slot_assignment(pending, now, capacity)


@settings(max_examples=400, deadline=None)
@given(pending_sets)
def test_align_by_value_invariants(case):
    capacity, now, pending = case
    sched, dropped = align_by_value(pending, now, capacity)
    _check_slots(sched, now)
    values = [p.value_micro for p in sched.occupants]
    assert values == sorted(values, reverse=True)
    assert sorted(sched.occupants + dropped) == sorted(pending)
    assert sched.total_micro <= best_slot_assignment(pending, now, capacity)
