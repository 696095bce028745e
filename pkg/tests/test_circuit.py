import pytest
from hypothesis import given, strategies as st

from celltiler import decomp
from celltiler.circuit import (
    POLICIES,
    Gate,
    GateKind,
    Schedule,
    can_parallelize_toffoli,
    depth,
    gate,
    swap_metrics,
    t_metrics,
)

K = GateKind


def test_gate_arity_checks():
    with pytest.raises(ValueError):
        gate(K.CNOT, "a")
    with pytest.raises(ValueError):
        gate(K.CNOT, "a", "a")
    with pytest.raises(ValueError):
        gate(K.TOFFOLI, "a", "b")


def test_append_first_gate():
    s = Schedule()
    s.append(gate(K.CNOT, "a", "b"))
    assert len(s) == 1


def test_append_earliest_fit_disjoint():
    s = Schedule()
    s.append(gate(K.CNOT, "a", "b"))
    s.append(gate(K.CNOT, "c", "d"))
    assert len(s) == 1 and len(s.moments[0]) == 2


def test_append_earliest_fit_shared_operand():
    s = Schedule()
    s.append(gate(K.CNOT, "a", "b"))
    s.append(gate(K.H, "a"))
    assert len(s) == 2


def test_append_new_moment():
    s = Schedule()
    s.append(gate(K.CNOT, "a", "b"), mode="new-moment")
    s.append(gate(K.CNOT, "c", "d"), mode="new-moment")
    assert len(s) == 2


def test_moment_disjointness_enforced():
    s = Schedule()
    with pytest.raises(ValueError):
        Schedule([[gate(K.H, "a"), gate(K.CNOT, "a", "b")]])


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=30))
def test_moment_disjointness_after_appends(pairs):
    s = Schedule()
    for a, b in pairs:
        if a == b:
            continue
        s.append(gate(K.CNOT, f"q{a}", f"q{b}"))
    for m in s.moments:
        seen = set()
        for g in m:
            assert not (seen & g.support)
            seen |= g.support


def test_depth_empty():
    assert depth(Schedule()) == 0


def test_depth_bounded_by_gate_count():
    sched = decomp.ccz_tdepth1()
    assert depth(sched, POLICIES["strict"]) <= sum(len(m) for m in sched.moments)


def test_depth_monotone_under_new_moment():
    s = Schedule()
    prev = 0
    for i in range(5):
        s.append(gate(K.H, f"q{i % 2}"), mode="new-moment")
        cur = depth(s)
        assert cur >= prev
        prev = cur


def test_depth_policies_toffoli_tdepth2_in_range():
    sched = decomp.toffoli_tdepth2()
    for policy in POLICIES.values():
        assert 6 <= depth(sched, policy) <= 9


def test_depth_and3_parallel_policy():
    assert depth(decomp.and_3anc(), POLICIES["parallel"]) == 7


def test_t_metrics_examples():
    assert t_metrics(decomp.ccz_tdepth1()) == (7, 1)
    assert t_metrics(decomp.and_4anc()) == (4, 1)
    assert t_metrics(decomp.toffoli_tdepth2())[1] == 2


def test_swap_metrics_empty():
    assert swap_metrics(Schedule()) == (0, 0)


def test_swap_metrics_counts_and_depth():
    s = Schedule()
    s.extend_moment([gate(K.SWAP, "a", "b"), gate(K.SWAP, "c", "d")])
    s.extend_moment([gate(K.SWAP, "a", "c")])
    assert swap_metrics(s) == (3, 2)


def test_swap_metrics_storage_exclusion():
    s = Schedule()
    s.extend_moment([gate(K.SWAP, "a", "b", tags=("storage",))])
    s.extend_moment([gate(K.SWAP, "c", "d")])
    assert swap_metrics(s) == (1, 1)
    assert swap_metrics(s, exclude=frozenset({"c", "d"})) == (0, 0)


def test_swap_depth_le_count():
    s = Schedule()
    s.extend_moment([gate(K.SWAP, "a", "b"), gate(K.SWAP, "c", "d")])
    c, d = swap_metrics(s)
    assert d <= c


def test_can_parallelize_examples():
    t1 = gate(K.TOFFOLI, 1, 2, 3)
    t2 = gate(K.TOFFOLI, 3, 4, 5)
    assert not can_parallelize_toffoli(t1, t2)
    t3 = gate(K.TOFFOLI, 4, 5, 6)
    assert can_parallelize_toffoli(t1, t3)
    c1 = gate(K.CCZ, 1, 2, 3)
    c2 = gate(K.CCZ, 2, 3, 4)
    assert can_parallelize_toffoli(c1, c2)


def test_can_parallelize_shared_targets():
    t1 = gate(K.TOFFOLI, 1, 2, 9)
    t2 = gate(K.TOFFOLI, 3, 4, 9)
    assert can_parallelize_toffoli(t1, t2)


def test_can_parallelize_rejects_other_kinds():
    with pytest.raises(ValueError):
        can_parallelize_toffoli(gate(K.CNOT, 1, 2), gate(K.CCZ, 1, 2, 3))


@given(
    st.permutations([1, 2, 3]),
    st.permutations([2, 3, 4]),
    st.booleans(),
    st.booleans(),
)
def test_can_parallelize_symmetric(ops1, ops2, ccz1, ccz2):
    g1 = gate(K.CCZ if ccz1 else K.TOFFOLI, *ops1)
    g2 = gate(K.CCZ if ccz2 else K.TOFFOLI, *ops2)
    assert can_parallelize_toffoli(g1, g2) == can_parallelize_toffoli(g2, g1)


def test_json_roundtrip():
    sched = decomp.toffoli_mb()
    again = Schedule.from_json(sched.to_json())
    assert [[(g.kind, g.operands, g.condition) for g in m] for m in sched.moments] == [
        [(g.kind, g.operands, g.condition) for g in m] for m in again.moments
    ]


def test_json_roundtrip_sites():
    from celltiler.scheduler import full_multiplier_schedule

    sched, _ = full_multiplier_schedule(1)
    again = Schedule.from_json(sched.to_json())
    assert sched.to_json() == again.to_json()
