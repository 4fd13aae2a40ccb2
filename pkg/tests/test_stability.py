import random

import pytest
from hypothesis import given, settings, strategies as st

from corpus import periodic_stream
from turingcat.category import MINUS, NAT, PLUS, BudgetExhausted
from turingcat.coding import pair
from turingcat.machine import DIVERGE, SUCCESSOR, Halted, MachineCode, Undefined, universal
from turingcat.stability import (
    PeriodicStream, coerce_K, dec_B, decide, decided_by_tail, decision_G, finite_stream,
    g_sweep, is_l_stable, omega, ord_graph, raw_points, stabilization_oracle, stable_set,
    stream_decided_set, verdict_of,
)

signed = st.lists(st.tuples(st.integers(0, 4), st.sampled_from([PLUS, MINUS])), max_size=12)
streams = st.builds(lambda seed: periodic_stream(random.Random(seed)), st.integers(0, 10**9))


@given(signed)
def test_stable_set_is_pointwise_l_stability(l):
    elems = {b for b, _ in l}
    assert stable_set(l) == {b for b in elems if is_l_stable(l, b)}


def test_l_stability_examples():
    l = [(1, PLUS), (2, PLUS), (1, MINUS), (2, MINUS), (2, PLUS)]
    assert not is_l_stable(l, 1)
    assert is_l_stable(l, 2)
    assert not is_l_stable(l, 3)


@given(streams)
def test_oracle_matches_a_long_prefix(s):
    # past the first tail round, stable means l-stable at every cut of the next round
    start = len(s.prefix) + len(s.tail)
    cuts = [stable_set(s.take(n)) for n in range(start, start + len(s.tail) + 1)]
    assert stabilization_oracle(s) == frozenset(set.intersection(*cuts))


@given(streams)
@settings(max_examples=15)
def test_sweep_matches_pointwise_decisions(s):
    code = s.machine(delay=3)
    steps = list(g_sweep(code, NAT, 12))
    elems = {b for b, _ in s.prefix + s.tail}
    for n in (0, 5, 12):
        for b in elems:
            assert (b in steps[n].plus) == (decision_G(b, code, n) == PLUS)


def test_decision_machine_agrees_with_G():
    s = PeriodicStream(((0, PLUS), (1, PLUS)), ((1, MINUS), (2, PLUS)))
    code = s.machine()
    d = dec_B(code)
    for n in range(8):
        for b in range(3):
            assert decide(d, b, n) == decision_G(b, code, n)


def test_decided_set_matches_oracle_with_delays():
    s = PeriodicStream(((3, PLUS), (0, MINUS)), ((0, PLUS), (1, PLUS), (1, MINUS)))
    assert stream_decided_set(s, delay=2) == stabilization_oracle(s) == {0, 3}


def test_verdicts():
    assert str(verdict_of([MINUS, MINUS])) == "unknown"
    assert str(verdict_of([MINUS, PLUS, PLUS])) == "plus-stable-so-far"
    assert str(verdict_of([PLUS, MINUS, PLUS, MINUS])) == "refuted-at(3)"


def test_decided_by_tail_requires_periodicity():
    assert decided_by_tail([MINUS, PLUS, PLUS, PLUS], 1)
    assert not decided_by_tail([PLUS, MINUS, PLUS, MINUS], 2)
    with pytest.raises(ValueError):
        decided_by_tail([PLUS, MINUS, MINUS, MINUS], 2)


def test_ord_graph_rejects_conflicting_points():
    assert ord_graph([(2, 5, PLUS), None, (0, 1, MINUS)]) == [(1, MINUS), (5, PLUS)]
    with pytest.raises(ValueError):
        ord_graph([(0, 1, PLUS), (0, 1, MINUS)])


def test_finite_and_empty_streams():
    code = finite_stream({0: (4, PLUS), 3: (4, MINUS)})
    assert decision_G(4, code, 2) == PLUS
    assert decision_G(4, code, 10) == MINUS
    assert decision_G(0, MachineCode.of(DIVERGE), 5) == MINUS


def test_K_drops_off_image_outputs():
    # 0 is not a pair code, so K leaves the stream undefined there
    code = raw_points({0: 0, 1: pair(3, 1)})
    k = coerce_K(code, NAT)
    assert universal(k, 0, 100, detect_loops=True).proven_divergent
    assert universal(k, 1, 100) == Halted(pair(3, 1))


def test_omega_keeps_signs_only():
    o = omega(MachineCode.of(SUCCESSOR), NAT)
    # pair(0, 0) = 1 and the successor answers 2, which is not a sign
    assert universal(o, pair(0, 0), 100, detect_loops=True).proven_divergent
    assert universal(o, 0, 100, detect_loops=True).proven_divergent
    with pytest.raises(Undefined):
        decide(o, 0, 0)


def test_budget_exhaustion_is_an_error():
    s = PeriodicStream((), ((0, PLUS),))
    with pytest.raises(BudgetExhausted):
        decision_G(0, s.machine(), 50, fuel=30)
