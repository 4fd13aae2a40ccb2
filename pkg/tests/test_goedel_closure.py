import pytest

from turingcat.category import MINUS, PLUS, BudgetExhausted, _plist_encode
from turingcat.coding import pair
from turingcat.fol import Imp, check_proof, parse
from turingcat.fol.encoding import SENTENCES
from turingcat.goedel import ClosureRun, closure_C, closure_entries, premise_lists
from turingcat.goedel.closure import block_length
from turingcat.machine import DIVERGE, Halted, MachineCode, universal
from turingcat.stability import PeriodicStream, finite_stream

P, Q = parse("p"), parse("q")


def test_premise_lists():
    assert premise_lists(0) == [(), (0,)]
    l2 = premise_lists(2)
    assert len(l2) == 8
    assert l2 == sorted(l2, key=_plist_encode)
    assert set(l2) == {(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)}


def test_block_lengths():
    run = ClosureRun(MachineCode.of(DIVERGE))
    total = 0
    for k in range(4):
        total += block_length(k)
        run.upto(total - 1)
        assert len(run.entries) == total


@pytest.fixture(scope="module")
def mp_entries():
    s = PeriodicStream(((P, PLUS), (Imp(P, Q), PLUS)), ((P, PLUS),))
    return closure_entries(s.machine(SENTENCES), 200)


def test_modus_ponens_consequence_appears(mp_entries):
    hits = [e for e in mp_entries if e.sentence == Q and e.sign == PLUS]
    assert hits
    first = hits[0]
    assert first.rank == 22 and first.indices == (0, 1) and first.step == 2


def test_every_entry_carries_a_checked_proof(mp_entries):
    for e in mp_entries:
        assert e.proof[-1].formula == e.sentence
        assert check_proof(e.proof, e.premises)


def test_zeta_reflects_stability():
    # p is asserted and then retracted, so anything resting on it is signed -
    s = finite_stream({0: (P, PLUS), 1: (P, MINUS), 2: (Q, PLUS)}, SENTENCES)
    es = closure_entries(s, 150)
    on_p = {e.sign for e in es if P in e.premises}
    assert on_p == {MINUS}
    assert any(e.sign == PLUS and e.premises == [Q] for e in es)
    assert all(e.sign == PLUS for e in es if not e.premises)


def test_divergent_stream_gives_pure_logic():
    es = closure_entries(MachineCode.of(DIVERGE), 30, point_fuel=50)
    assert all(e.points == () and e.sign == PLUS for e in es)


def test_macro_agrees_with_entries(mp_entries):
    s = PeriodicStream(((P, PLUS), (Imp(P, Q), PLUS)), ((P, PLUS),))
    c = closure_C(s.machine(SENTENCES))
    for n in (0, 7, 22, 40):
        out = universal(c, n, 10**6)
        e = mp_entries[n]
        assert out == Halted(pair(SENTENCES(e.sentence), int(e.sign == PLUS)))


def test_budget_exhaustion():
    with pytest.raises(BudgetExhausted):
        closure_entries(MachineCode.of(DIVERGE), 200, point_fuel=100, fuel=300)
