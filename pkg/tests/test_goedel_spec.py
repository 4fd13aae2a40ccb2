import pytest

from corpus import sentence_corpus
from turingcat.category import PLUS
from turingcat.fol import IDENTITY, VON_NEUMANN, Not
from turingcat.fol.encoding import SENTENCES
from turingcat.goedel import SpeculativeStream, alpha, enumerator_J, speculative_entry
from turingcat.machine import DIVERGE, MachineCode
from turingcat.stability import finite_stream, stable_set

H = 60


@pytest.fixture(scope="module")
def runs():
    out = []
    for s in sentence_corpus(6, seed=11):
        spec = SpeculativeStream(s.machine(SENTENCES), IDENTITY)
        out.append((s, spec.prefix(2 * H + 1)))
    return out


def test_parity_layout(runs):
    for s, pre in runs:
        for n, e in enumerate(pre):
            k, odd = divmod(n, 2)
            if odd:
                assert e == s.at(k)
            else:
                phi, sign = enumerator_J(k)
                assert e == (alpha(phi), sign)


def test_origin_labels():
    assert SpeculativeStream.origin(6) == ("J", 3)
    assert SpeculativeStream.origin(7) == ("stream", 3)


def test_stable_prefix_is_kept(runs):
    for s, pre in runs:
        assert stable_set(s.take(H + 1)) <= stable_set(pre)


def test_no_sentence_and_negation_both_stable(runs):
    for _, pre in runs:
        st = stable_set(pre)
        assert not any(Not(f) in st for f in st)


def test_totality_transfer():
    s = sentence_corpus(1, seed=3)[0]
    assert None not in SpeculativeStream(s.machine(SENTENCES), IDENTITY).prefix(41)
    f = s.at(0)[0]
    partial = finite_stream({1: (f, PLUS)}, SENTENCES)
    pre = SpeculativeStream(partial, IDENTITY).prefix(9, fuel=2000)
    assert [n for n, e in enumerate(pre) if e is None] == [1, 5, 7, 9]
    nowhere = SpeculativeStream(MachineCode.of(DIVERGE), IDENTITY).prefix(5, fuel=500)
    assert [e is None for e in nowhere] == [False, True] * 3


def test_translated_claims():
    f, sign = speculative_entry(4, VON_NEUMANN)
    phi, sign2 = enumerator_J(4)
    assert f == VON_NEUMANN(alpha(phi)) and sign == sign2
