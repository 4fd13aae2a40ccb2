import random

import pytest
from hypothesis import given, strategies as st

from turingcat.coding import bytes_to_nat, pair
from turingcat.machine import (
    ADDITION, DIVERGE, FIRST, IDENTITY, SECOND, SENTINEL, SUCCESSOR, UNPAIR, Halted, InvalidCode,
    MachineCode, Macro, Meter, OutOfFuel, Program, decode, is_code, parse_program, random_program, run,
    seq, smn, totalize, totalized_prefix, trace, universal,
)

programs = st.builds(
    lambda seed, n: random_program(random.Random(seed), n),
    st.integers(0, 10**9), st.integers(1, 10),
)


def test_stock_programs():
    assert run(SUCCESSOR, 4, 10) == Halted(5)
    assert run(IDENTITY, 4, 10) == Halted(4)
    assert run(ADDITION, pair(3, 4), 10**4) == Halted(7)
    assert run(FIRST, pair(3, 4), 10**4) == Halted(3)
    assert run(SECOND, pair(3, 4), 10**4) == Halted(4)
    assert run(DIVERGE, 0, 100) == OutOfFuel()
    assert run(DIVERGE, 0, 100, detect_loops=True) == OutOfFuel(proven_divergent=True)


def test_unpair_is_undefined_at_zero():
    assert run(UNPAIR, 0, 50, detect_loops=True).proven_divergent


def test_falling_off_the_end_returns_r0():
    p = parse_program("INC 0\nINC 0\n")
    assert run(p, 1, 10) == Halted(3)


@given(programs, st.integers(0, 20))
def test_run_agrees_with_trace(p, x):
    # trace is a separate stepper; its last state is the halting one
    states = trace(p, x, 500)
    out = run(p, x, 500)
    pc, regs = states[-1]
    stopped = pc >= len(p) or p.instructions[pc].op == "HALT"
    if isinstance(out, Halted):
        assert stopped
        r = 0 if pc >= len(p) else p.instructions[pc].a
        assert out.value == regs[r]
    else:
        assert not stopped or len(states) == 501


@given(programs)
def test_text_round_trip(p):
    assert parse_program(p.to_text()) == p


@given(programs)
def test_code_round_trip(p):
    c = MachineCode.of(p)
    assert is_code(c.number)
    assert decode(c.number) == p
    assert MachineCode(c.number).text == c.text


def test_code_number_is_canonical_text():
    assert MachineCode.of(SUCCESSOR).number == bytes_to_nat(b"(prog (INC 0) (HALT 0))")


@given(st.integers(0, 10**12))
def test_image_test_is_sound(n):
    if is_code(n):
        assert MachineCode(n).number == n
    else:
        with pytest.raises(InvalidCode):
            decode(n)


def test_non_canonical_spelling_is_rejected():
    assert not is_code(bytes_to_nat(b"(prog  (INC 0))"))
    assert not is_code(bytes_to_nat(b"(prog (INC 00))"))
    assert not is_code(bytes_to_nat(b"(NOPE 1)"))


@given(programs, st.integers(0, 6), st.integers(0, 6))
def test_smn_agrees_with_direct_run(p, a, b):
    direct = run(p, pair(a, b), 2000)
    if isinstance(direct, Halted):
        assert universal(smn(MachineCode.of(p), a), b, 10**5) == direct


def test_smn_on_library_terms():
    import turingcat.category  # noqa: F401  registers PROJ

    g = seq(Macro("PROJ", (0, "pair")), SUCCESSOR)
    assert universal(smn(g, 10**30), 1, 10**6) == Halted(10**30 + 1)


def test_program_concatenation():
    p = SUCCESSOR + SUCCESSOR + Program(())  # empty tail falls through
    assert run(p, 0, 100) == Halted(2)
    assert run(FIRST + SUCCESSOR, pair(5, 1), 10**4) == Halted(6)


def test_meter_exhaustion_is_reported():
    assert universal(DIVERGE, 0, 1000) == OutOfFuel()
    m = Meter(10)
    assert m.available() == 10
    sub = m.sub(100)
    assert sub.available() == 10


def test_totalized_domain_and_sentinel():
    # defined exactly on even inputs, with output x + 1
    half = parse_program("""
Lloop:  DECJZ 0 Lyes
        DECJZ 0 Lno
        INC 1
        INC 1
        JMP Lloop
Lno:    JMP Lno
Lyes:   INC 1
        HALT 1
""")
    out = totalized_prefix(half, 40, Meter(10**7))
    values = {v for v in out if v != SENTINEL}
    assert values <= {x + 1 for x in range(0, 41, 2)}
    assert {1, 3, 5, 7} <= values
    assert universal(totalize(half), 3, 10**6) == Halted(out[3])


def test_totalized_divergent_code_is_all_sentinel():
    assert totalized_prefix(DIVERGE, 15, Meter(10**6)) == [SENTINEL] * 16


def test_macro_code_round_trip():
    t = MachineCode.of(Macro("TOT", (SUCCESSOR,)))
    assert decode(t.number) == t.term
