import pytest
from hypothesis import given, settings, strategies as st

from conftest import arith_formulas, close
from turingcat.fol import (
    ARITH, FORMULAS, IDENTITY, SENTENCES, VON_NEUMANN, And, Eq, Exists, Fn, Forall, Imp, Level,
    Not, NotBounded, Or, OutOfLanguage, ParseError, Rel, Var, check_proof, classify_prenex,
    closure, eval_sigma0, formula_encoding, free_vars, is_delta0, numeral, parse, phi_closure,
    q_axioms, show,
)
from turingcat.fol.arith import eval_delta0
from turingcat.fol.proofs import Just, Line, axiom, is_axiom, mp, premise
from turingcat.fol.syntax import bexists, bforall, instantiate, numeral_value, size, term_vars

# ---------------------------------------------------------------- text


@given(arith_formulas())
def test_show_parse_round_trip(f):
    assert parse(show(f)) == f


def test_parse_examples():
    f = parse("forall x. x < s(x) & ~(x = 0) -> exists y. y + 1 = x")
    assert isinstance(f, Forall)
    assert parse("3 = s(s(s(0)))") == Eq(numeral(3), numeral(3))
    assert parse("x in omega") == Rel("in", (Var("x"), Fn("omega")))
    with pytest.raises(ParseError):
        parse("forall . x = x")
    with pytest.raises(ParseError):
        parse("x = x )")


def test_numerals_print_as_digits():
    assert show(Eq(numeral(3), Var("x"))) == "3 = x"
    assert numeral_value(numeral(12)) == 12
    assert numeral_value(Fn("s", (Var("x"),))) is None


# ---------------------------------------------------------------- numbering


@given(arith_formulas())
def test_formula_code_round_trip(f):
    n = FORMULAS(f)
    assert FORMULAS.contains(n)
    assert FORMULAS.decode(n) == f
    g = close(f)
    assert SENTENCES.decode(SENTENCES(g)) == g


def test_prime_power_formula_scheme():
    enc = formula_encoding(scheme="list")
    f = parse("x = x")
    assert enc.decode(enc(f)) == f


def test_sentence_image_excludes_open_formulas():
    f = parse("x = 0")
    assert FORMULAS.contains(FORMULAS(f))
    assert not SENTENCES.contains(FORMULAS(f))
    with pytest.raises(ValueError):
        SENTENCES(f)


def test_formula_image_scan():
    # names are byte strings, so codes are sparse; scan windows around real ones
    hits = 0
    for text in ["x = x", "~(0 = y)", "forall x. x < s(x)"]:
        c = FORMULAS(parse(text))
        for n in range(c - 3000, c + 3000):
            if FORMULAS.contains(n):
                hits += 1
                assert FORMULAS(FORMULAS.decode(n)) == n
    assert hits >= 3


# ---------------------------------------------------------------- arithmetic


def _oracle(f, env):
    """Truth in N by plain recursion; bounded quantifiers only."""
    def term(t):
        if isinstance(t, Var):
            return env[t.name]
        vals = [term(a) for a in t.args]
        return {"0": lambda: 0, "s": lambda: vals[0] + 1,
                "+": lambda: vals[0] + vals[1], "*": lambda: vals[0] * vals[1]}[t.name]()

    if isinstance(f, Eq):
        return term(f.left) == term(f.right)
    if isinstance(f, Rel):
        return term(f.args[0]) < term(f.args[1])
    if isinstance(f, Not):
        return not _oracle(f.body, env)
    if isinstance(f, And):
        return _oracle(f.left, env) and _oracle(f.right, env)
    if isinstance(f, Or):
        return _oracle(f.left, env) or _oracle(f.right, env)
    if isinstance(f, Imp):
        return not _oracle(f.left, env) or _oracle(f.right, env)
    guard, body = f.body.left, f.body.right
    top = term(guard.args[1])
    vals = [_oracle(body, {**env, f.var: v}) for v in range(top)]
    return any(vals) if isinstance(f, Exists) else all(vals)


def bounded():
    small = st.integers(0, 6).map(numeral)
    terms = st.one_of(small, st.sampled_from(["x", "y"]).map(Var))
    terms = st.recursive(terms, lambda t: st.tuples(st.sampled_from(["+", "*"]), t, t)
                         .map(lambda a: Fn(a[0], (a[1], a[2]))), max_leaves=3)
    atoms = st.one_of(st.tuples(terms, terms).map(lambda a: Eq(*a)),
                      st.tuples(terms, terms).map(lambda a: Rel("<", a)))

    def grow(f):
        return st.one_of(
            f.map(Not),
            st.tuples(st.sampled_from([And, Or, Imp]), f, f).map(lambda a: a[0](a[1], a[2])),
            st.tuples(st.sampled_from([bexists, bforall]), st.sampled_from(["x", "y"]), terms, f)
            .filter(lambda a: a[1] not in term_vars(a[2]))
            .map(lambda a: a[0](a[1], a[2], a[3])),
        )

    return st.recursive(atoms, grow, max_leaves=6)


@given(bounded(), st.integers(0, 5), st.integers(0, 5))
@settings(max_examples=300)
def test_evaluator_matches_oracle(f, x, y):
    env = {"x": x, "y": y}
    assert is_delta0(f)
    want = _oracle(f, env)
    assert eval_delta0(f, env, solve=False) == want
    assert eval_delta0(f, env) == want


def test_equation_guided_search_on_large_bounds():
    # exists z < 10^12. z + z = 2 * 10^11 needs the solver, not a scan
    big = Fn("*", (Var("k"), Var("g")))
    f = bexists("z", big, Eq(Fn("+", (Var("z"), Var("z"))), Var("w")))
    assert eval_sigma0(f, {"w": 2 * 10**11, "k": 1000, "g": 10**9})
    assert not eval_sigma0(f, {"w": 2 * 10**11 + 1, "k": 1000, "g": 10**9})


def test_classification():
    d0 = parse("exists x. x < 5 & x = 3")
    assert classify_prenex(d0) == Level("Delta0", 0)
    s1 = parse("exists x. x = x")
    assert classify_prenex(s1) == Level("Sigma", 1)
    s2 = parse("exists m. forall n. m < n -> m = n")
    assert classify_prenex(s2) == Level("Sigma", 2)
    assert classify_prenex(Not(s2)) == Level("Pi", 2)
    with pytest.raises(NotBounded):
        eval_sigma0(s1)


def test_q_axioms_are_sentences():
    qs = q_axioms()
    assert len(qs) == 9
    assert all(not free_vars(q) and ARITH.admits(q) for q in qs)


def test_instantiate_avoids_capture():
    f = parse("exists y. x < y")
    g = instantiate(f, "x", Var("y"))
    assert free_vars(g) == {"y"}
    assert isinstance(g, Exists) and g.var != "y"


# ---------------------------------------------------------------- proofs


P, Q = parse("p"), parse("q")


def test_checker_accepts_modus_ponens():
    proof = [premise(P, 0), premise(Imp(P, Q), 1), mp(Q, 0, 1)]
    assert check_proof(proof, [P, Imp(P, Q)])


def test_checker_rejects_bad_lines():
    assert not check_proof([mp(Q, 0, 1)], [])
    assert not check_proof([premise(Q, 0)], [P])
    assert not check_proof([axiom(Imp(P, Q), "P1")], [])
    bad = check_proof([premise(P, 0), Line(Q, Just("mp", (0, 0)))], [P])
    assert not bad and bad.line == 1


def test_axiom_schemas():
    assert is_axiom(Imp(P, Imp(Q, P)), "P1")
    assert is_axiom(parse("(forall x. x = x) -> 0 = 0"), "U1")
    assert is_axiom(parse("0 = 0"), "E1")
    assert not is_axiom(parse("(forall x. exists y. x = y) -> exists y. y = y"), "U1")


def test_closure_emits_premises_first_and_checks_every_proof():
    c = closure([P, Imp(P, Q)])
    got = []
    for n in range(40):
        f, proof = c.item(n)
        assert proof[-1].formula == f
        assert check_proof(proof, c.premises)
        got.append(f)
    assert got[:2] == [P, Imp(P, Q)]
    assert Q in got
    assert len(set(got)) == len(got)


def test_phi_closure_is_deterministic():
    a = [phi_closure([P], n)[0] for n in range(15)]
    b = [closure([P]).item(n)[0] for n in range(15)]
    assert a == b


def test_closure_rejects_open_premises():
    with pytest.raises(ValueError):
        closure([parse("x = 0")])


# ---------------------------------------------------------------- translations


@given(arith_formulas())
def test_von_neumann_is_a_homomorphism(f):
    t = VON_NEUMANN
    assert t(Not(f)) == Not(t(f))
    assert t(And(f, f)) == And(t(f), t(f))
    assert free_vars(t(f)) == free_vars(f)
    assert IDENTITY(f) == f


def test_von_neumann_relativizes_quantifiers():
    f = VON_NEUMANN(parse("forall x. x < s(x)"))
    assert show(f) == "forall x. x in omega -> x in suc(x)"
    assert size(f) > size(parse("forall x. x < s(x)"))


def test_translation_rejects_foreign_symbols():
    with pytest.raises(OutOfLanguage):
        VON_NEUMANN(parse("x in omega"))
