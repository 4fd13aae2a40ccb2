"""Arithmetization of "T is not Omega(T)-decided" over {0, s, +, *, <}.

A computation of a register program with R registers is a sequence of
configurations (pc, r_0, ..., r_{R-1}). Entry k of configuration i is stored
as beta(c, d, i*(R+1) + k) where beta(c, d, j) = c mod (1 + (j+1)d), and the
whole computation is the number pair(pair(c, d), L), L being the index of the
halting configuration. ``Tr(b, m, t, y)`` says that t is such a computation on
input pair(b, m) ending with output y. Every quantifier in it is bounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .. import coding
from ..fol.arith import classify_prenex, eval_sigma0, is_delta0
from ..fol.syntax import (
    And, Eq, Exists, Forall, Formula, Imp, Not, Or, Term, Var,
    S, ZERO, bexists, bforall, conj, disj, free_vars, lt, numeral, plus, times,
)
from ..fol.translate import Translation
from ..machine import DIVERGE, MachineCode, Macro, Program, _as_term, pairing_prologue

#: base used to write large constants compactly
BASE = 16


def constant(n: int) -> Term:
    """A closed term denoting n of depth logarithmic in its digit count:
    numerals below BASE, otherwise hi * BASE^k + lo split at half the digits."""
    if n < BASE:
        return numeral(n)
    digits = 0
    m = n
    while m:
        m //= BASE
        digits += 1
    k = digits // 2
    hi, lo = divmod(n, BASE ** k)
    t = times(constant(hi), _power(k))
    return plus(t, constant(lo)) if lo else t


@lru_cache(maxsize=None)
def _power(k: int) -> Term:
    """BASE^k by balanced products."""
    if k == 1:
        return numeral(BASE)
    return times(_power(k // 2), _power(k - k // 2))


def two(t: Term) -> Term:
    return times(numeral(2), t)


def pair_eq(z: Term, a: Term, b: Term) -> Formula:
    """z = pair(a, b), i.e. 2z = (a+b)(a+b+1) + 2b + 2."""
    s = plus(a, b)
    return Eq(two(z), plus(plus(times(s, S(s)), two(b)), numeral(2)))


def beta_eq(c: Term, d: Term, j: Term, v: Term, q: str) -> Formula:
    """beta(c, d, j) = v."""
    mod = S(times(S(j), d))
    return bexists(q, S(c), And(Eq(c, plus(times(Var(q), mod), v)), lt(v, mod)))


def lower(code) -> tuple[Program, bool]:
    """A register program with the behaviour of ``code`` when one is known.

    Register programs stand for themselves, sequencing concatenates and the
    pairing routine becomes its register prologue. Other library routines
    have no register-level computation; they are replaced by a program with
    none (second component False).
    """
    term = _as_term(code)
    if isinstance(term, Program):
        return term, True
    if isinstance(term, Macro):
        if term.name == "SEQ":
            f, okf = lower(term.args[0])
            g, okg = lower(term.args[1])
            if okf and okg:
                return f + g, True
        elif term.name == "PAIRL":
            return pairing_prologue(term.args[0]), True
    return DIVERGE, False


class _Names:
    """Fresh variable names for one Tr instance; none clash with m, n, M, N, t, u."""

    def __init__(self, stem: str):
        self.stem = stem
        self.k = 0

    def __call__(self) -> str:
        self.k += 1
        return f"{self.stem}{self.k}"


def _idx(i: Term, width: int, k: int) -> Term:
    return plus(times(i, numeral(width)), numeral(k))


def _lookup(c, d, j, names, body_of) -> Formula:
    """exists v < c+1 with beta(c, d, j) = v, then body_of(v)."""
    v = names()
    return bexists(v, S(c), And(beta_eq(c, d, j, Var(v), names()), body_of(Var(v))))


def _lookups(c, d, js, names, body_of) -> Formula:
    vals: list[Term] = []

    def go(k):
        if k == len(js):
            return body_of(vals)
        return _lookup(c, d, js[k], names, lambda v: (vals.append(v), go(k + 1))[1])

    return go(0)


def _transition(p: Program, pc, regs, pc2, regs2) -> Formula:
    R = len(regs)

    def keep(*but):
        return [Eq(regs2[r], regs[r]) for r in range(R) if r not in but]

    cases = []
    for k, ins in enumerate(p.instructions):
        at = Eq(pc, numeral(k))
        nxt = Eq(pc2, numeral(k + 1))
        if ins.op == "INC":
            cases.append(conj([at, nxt, Eq(regs2[ins.a], S(regs[ins.a]))] + keep(ins.a)))
        elif ins.op == "DECJZ":
            zero = conj([Eq(regs[ins.a], ZERO), Eq(pc2, numeral(ins.b))] + keep())
            dec = conj([Eq(regs[ins.a], S(regs2[ins.a])), nxt] + keep(ins.a))
            cases.append(And(at, Or(zero, dec)))
        elif ins.op == "CONST":
            cases.append(conj([at, nxt, Eq(regs2[ins.a], numeral(ins.b))] + keep(ins.a)))
        elif ins.op == "COPY":
            cases.append(conj([at, nxt, Eq(regs2[ins.a], regs[ins.b])] + keep(ins.a)))
        elif ins.op == "JMP":
            cases.append(conj([at, Eq(pc2, numeral(ins.a))] + keep()))
    if not cases:
        return Not(Eq(ZERO, ZERO))
    return disj(cases)


def _halting(p: Program, pc, regs, y) -> Formula:
    cases = [And(Eq(pc, numeral(len(p))), Eq(y, regs[0]))]
    for k, ins in enumerate(p.instructions):
        if ins.op == "HALT":
            cases.append(And(Eq(pc, numeral(k)), Eq(y, regs[ins.a])))
    return disj(cases)


def trace_core(p: Program, b: Term, m: Term, c: Term, d: Term, L: Term, y: Term, stem: str) -> Formula:
    """(c, d) beta-codes a run of p on pair(b, m) halting at step L with output y."""
    R = p.registers
    W = R + 1
    names = _Names(stem)
    init = [beta_eq(c, d, numeral(0), ZERO, names())]
    init.append(_lookup(c, d, numeral(1), names, lambda v: pair_eq(v, b, m)))
    init += [beta_eq(c, d, numeral(k + 1), ZERO, names()) for k in range(1, R)]
    i = names()
    iv = Var(i)
    cur = [_idx(iv, W, k) for k in range(W)]
    nxt = [_idx(S(iv), W, k) for k in range(W)]
    step = bforall(i, L, _lookups(
        c, d, cur + nxt, names,
        lambda vs: _transition(p, vs[0], vs[1:W], vs[W], vs[W + 1:]),
    ))
    last = [_idx(L, W, k) for k in range(W)]
    final = _lookups(c, d, last, names, lambda vs: _halting(p, vs[0], vs[1:], y))
    return conj(init + [step, final])


def trace_predicate(p: Program, b: Term, m: Term, t: Term, y: Term, stem: str) -> Formula:
    """Tr: t = pair(pair(c, d), L) for a halting run on pair(b, m) with output y."""
    a, L, c, d = (f"{stem}a", f"{stem}l", f"{stem}c", f"{stem}d")
    inner = bexists(c, S(Var(a)), bexists(d, S(Var(a)), And(
        pair_eq(Var(a), Var(c), Var(d)),
        trace_core(p, b, m, Var(c), Var(d), Var(L), y, stem),
    )))
    return bexists(a, S(t), bexists(L, S(t), And(pair_eq(t, Var(a), Var(L)), inner)))


def matrix(p: Program, b: int, M: str = "m", N: str = "n") -> Formula:
    """gamma(M, N): M = pair(m, t) with t a run answering + at m, and for
    N = pair(n, u) with n >= m, u is not a run answering - at n."""
    bt = constant(b)
    plus_side = trace_predicate(p, bt, Var("i"), Var("t"), numeral(1), "x")
    minus_side = trace_predicate(p, bt, Var("j"), Var("u"), ZERO, "z")
    later = bforall("j", S(Var(N)), bforall("u", S(Var(N)), Imp(
        And(pair_eq(Var(N), Var("j"), Var("u")), Not(lt(Var("j"), Var("i")))),
        Not(minus_side),
    )))
    return bexists("i", S(Var(M)), bexists("t", S(Var(M)), conj([
        pair_eq(Var(M), Var("i"), Var("t")), plus_side, later,
    ])))


@dataclass(frozen=True)
class GoedelSentence:
    """s(T) = not exists m forall n gamma(m, n), with its Pi2 certificate."""

    code: MachineCode
    sentence: Formula  # the Pi2 sentence s(T)
    matrix: Formula  # gamma(m, n), Delta0 with free variables m, n
    certificate: Formula  # forall m exists n not gamma(m, n)
    negation: Formula  # exists m forall n gamma(m, n)
    exact: bool  # False when the code is a library routine without a register realization
    translated: Formula | None = None

    def gamma(self, m: int, n: int) -> bool:
        """gamma(m, n) by instantiating numerals and evaluating."""
        from ..fol.syntax import instantiate
        return eval_sigma0(instantiate(instantiate(self.matrix, "m", numeral(m)), "n", numeral(n)))

    def check_shape(self) -> None:
        assert not free_vars(self.sentence)
        assert is_delta0(self.matrix) and free_vars(self.matrix) <= {"m", "n"}
        assert str(classify_prenex(self.negation)) == "Sigma2"
        assert str(classify_prenex(self.sentence)) == "Pi2"


@lru_cache(maxsize=256)
def _sentence(number: int) -> GoedelSentence:
    code = MachineCode(number)
    p, exact = lower(code)
    g = matrix(p, number)
    neg = Exists("m", Forall("n", g))
    return GoedelSentence(code, Not(neg), g, Forall("m", Exists("n", Not(g))), neg, exact)


def sentence_s(code) -> GoedelSentence:
    """s(code): code is not decided by the decision machine Omega(code) at
    the input code itself."""
    return _sentence(MachineCode.of(_as_term(code)).number)


def translated(g: GoedelSentence, t: Translation) -> GoedelSentence:
    from dataclasses import replace
    return replace(g, translated=t(g.sentence))


# independent decoding used by the oracle side -------------------------------


def beta(c: int, d: int, j: int) -> int:
    return c % (1 + (j + 1) * d)


def decode_run(t: int) -> tuple[int, int, int] | None:
    """(c, d, L) for t = pair(pair(c, d), L); None for t = 0."""
    if t == 0:
        return None
    a, L = coding.unpair(t)
    if a == 0:
        return None
    c, d = coding.unpair(a)
    return c, d, L


__all__ = [
    "GoedelSentence", "beta", "constant", "decode_run", "lower", "matrix", "pair_eq",
    "sentence_s", "trace_core", "trace_predicate", "translated",
]
