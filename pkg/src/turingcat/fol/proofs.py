"""Hilbert-style proofs and the deductive-closure enumerator.

Axiom schemas (metavariables a, b, c range over formulas)::

    P1  a -> (b -> a)
    P2  (a -> b) -> ((a -> (b -> c)) -> (a -> c))
    P3  a -> (b -> a & b)
    P4  a & b -> a                  P5  a & b -> b
    P6  a -> a | b                  P7  b -> a | b
    P8  (a -> c) -> ((b -> c) -> (a | b -> c))
    P9  (a -> b) -> ((a -> ~b) -> ~a)
    P10 ~~a -> a
    U1  (forall x. a) -> a[t/x]            t free for x in a
    U2  a[t/x] -> exists x. a              t free for x in a
    U3  (forall x. b -> a) -> (b -> forall x. a)     x not free in b
    U4  (forall x. a -> b) -> ((exists x. a) -> b)   x not free in b
    E1  t = t
    E2  s = t -> (A -> A')   A atomic, A' is A with some occurrences of s replaced by t

Rules: modus ponens, and generalization (from a infer forall x. a). Plain
generalization is sound here because premises are required to be sentences.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .syntax import (
    ARITH, And, Eq, Exists, Fn, Forall, Formula, Imp, Not, Or, Rel, Signature, Term, Var,
    free_for, free_vars, is_formula, signature_of, size, subst, walk,
)
from .text import show


@dataclass(frozen=True)
class Just:
    """Justification of a proof line.

    kind is "axiom" (data = (schema,)), "premise" (data = (index,)),
    "mp" (data = (i, j): line i is a, line j is a -> b) or
    "gen" (data = (i, x)).
    """

    kind: str
    data: tuple


@dataclass(frozen=True)
class Line:
    formula: Formula
    just: Just


Proof = tuple  # of Line


def axiom(f: Formula, schema: str) -> Line:
    return Line(f, Just("axiom", (schema,)))


def premise(f: Formula, i: int) -> Line:
    return Line(f, Just("premise", (i,)))


def mp(f: Formula, i: int, j: int) -> Line:
    return Line(f, Just("mp", (i, j)))


def gen(f: Formula, i: int, x: str) -> Line:
    return Line(f, Just("gen", (i, x)))


# --------------------------------------------------------------------------
# schema recognition


def _imp(f):
    return (f.left, f.right) if isinstance(f, Imp) else None


def _p1(f):
    a = _imp(f)
    return a is not None and isinstance(a[1], Imp) and a[1].right == a[0]


def _p2(f):
    if not isinstance(f, Imp) or not isinstance(f.left, Imp) or not isinstance(f.right, Imp):
        return False
    a, b = f.left.left, f.left.right
    mid, last = f.right.left, f.right.right
    return (mid == Imp(a, Imp(b, getattr(last, "right", None)))
            and isinstance(last, Imp) and last.left == a)


def _p3(f):
    return (isinstance(f, Imp) and isinstance(f.right, Imp)
            and f.right.right == And(f.left, f.right.left))


def _p4(f):
    return isinstance(f, Imp) and isinstance(f.left, And) and f.right == f.left.left


def _p5(f):
    return isinstance(f, Imp) and isinstance(f.left, And) and f.right == f.left.right


def _p6(f):
    return isinstance(f, Imp) and isinstance(f.right, Or) and f.right.left == f.left


def _p7(f):
    return isinstance(f, Imp) and isinstance(f.right, Or) and f.right.right == f.left


def _p8(f):
    if not (isinstance(f, Imp) and isinstance(f.left, Imp) and isinstance(f.right, Imp)):
        return False
    a, c = f.left.left, f.left.right
    r = f.right
    if not (isinstance(r.left, Imp) and isinstance(r.right, Imp)):
        return False
    b, c2 = r.left.left, r.left.right
    return c2 == c and r.right == Imp(Or(a, b), c)


def _p9(f):
    if not (isinstance(f, Imp) and isinstance(f.left, Imp)):
        return False
    a, b = f.left.left, f.left.right
    return f.right == Imp(Imp(a, Not(b)), Not(a))


def _p10(f):
    return (isinstance(f, Imp) and isinstance(f.left, Not) and isinstance(f.left.body, Not)
            and f.left.body.body == f.right)


def match_instance(a: Formula, x: str, b: Formula) -> Term | None:
    """A term t, free for x in a, with a[t/x] == b; None if there is none."""
    found: list[Term] = []

    def terms(u, v) -> bool:
        if isinstance(u, Var) and u.name == x:
            if found:
                return found[0] == v
            found.append(v)
            return True
        if isinstance(u, Var):
            return u == v
        return (isinstance(v, Fn) and u.name == v.name and len(u.args) == len(v.args)
                and all(terms(p, q) for p, q in zip(u.args, v.args)))

    def forms(u, v) -> bool:
        if type(u) is not type(v):
            return False
        if isinstance(u, Eq):
            return terms(u.left, v.left) and terms(u.right, v.right)
        if isinstance(u, Rel):
            return (u.name == v.name and len(u.args) == len(v.args)
                    and all(terms(p, q) for p, q in zip(u.args, v.args)))
        if isinstance(u, Not):
            return forms(u.body, v.body)
        if isinstance(u, (And, Or, Imp)):
            return forms(u.left, v.left) and forms(u.right, v.right)
        if u.var != v.var:
            return False
        if u.var == x:
            return u == v
        return forms(u.body, v.body)

    if not forms(a, b):
        return None
    t = found[0] if found else Var(x)
    return t if free_for(a, x, t) else None


def _u1(f):
    return (isinstance(f, Imp) and isinstance(f.left, Forall)
            and match_instance(f.left.body, f.left.var, f.right) is not None)


def _u2(f):
    return (isinstance(f, Imp) and isinstance(f.right, Exists)
            and match_instance(f.right.body, f.right.var, f.left) is not None)


def _u3(f):
    if not (isinstance(f, Imp) and isinstance(f.left, Forall) and isinstance(f.left.body, Imp)):
        return False
    x, b, a = f.left.var, f.left.body.left, f.left.body.right
    return x not in free_vars(b) and f.right == Imp(b, Forall(x, a))


def _u4(f):
    if not (isinstance(f, Imp) and isinstance(f.left, Forall) and isinstance(f.left.body, Imp)):
        return False
    x, a, b = f.left.var, f.left.body.left, f.left.body.right
    return x not in free_vars(b) and f.right == Imp(Exists(x, a), b)


def _e1(f):
    return isinstance(f, Eq) and f.left == f.right


def _replaces(u, v, s: Term, t: Term) -> bool:
    if u == v or (u == s and v == t):
        return True
    return (isinstance(u, Fn) and isinstance(v, Fn) and u.name == v.name
            and len(u.args) == len(v.args)
            and all(_replaces(p, q, s, t) for p, q in zip(u.args, v.args)))


def _e2(f):
    if not (isinstance(f, Imp) and isinstance(f.left, Eq) and isinstance(f.right, Imp)):
        return False
    s, t = f.left.left, f.left.right
    a, b = f.right.left, f.right.right
    if isinstance(a, Eq) and isinstance(b, Eq):
        return _replaces(a.left, b.left, s, t) and _replaces(a.right, b.right, s, t)
    if isinstance(a, Rel) and isinstance(b, Rel):
        return (a.name == b.name and len(a.args) == len(b.args)
                and all(_replaces(p, q, s, t) for p, q in zip(a.args, b.args)))
    return False


SCHEMAS = {
    "P1": _p1, "P2": _p2, "P3": _p3, "P4": _p4, "P5": _p5, "P6": _p6, "P7": _p7,
    "P8": _p8, "P9": _p9, "P10": _p10,
    "U1": _u1, "U2": _u2, "U3": _u3, "U4": _u4,
    "E1": _e1, "E2": _e2,
}


def is_axiom(f: Formula, schema: str | None = None) -> bool:
    if schema is not None:
        return schema in SCHEMAS and SCHEMAS[schema](f)
    return any(test(f) for test in SCHEMAS.values())


# --------------------------------------------------------------------------
# checking


@dataclass(frozen=True)
class ProofCheck:
    ok: bool
    line: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def check_proof(proof: Sequence[Line], premises: Sequence[Formula]) -> ProofCheck:
    """Verify each line against earlier lines only; report the first bad one."""
    premises = list(premises)
    seen: list[Formula] = []
    for k, line in enumerate(proof):
        f, j = line.formula, line.just
        bad = None
        if not is_formula(f):
            bad = "not a formula"
        elif j.kind == "axiom":
            if not is_axiom(f, j.data[0]):
                bad = f"not an instance of {j.data[0]}"
        elif j.kind == "premise":
            i = j.data[0]
            if not (0 <= i < len(premises)) or premises[i] != f:
                bad = "no such premise"
            elif free_vars(f):
                bad = "premise is not a sentence"
        elif j.kind == "mp":
            i, m = j.data
            if not (0 <= i < k and 0 <= m < k):
                bad = "modus ponens cites a line that is not earlier"
            elif seen[m] != Imp(seen[i], f):
                bad = "modus ponens does not fit"
        elif j.kind == "gen":
            i, x = j.data
            if not 0 <= i < k:
                bad = "generalization cites a line that is not earlier"
            elif f != Forall(x, seen[i]):
                bad = "generalization does not fit"
        else:
            bad = f"unknown justification {j.kind!r}"
        if bad:
            return ProofCheck(False, k, bad)
        seen.append(f)
    return ProofCheck(True)


def proves(proof: Sequence[Line], premises: Sequence[Formula], goal: Formula) -> bool:
    return bool(proof) and proof[-1].formula == goal and bool(check_proof(proof, premises))


# --------------------------------------------------------------------------
# pools of terms, variables and formulas, in size-then-text order


def _identifiers(taken: set[str]) -> Iterator[str]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    width = 1
    while True:
        for combo in product(letters, repeat=width):
            name = "".join(combo)
            if name != "in" and name not in taken:
                yield name
        width += 1


class _Universe:
    """Deterministic, exhaustive pools over a signature.

    Level L holds the terms/formulas of size <= L over the first L variables.
    Pools list premise material first, then each level's new elements sorted
    by (size, printed text).
    """

    def __init__(self, sig: Signature, seeds: Sequence[Formula]):
        self.sig = sig
        self.fun = sorted(sig.functions.items())
        self.rel = sorted(sig.relations.items())
        self.vars: list[str] = []
        self._idgen = _identifiers(set(sig.functions) | set(sig.relations))
        self._var_set: set[str] = set()
        for f in seeds:
            for node in walk(f):
                if isinstance(node, Var):
                    self._add_var(node.name)
                elif isinstance(node, (Forall, Exists)):
                    self._add_var(node.var)
        sub = {n for f in seeds for n in walk(f) if is_formula(n)}
        subt = {n for f in seeds for n in walk(f) if isinstance(n, (Var, Fn))}
        self.formulas: list[Formula] = sorted(sub, key=_key)
        self.terms: list[Term] = sorted(subt, key=_tkey)
        self._fset = set(self.formulas)
        self._tset = set(self.terms)
        self.level = 0

    def _add_var(self, v: str) -> None:
        if v not in self._var_set:
            self._var_set.add(v)
            self.vars.append(v)

    def grow(self) -> None:
        """Move to the next level, appending its new elements."""
        self.level += 1
        L = self.level
        while len(self.vars) < L:
            self._add_var(next(self._idgen))
        vs = self.vars[:L]
        terms = self._terms_upto(L, vs)
        for t in sorted((t for s in terms for t in terms[s]), key=_tkey):
            if t not in self._tset:
                self._tset.add(t)
                self.terms.append(t)
        forms = self._formulas_upto(L, vs, terms)
        for f in sorted((f for s in forms for f in forms[s]), key=_key):
            if f not in self._fset:
                self._fset.add(f)
                self.formulas.append(f)

    def _terms_upto(self, L: int, vs: list[str]) -> dict[int, list[Term]]:
        by: dict[int, list[Term]] = {1: [Var(v) for v in vs] + [Fn(c) for c, a in self.fun if a == 0]}
        for s in range(2, L + 1):
            out = []
            for name, arity in self.fun:
                if arity == 0:
                    continue
                for parts in _compositions(s - 1, arity):
                    for args in product(*(by.get(p, []) for p in parts)):
                        out.append(Fn(name, tuple(args)))
            by[s] = out
        return by

    def _formulas_upto(self, L, vs, terms) -> dict[int, list[Formula]]:
        by: dict[int, list[Formula]] = {}
        for s in range(1, L + 1):
            out: list[Formula] = []
            for a, b in _compositions(s - 1, 2):
                out += [Eq(t, u) for t in terms.get(a, []) for u in terms.get(b, [])]
            for name, arity in self.rel:
                if arity == 0:
                    if s == 1:
                        out.append(Rel(name))
                    continue
                for parts in _compositions(s - 1, arity):
                    for args in product(*(terms.get(p, []) for p in parts)):
                        out.append(Rel(name, tuple(args)))
            out += [Not(f) for f in by.get(s - 1, [])]
            for a, b in _compositions(s - 1, 2):
                for f in by.get(a, []):
                    for g in by.get(b, []):
                        out += [And(f, g), Or(f, g), Imp(f, g)]
            for f in by.get(s - 1, []):
                out += [Forall(v, f) for v in vs] + [Exists(v, f) for v in vs]
            by[s] = out
        return by


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ways to write total as an ordered sum of ``parts`` positive integers."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def _key(f: Formula):
    return size(f), show(f)


def _tkey(t: Term):
    from .text import show_term
    return size(t), show_term(t)


# --------------------------------------------------------------------------
# the closure enumerator


class Closure:
    """Deterministic, exhaustive enumeration of the consequences of ``premises``.

    Stage 0 emits the premises. Stage k >= 1 enlarges the formula, term and
    variable pools by one element each, adds every axiom instance whose
    parameters come from the first k pool entries, closes under modus ponens,
    generalizes lines of size <= k over the first k variables, and closes
    under modus ponens again. New sentences of a stage are emitted by
    (size, printed text). Every derivation uses finitely many axiom
    instances, all of which enter at some stage, so every consequence is
    eventually emitted.
    """

    def __init__(self, premises: Sequence[Formula], sig: Signature | None = None):
        self.premises = list(premises)
        for p in self.premises:
            if free_vars(p):
                raise ValueError(f"premise is not a sentence: {show(p)}")
        if sig is None:
            sig = signature_of(*self.premises) if self.premises else ARITH
        self.universe = _Universe(sig, self.premises)
        self.lines: list[Line] = []
        self.index: dict[Formula, int] = {}
        self.by_antecedent: dict[Formula, list[int]] = {}
        self.emitted: list[int] = []
        self._gen_done: set[tuple[int, str]] = set()
        self.stage = 0
        self._fresh: list[int] = []
        for i, p in enumerate(self.premises):
            if p not in self.index:
                self._add(p, Just("premise", (i,)))
        self._close()
        first = [self.index[p] for p in dict.fromkeys(self.premises)]
        rest = [k for k in self._fresh if k not in set(first)]
        self.emitted = first + self._order(rest)
        self._fresh = []

    def _add(self, f: Formula, just: Just) -> int | None:
        if f in self.index:
            return None
        k = len(self.lines)
        self.lines.append(Line(f, just))
        self.index[f] = k
        self._fresh.append(k)
        if isinstance(f, Imp):
            self.by_antecedent.setdefault(f.left, []).append(k)
        return k

    def _close(self) -> None:
        """Modus ponens to a fixpoint over the lines added since the last call."""
        work = list(self._fresh)
        while work:
            k = work.pop(0)
            f = self.lines[k].formula
            if isinstance(f, Imp) and f.left in self.index:
                n = self._add(f.right, Just("mp", (self.index[f.left], k)))
                if n is not None:
                    work.append(n)
            for j in list(self.by_antecedent.get(f, ())):
                n = self._add(self.lines[j].formula.right, Just("mp", (k, j)))
                if n is not None:
                    work.append(n)

    def _order(self, ks: list[int]) -> list[int]:
        closed = [k for k in ks if not free_vars(self.lines[k].formula)]
        return sorted(closed, key=lambda k: _key(self.lines[k].formula))

    def _axioms(self, k: int) -> Iterator[tuple[Formula, str]]:
        U = self.universe
        F = U.formulas[:k]
        T = U.terms[:k]
        X = U.vars[:k]
        for a in F:
            yield Imp(a, Imp(a, a)), "P1"
            yield Imp(Not(Not(a)), a), "P10"
            for b in F:
                yield Imp(a, Imp(b, a)), "P1"
                yield Imp(a, Imp(b, And(a, b))), "P3"
                yield Imp(And(a, b), a), "P4"
                yield Imp(And(a, b), b), "P5"
                yield Imp(a, Or(a, b)), "P6"
                yield Imp(b, Or(a, b)), "P7"
                yield Imp(Imp(a, b), Imp(Imp(a, Not(b)), Not(a))), "P9"
                for c in F:
                    yield Imp(Imp(a, b), Imp(Imp(a, Imp(b, c)), Imp(a, c))), "P2"
                    yield Imp(Imp(a, c), Imp(Imp(b, c), Imp(Or(a, b), c))), "P8"
                for x in X:
                    if x not in free_vars(b):
                        yield Imp(Forall(x, Imp(b, a)), Imp(b, Forall(x, a))), "U3"
                        yield Imp(Forall(x, Imp(a, b)), Imp(Exists(x, a), b)), "U4"
            for x in X:
                for t in T:
                    if free_for(a, x, t):
                        inst = subst(a, x, t)
                        yield Imp(Forall(x, a), inst), "U1"
                        yield Imp(inst, Exists(x, a)), "U2"
        for t in T:
            yield Eq(t, t), "E1"
        for a in F:
            if not isinstance(a, (Eq, Rel)):
                continue
            for s in T:
                for t in T:
                    if s != t:
                        for b in _replacements(a, s, t):
                            yield Imp(Eq(s, t), Imp(a, b)), "E2"

    def step(self) -> None:
        """Run one stage."""
        self.stage += 1
        k = self.stage
        self.universe.grow()
        for f, schema in self._axioms(k):
            if f not in self.index:
                self._add(f, Just("axiom", (schema,)))
        self._close()
        X = self.universe.vars[:k]
        for i in range(len(self.lines)):
            f = self.lines[i].formula
            if size(f) > k:
                continue
            for x in X:
                if (i, x) not in self._gen_done:
                    self._gen_done.add((i, x))
                    self._add(Forall(x, f), Just("gen", (i, x)))
        self._close()
        self.emitted.extend(self._order(self._fresh))
        self._fresh = []

    def item(self, n: int) -> tuple[Formula, Proof]:
        while len(self.emitted) <= n:
            self.step()
        k = self.emitted[n]
        return self.lines[k].formula, self.proof_of(k)

    def proof_of(self, k: int) -> Proof:
        need: set[int] = set()
        stack = [k]
        while stack:
            i = stack.pop()
            if i in need:
                continue
            need.add(i)
            j = self.lines[i].just
            if j.kind == "mp":
                stack.extend(j.data)
            elif j.kind == "gen":
                stack.append(j.data[0])
        order = sorted(need)
        renum = {old: new for new, old in enumerate(order)}
        out = []
        for old in order:
            line = self.lines[old]
            j = line.just
            if j.kind == "mp":
                j = Just("mp", (renum[j.data[0]], renum[j.data[1]]))
            elif j.kind == "gen":
                j = Just("gen", (renum[j.data[0]], j.data[1]))
            out.append(Line(line.formula, j))
        return tuple(out)


def _replacements(a: Formula, s: Term, t: Term) -> list[Formula]:
    """All atoms obtained from a by replacing a nonempty set of occurrences of s by t."""
    def term_variants(u: Term) -> list[Term]:
        out = []
        if u == s:
            out.append(t)
        if isinstance(u, Fn) and u.args:
            for args in product(*(term_variants(p) for p in u.args)):
                out.append(Fn(u.name, tuple(args)))
        else:
            out.append(u)
        return list(dict.fromkeys(out))

    if isinstance(a, Eq):
        outs = [Eq(l, r) for l in term_variants(a.left) for r in term_variants(a.right)]
    else:
        outs = [Rel(a.name, tuple(args)) for args in product(*(term_variants(p) for p in a.args))]
    return [b for b in dict.fromkeys(outs) if b != a]


_CLOSURES: dict[tuple, Closure] = {}


def closure(premises: Sequence[Formula], sig: Signature | None = None) -> Closure:
    key = (tuple(premises), sig)
    if key not in _CLOSURES:
        if len(_CLOSURES) > 1024:
            _CLOSURES.clear()
        _CLOSURES[key] = Closure(premises, sig)
    return _CLOSURES[key]


def phi_closure(l: Sequence[Formula], n: int, sig: Signature | None = None) -> tuple[Formula, Proof]:
    """The n-th consequence of the sentences l, with a proof from l."""
    return closure(l, sig).item(n)
