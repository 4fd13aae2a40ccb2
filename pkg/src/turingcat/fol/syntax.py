"""First-order terms and formulas.

Bounded quantifiers are not separate nodes: ``exists x < t. F`` is the
formula ``Exists(x, And(Rel('<', (Var(x), t)), F))`` and ``forall x < t. F``
is ``Forall(x, Imp(Rel('<', (Var(x), t)), F))`` with x not occurring in t.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Fn:
    name: str
    args: tuple = ()


Term = Union[Var, Fn]


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Rel:
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Eq, Rel, Not, And, Or, Imp, Forall, Exists]
BINARY = (And, Or, Imp)
QUANT = (Forall, Exists)
ATOMS = (Eq, Rel)


@dataclass(frozen=True)
class Signature:
    """Non-logical symbols with arities. Equality is logical and always present."""

    functions: dict = field(default_factory=dict)
    relations: dict = field(default_factory=dict)
    name: str = ""

    def __hash__(self) -> int:
        return hash((self.name, tuple(sorted(self.functions.items())), tuple(sorted(self.relations.items()))))

    @property
    def constants(self) -> frozenset:
        return frozenset(f for f, n in self.functions.items() if n == 0)

    def union(self, other: "Signature") -> "Signature":
        fs = dict(self.functions)
        rs = dict(self.relations)
        for k, v in other.functions.items():
            if fs.get(k, v) != v:
                raise ValueError(f"arity clash for {k}")
            fs[k] = v
        for k, v in other.relations.items():
            if rs.get(k, v) != v:
                raise ValueError(f"arity clash for {k}")
            rs[k] = v
        if set(fs) & set(rs):
            raise ValueError("a symbol is both a function and a relation")
        return Signature(fs, rs, f"{self.name}+{other.name}")

    def admits(self, f: "Formula | Term") -> bool:
        """True when every symbol of f is in this signature with the right arity."""
        for node in walk(f):
            if isinstance(node, Fn) and self.functions.get(node.name) != len(node.args):
                return False
            if isinstance(node, Rel) and self.relations.get(node.name) != len(node.args):
                return False
        return True


#: the language of arithmetic {0, s, +, *, <}
ARITH = Signature({"0": 0, "s": 1, "+": 2, "*": 2}, {"<": 2}, "A")
#: the language of set theory {in}, extended by definitions with the von
#: Neumann zero, successor, ordinal arithmetic and the set of naturals
SET = Signature(
    {"empty": 0, "omega": 0, "suc": 1, "oadd": 2, "omul": 2}, {"in": 2}, "Z",
)


def signature_of(*fs) -> Signature:
    fns: dict = {}
    rels: dict = {}
    for f in fs:
        for node in walk(f):
            if isinstance(node, Fn):
                fns[node.name] = len(node.args)
            elif isinstance(node, Rel):
                rels[node.name] = len(node.args)
    return Signature(fns, rels, "inferred")


# --------------------------------------------------------------------------
# traversal


def children(node) -> tuple:
    if isinstance(node, (Fn, Rel)):
        return node.args
    if isinstance(node, Eq):
        return (node.left, node.right)
    if isinstance(node, Not):
        return (node.body,)
    if isinstance(node, BINARY):
        return (node.left, node.right)
    if isinstance(node, QUANT):
        return (node.body,)
    return ()


def walk(node) -> Iterator:
    stack = [node]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(children(n)))


def size(node) -> int:
    return sum(1 for _ in walk(node))


def term_vars(t: Term) -> set[str]:
    return {n.name for n in walk(t) if isinstance(n, Var)}


def free_vars(f) -> frozenset:
    if isinstance(f, (Var, Fn)):
        return frozenset(term_vars(f))
    if isinstance(f, Eq):
        return frozenset(term_vars(f.left) | term_vars(f.right))
    if isinstance(f, Rel):
        out: set[str] = set()
        for a in f.args:
            out |= term_vars(a)
        return frozenset(out)
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, QUANT):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def is_formula(f) -> bool:
    return isinstance(f, (Eq, Rel, Not, And, Or, Imp, Forall, Exists))


def bound_vars(f) -> set[str]:
    return {n.var for n in walk(f) if isinstance(n, QUANT)}


# --------------------------------------------------------------------------
# substitution


def subst_term(t: Term, x: str, r: Term) -> Term:
    if isinstance(t, Var):
        return r if t.name == x else t
    if not t.args:
        return t
    args = tuple(subst_term(a, x, r) for a in t.args)
    if all(a is b for a, b in zip(args, t.args)):
        return t
    return Fn(t.name, args)


def free_for(f: Formula, x: str, r: Term) -> bool:
    """r is free for x in f: no free occurrence of x sits under a binder of a variable of r."""
    rv = term_vars(r)
    if not rv:
        return True

    def go(g, bound: frozenset) -> bool:
        if isinstance(g, ATOMS):
            return x not in free_vars(g) or not (bound & rv)
        if isinstance(g, Not):
            return go(g.body, bound)
        if isinstance(g, BINARY):
            return go(g.left, bound) and go(g.right, bound)
        if g.var == x:
            return True
        return go(g.body, bound | {g.var})

    return go(f, frozenset())


def subst(f: Formula, x: str, r: Term) -> Formula:
    """Replace free occurrences of x by r. Caller guarantees r is free for x."""
    if isinstance(f, Eq):
        return Eq(subst_term(f.left, x, r), subst_term(f.right, x, r))
    if isinstance(f, Rel):
        return Rel(f.name, tuple(subst_term(a, x, r) for a in f.args))
    if isinstance(f, Not):
        return Not(subst(f.body, x, r))
    if isinstance(f, BINARY):
        return type(f)(subst(f.left, x, r), subst(f.right, x, r))
    if f.var == x:
        return f
    return type(f)(f.var, subst(f.body, x, r))


def fresh(avoid: set[str], stem: str = "v") -> str:
    i = 0
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


def instantiate(f: Formula, x: str, r: Term) -> Formula:
    """Capture-avoiding substitution, renaming binders when needed."""
    if free_for(f, x, r):
        return subst(f, x, r)
    rv = term_vars(r)

    def go(g):
        if isinstance(g, ATOMS):
            return subst(g, x, r)
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, BINARY):
            return type(g)(go(g.left), go(g.right))
        if g.var == x:
            return g
        if g.var in rv and x in free_vars(g.body):
            y = fresh(rv | free_vars(g.body) | bound_vars(g.body) | {x})
            return type(g)(y, go(subst(g.body, g.var, Var(y))))
        return type(g)(g.var, go(g.body))

    return go(f)


# --------------------------------------------------------------------------
# arithmetic conveniences

ZERO = Fn("0")


def S(t: Term) -> Term:
    return Fn("s", (t,))


def plus(a: Term, b: Term) -> Term:
    return Fn("+", (a, b))


def times(a: Term, b: Term) -> Term:
    return Fn("*", (a, b))


def lt(a: Term, b: Term) -> Formula:
    return Rel("<", (a, b))


def numeral(n: int) -> Term:
    """n° = s(...s(0)...)."""
    t: Term = ZERO
    for _ in range(n):
        t = S(t)
    return t


def numeral_value(t: Term) -> int | None:
    """n when t is the numeral n°, else None."""
    k = 0
    while isinstance(t, Fn) and t.name == "s" and len(t.args) == 1:
        t = t.args[0]
        k += 1
    if t == ZERO:
        return k
    return None


def bexists(x: str, bound: Term, body: Formula) -> Formula:
    return Exists(x, And(lt(Var(x), bound), body))


def bforall(x: str, bound: Term, body: Formula) -> Formula:
    return Forall(x, Imp(lt(Var(x), bound), body))


def bounded_parts(f: Formula) -> tuple[str, Term, Formula] | None:
    """(x, t, body) when f is a bounded quantifier ``Qx < t. body``."""
    if isinstance(f, Exists) and isinstance(f.body, And):
        guard, body = f.body.left, f.body.right
    elif isinstance(f, Forall) and isinstance(f.body, Imp):
        guard, body = f.body.left, f.body.right
    else:
        return None
    if (isinstance(guard, Rel) and guard.name == "<" and len(guard.args) == 2
            and guard.args[0] == Var(f.var) and f.var not in term_vars(guard.args[1])):
        return f.var, guard.args[1], body
    return None


def conj(fs) -> Formula:
    fs = list(fs)
    out = fs[-1]
    for g in reversed(fs[:-1]):
        out = And(g, out)
    return out


def disj(fs) -> Formula:
    fs = list(fs)
    out = fs[-1]
    for g in reversed(fs[:-1]):
        out = Or(g, out)
    return out


def iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))
