"""ASCII concrete syntax.

    formula  ::= quant | disj ['->' formula]
    quant    ::= ('forall' | 'exists') IDENT ['<' term] '.' formula
    disj     ::= conj ('|' conj)*
    conj     ::= unary ('&' unary)*
    unary    ::= '~' unary | quant | '(' formula ')' | atom
    atom     ::= term ('=' | '<' | 'in') term | IDENT ['(' term, ... ')']
    term     ::= prod ('+' prod)*
    prod     ::= primary ('*' primary)*
    primary  ::= NUMBER | IDENT ['(' term, ... ')'] | '(' term ')'

A decimal literal n abbreviates the numeral s(...s(0)...). Bare identifiers
are variables unless they name a constant of the signature in force. The
printer writes closed numerals as decimals, so ``print(parse(t)) == t`` holds
for text that is already in printed form.
"""

from __future__ import annotations

import re

from .syntax import (
    ARITH, SET, And, Eq, Exists, Fn, Forall, Formula, Imp, Not, Or, Rel,
    Signature, Term, Var, bounded_parts, lt, numeral, numeral_value,
)

DEFAULT_CONSTANTS = ARITH.constants | SET.constants
MAX_LITERAL = 100_000

_TOKEN = re.compile(r"\s*(?:(->)|(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(.))")
_KEYWORDS = {"forall", "exists", "in"}
_RELOPS = {"=", "<", "in"}


class ParseError(ValueError):
    pass


def _tokens(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        tok = next(g for g in m.groups() if g is not None)
        out.append(tok)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, constants: frozenset):
        self.toks = _tokens(text)
        self.i = 0
        self.constants = constants

    def peek(self, k: int = 0) -> str | None:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def take(self, expect: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise ParseError(f"expected {expect or 'a token'} at token {self.i}, got {tok!r}")
        self.i += 1
        return tok

    def ident(self) -> str:
        tok = self.take()
        if not (tok[0].isalpha() or tok[0] == "_") or tok in _KEYWORDS:
            raise ParseError(f"expected identifier, got {tok!r}")
        return tok

    # formulas
    def formula(self) -> Formula:
        if self.peek() in ("forall", "exists"):
            return self.quant()
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Imp(left, self.formula())
        return left

    def quant(self) -> Formula:
        q = self.take()
        x = self.ident()
        bound = None
        if self.peek() == "<":
            self.take()
            bound = self.term()
        self.take(".")
        body = self.formula()
        if q == "forall":
            return Forall(x, body if bound is None else Imp(lt(Var(x), bound), body))
        return Exists(x, body if bound is None else And(lt(Var(x), bound), body))

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok in ("forall", "exists"):
            return self.quant()
        if tok == "(":
            save = self.i
            try:
                self.take("(")
                f = self.formula()
                self.take(")")
                if self.peek() not in _RELOPS | {"+", "*"}:
                    return f
            except ParseError:
                pass
            self.i = save
        return self.atom()

    def atom(self) -> Formula:
        t = self.term()
        op = self.peek()
        if op in _RELOPS:
            self.take()
            u = self.term()
            if op == "=":
                return Eq(t, u)
            return Rel(op, (t, u))
        if isinstance(t, Var):
            return Rel(t.name)
        if isinstance(t, Fn) and t.name[0].isalpha() and t.name not in self.constants:
            return Rel(t.name, t.args)
        raise ParseError(f"expected a relation after term at token {self.i}")

    # terms
    def term(self) -> Term:
        t = self.prod()
        while self.peek() == "+":
            self.take()
            t = Fn("+", (t, self.prod()))
        return t

    def prod(self) -> Term:
        t = self.primary()
        while self.peek() == "*":
            self.take()
            t = Fn("*", (t, self.primary()))
        return t

    def primary(self) -> Term:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if tok.isdigit():
            self.take()
            n = int(tok)
            if n > MAX_LITERAL:
                raise ParseError(f"numeral literal {n} is too large to expand")
            return numeral(n)
        if tok == "(":
            self.take()
            t = self.term()
            self.take(")")
            return t
        name = self.ident()
        if self.peek() == "(":
            self.take()
            args = [self.term()]
            while self.peek() == ",":
                self.take()
                args.append(self.term())
            self.take(")")
            return Fn(name, tuple(args))
        if name in self.constants:
            return Fn(name)
        return Var(name)


def parse(text: str, sig: Signature | None = None) -> Formula:
    """Parse a formula. ``sig`` only decides which bare identifiers are constants."""
    consts = DEFAULT_CONSTANTS if sig is None else sig.constants
    p = _Parser(text, frozenset(consts))
    f = p.formula()
    if p.peek() is not None:
        raise ParseError(f"trailing input at token {p.i}: {p.peek()!r}")
    return f


def parse_term(text: str, sig: Signature | None = None) -> Term:
    consts = DEFAULT_CONSTANTS if sig is None else sig.constants
    p = _Parser(text, frozenset(consts))
    t = p.term()
    if p.peek() is not None:
        raise ParseError(f"trailing input at token {p.i}: {p.peek()!r}")
    return t


# --------------------------------------------------------------------------
# printing

def show_term(t: Term, prec: int = 0) -> str:
    if isinstance(t, Var):
        return t.name
    n = numeral_value(t)
    if n is not None:
        return str(n)
    if t.name in ("+", "*") and len(t.args) == 2:
        p = 1 if t.name == "+" else 2
        s = f"{show_term(t.args[0], p)} {t.name} {show_term(t.args[1], p + 1)}"
        return f"({s})" if prec > p else s
    if not t.args:
        return t.name
    return f"{t.name}({', '.join(show_term(a) for a in t.args)})"


# precedence levels: 0 formula/implication, 1 disjunction, 2 conjunction, 3 unary
def _opens_right(f: Formula) -> bool:
    """f's printed form ends in a quantifier scope that would swallow what follows."""
    while True:
        if isinstance(f, (Forall, Exists)):
            return True
        if isinstance(f, Not):
            f = f.body
        elif isinstance(f, (And, Or, Imp)):
            f = f.right
        else:
            return False


def show(f: Formula, prec: int = 0, closed: bool = False) -> str:
    """Print f. ``closed`` asks for a form nothing to the right can extend."""
    if isinstance(f, Eq):
        return f"{show_term(f.left)} = {show_term(f.right)}"
    if isinstance(f, Rel):
        if f.name in ("<", "in") and len(f.args) == 2:
            return f"{show_term(f.args[0])} {f.name} {show_term(f.args[1])}"
        if not f.args:
            return f.name
        return f"{f.name}({', '.join(show_term(a) for a in f.args)})"
    if isinstance(f, Not):
        s = "~" + show(f.body, 3, closed)
        return s
    if isinstance(f, (Forall, Exists)):
        q = "forall" if isinstance(f, Forall) else "exists"
        parts = bounded_parts(f)
        if parts:
            x, t, body = parts
            s = f"{q} {x} < {show_term(t)}. {show(body)}"
        else:
            s = f"{q} {f.var}. {show(f.body)}"
        return f"({s})" if closed else s
    if isinstance(f, Imp):
        s = f"{show(f.left, 1, True)} -> {show(f.right, 0)}"
        p = 0
    elif isinstance(f, Or):
        s = f"{show(f.left, 1, True)} | {show(f.right, 2, closed)}"
        p = 1
    else:
        s = f"{show(f.left, 2, True)} & {show(f.right, 3, closed)}"
        p = 2
    if prec > p or (closed and _opens_right(f)):
        return f"({s})"
    return s
