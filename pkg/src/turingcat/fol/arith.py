"""Arithmetic hierarchy, bounded evaluation and Robinson's Q."""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    ARITH, And, Eq, Exists, Formula, Imp, Not, Or, Rel, Term, Var,
    bounded_parts, free_vars, term_vars,
)
from .text import parse


class NotArithmetic(ValueError):
    pass


class NotBounded(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Level:
    """Position in the arithmetic hierarchy.

    ``kind`` is "Delta0", "Sigma", "Pi" or "Delta" (a formula that is both
    Sigma_n and Pi_n syntactically but in neither class below).
    """

    kind: str
    n: int

    def __str__(self) -> str:
        if self.kind == "Delta0":
            return "Delta0"
        return f"{self.kind}{self.n}"


def _levels(f: Formula) -> tuple[int, int]:
    """(sigma, pi): least n with f in Sigma_n, least n with f in Pi_n."""
    if isinstance(f, (Eq, Rel)):
        return 0, 0
    if isinstance(f, Not):
        s, p = _levels(f.body)
        return p, s
    if isinstance(f, (And, Or)):
        s1, p1 = _levels(f.left)
        s2, p2 = _levels(f.right)
        return max(s1, s2), max(p1, p2)
    if isinstance(f, Imp):
        s1, p1 = _levels(f.left)
        s2, p2 = _levels(f.right)
        return max(p1, s2), max(s1, p2)
    parts = bounded_parts(f)
    if parts is not None:
        s, p = _levels(parts[2])
        if s == p == 0:
            return 0, 0
    s, p = _levels(f.body)
    if isinstance(f, Exists):
        sig = min(max(s, 1), p + 1)
        return sig, sig + 1
    pi = min(max(p, 1), s + 1)
    return pi + 1, pi


def classify_prenex(f: Formula) -> Level:
    """Syntactic level of an arithmetic formula.

    Bounded quantifiers over bounded matrices cost nothing; the rest follows
    the usual prenex rules (``exists`` over Pi_n gives Sigma_{n+1}, and so on).
    """
    if not ARITH.admits(f):
        raise NotArithmetic("formula uses symbols outside {0, s, +, *, <}")
    s, p = _levels(f)
    if s == p == 0:
        return Level("Delta0", 0)
    if s < p:
        return Level("Sigma", s)
    if p < s:
        return Level("Pi", p)
    return Level("Delta", s)


def is_delta0(f: Formula) -> bool:
    return ARITH.admits(f) and _levels(f) == (0, 0)


def eval_term(t: Term, env: dict) -> int:
    if isinstance(t, Var):
        return env[t.name]
    name = t.name
    if name == "0":
        return 0
    if name == "s":
        return eval_term(t.args[0], env) + 1
    if name == "+":
        return eval_term(t.args[0], env) + eval_term(t.args[1], env)
    if name == "*":
        a = eval_term(t.args[0], env)
        return 0 if a == 0 else a * eval_term(t.args[1], env)
    raise NotArithmetic(f"unknown function symbol {name!r}")


def eval_delta0(f: Formula, env: dict, solve: bool = True) -> bool:
    """Truth of a bounded formula in the standard model under ``env``.

    Conjunctions and bounded quantifiers short-circuit left to right. With
    ``solve``, a quantifier guarded by an equation only visits the solutions
    of that equation (same truth value, much faster on large bounds).
    """
    if isinstance(f, Eq):
        return eval_term(f.left, env) == eval_term(f.right, env)
    if isinstance(f, Rel):
        if f.name != "<":
            raise NotArithmetic(f"unknown relation {f.name!r}")
        return eval_term(f.args[0], env) < eval_term(f.args[1], env)
    if isinstance(f, Not):
        return not eval_delta0(f.body, env, solve)
    if isinstance(f, And):
        return eval_delta0(f.left, env, solve) and eval_delta0(f.right, env, solve)
    if isinstance(f, Or):
        return eval_delta0(f.left, env, solve) or eval_delta0(f.right, env, solve)
    if isinstance(f, Imp):
        return not eval_delta0(f.left, env, solve) or eval_delta0(f.right, env, solve)
    parts = bounded_parts(f)
    if parts is None:
        raise NotBounded(f"unbounded quantifier over {f.var}")
    x, bound, body = parts
    top = eval_term(bound, env)
    saved = env.get(x, _MISSING)
    try:
        eq = _leading_equation(f, x, body) if solve else None
        if eq is not None:
            return _eval_solved(f, x, top, eq, body, env)
        if isinstance(f, Exists):
            for v in range(top):
                env[x] = v
                if eval_delta0(body, env, solve):
                    return True
            return False
        for v in range(top):
            env[x] = v
            if not eval_delta0(body, env, solve):
                return False
        return True
    finally:
        if saved is _MISSING:
            env.pop(x, None)
        else:
            env[x] = saved


_MISSING = object()


_EQ_CACHE: dict[int, tuple] = {}


def _leading_equation(f: Formula, x: str, body: Formula):
    hit = _EQ_CACHE.get(id(f))
    if hit is not None and hit[0] is f:
        return hit[1]
    out = _find_equation(f, x, body)
    if len(_EQ_CACHE) > 1 << 18:
        _EQ_CACHE.clear()
    _EQ_CACHE[id(f)] = (f, out)
    return out


def _find_equation(f: Formula, x: str, body: Formula):
    """(side with x, other side) when the body is ``t = u & ...`` (for an
    existential) or ``t = u -> ...`` (for a universal) and x occurs on
    exactly one side of the equation."""
    if isinstance(f, Exists):
        eq = body.left if isinstance(body, And) else body
    else:
        eq = body.left if isinstance(body, Imp) else None
    if not isinstance(eq, Eq):
        return None
    inl = x in term_vars(eq.left)
    inr = x in term_vars(eq.right)
    if inl == inr:
        return None
    return (eq.left, eq.right) if inl else (eq.right, eq.left)


def _eval_solved(f, x, top, eq, body, env) -> bool:
    """Bounded quantifier whose body is guarded by an equation g(x) = c.

    Terms are nondecreasing in every variable, so the x < top solving the
    equation form an interval, found by binary search; other x satisfy the
    existential body vacuously false and the universal body vacuously true.
    """
    g, other = eq
    target = eval_term(other, env)

    def at(v):
        env[x] = v
        return eval_term(g, env)

    lo, hi = 0, top
    while lo < hi:
        mid = (lo + hi) // 2
        if at(mid) < target:
            lo = mid + 1
        else:
            hi = mid
    exists = isinstance(f, Exists)
    v = lo
    while v < top and at(v) == target:
        if eval_delta0(body, env, True) != (not exists):
            return exists
        v += 1
    return not exists


def eval_sigma0(f: Formula, env: dict | None = None) -> bool:
    """Decide a Delta0 sentence (or formula, given values for its free variables)."""
    if not is_delta0(f):
        raise NotBounded("not a bounded arithmetic formula")
    env = dict(env or {})
    missing = free_vars(f) - set(env)
    if missing:
        raise ValueError(f"no values for free variables {sorted(missing)}")
    return eval_delta0(f, env)


Q_AXIOM_TEXT = (
    "forall x. ~s(x) = 0",
    "forall x. forall y. s(x) = s(y) -> x = y",
    "forall x. x = 0 | (exists y. x = s(y))",
    "forall x. x + 0 = x",
    "forall x. forall y. x + s(y) = s(x + y)",
    "forall x. x * 0 = 0",
    "forall x. forall y. x * s(y) = x * y + x",
    "forall x. forall y. x < y -> (exists z. s(z) + x = y)",
    "forall x. forall y. (exists z. s(z) + x = y) -> x < y",
)


def q_axioms() -> list[Formula]:
    """Robinson's Q with two axioms defining ``<``."""
    return [parse(t, ARITH) for t in Q_AXIOM_TEXT]

