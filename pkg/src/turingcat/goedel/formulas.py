"""One-free-variable bounded formulas and the signed enumerator J."""

from __future__ import annotations

from functools import lru_cache
from itertools import count
from math import isqrt

from ..category import MINUS, PLUS
from ..fol.arith import eval_sigma0
from ..fol.syntax import (
    And, Eq, Exists, Fn, Forall, Formula, Imp, Not, Or, Rel, Term, Var,
    bounded_parts, free_vars, instantiate, numeral, size,
)
from ..fol.text import show

#: the free variable of every enumerated formula
FREE = "m"


def bound_name(depth: int) -> str:
    return f"v{depth}"


@lru_cache(maxsize=None)
def terms_of_size(s: int, depth: int) -> tuple[Term, ...]:
    """Arithmetic terms with exactly s nodes over m and v0..v(depth-1)."""
    if s < 1:
        return ()
    if s == 1:
        return (Fn("0"), Var(FREE)) + tuple(Var(bound_name(i)) for i in range(depth))
    out = [Fn("s", (t,)) for t in terms_of_size(s - 1, depth)]
    for op in ("+", "*"):
        for a in range(1, s - 1):
            for l in terms_of_size(a, depth):
                for r in terms_of_size(s - 1 - a, depth):
                    out.append(Fn(op, (l, r)))
    return tuple(out)


@lru_cache(maxsize=None)
def _formulas(s: int, depth: int) -> tuple[Formula, ...]:
    """Canonical bounded formulas with s nodes: the variable bound at nesting
    depth d is always v<d>, so alpha-variants are listed once."""
    out: list[Formula] = []
    if s < 3:
        return ()
    for a in range(1, s - 1):
        for l in terms_of_size(a, depth):
            for r in terms_of_size(s - 1 - a, depth):
                out.append(Eq(l, r))
                out.append(Rel("<", (l, r)))
    out += [Not(f) for f in _formulas(s - 1, depth)]
    for cls in (And, Or, Imp):
        for a in range(1, s - 1):
            for l in _formulas(a, depth):
                for r in _formulas(s - 1 - a, depth):
                    out.append(cls(l, r))
    # Qv < t. body costs 4 nodes besides t and body
    v = bound_name(depth)
    for a in range(1, s - 4):
        for t in terms_of_size(a, depth):
            for body in _formulas(s - 4 - a, depth + 1):
                guard = Rel("<", (Var(v), t))
                out.append(Exists(v, And(guard, body)))
                out.append(Forall(v, Imp(guard, body)))
    return tuple(out)


@lru_cache(maxsize=None)
def f0_of_size(s: int) -> tuple[Formula, ...]:
    """Members of F0 with s nodes, ordered by printed text."""
    fs = [f for f in _formulas(s, 0) if free_vars(f) == {FREE}]
    return tuple(sorted(fs, key=show))


def is_f0(f: Formula) -> bool:
    """Canonical member of F0: bounded, sole free variable m, bound
    variables named by nesting depth."""
    if free_vars(f) != {FREE}:
        return False
    return f in set(f0_of_size(size(f)))


class F0Enumeration:
    """The bijection Z: N -> F0, by size and then printed text."""

    def __init__(self):
        self._sizes: list[int] = []  # cumulative counts
        self._pos: dict[Formula, int] = {}

    def _block(self, s: int) -> int:
        while len(self._sizes) <= s:
            k = len(self._sizes)
            prev = self._sizes[-1] if self._sizes else 0
            self._sizes.append(prev + len(f0_of_size(k)))
        return self._sizes[s]

    def __call__(self, n: int) -> Formula:
        for s in count(0):
            hi = self._block(s)
            if n < hi:
                lo = self._sizes[s - 1] if s else 0
                return f0_of_size(s)[n - lo]
        raise AssertionError("unreachable")

    def index(self, f: Formula) -> int:
        s = size(f)
        fs = f0_of_size(s)
        if f not in self._pos:
            lo = self._block(s - 1) if s else 0
            for i, g in enumerate(fs):
                self._pos[g] = lo + i
        if f not in self._pos:
            raise ValueError(f"not a canonical F0 formula: {show(f)}")
        return self._pos[f]


Z = F0Enumeration()


def at(phi: Formula, k: int) -> Formula:
    """phi(k) with the numeral for k substituted for m."""
    return instantiate(phi, FREE, numeral(k))


class _Search:
    def __init__(self, phi: Formula):
        self.phi = phi
        self.checked = 0
        self.first: int | None = None

    def first_failure_upto(self, n: int) -> int | None:
        while self.first is None and self.checked <= n:
            k = self.checked
            # deep numerals would exhaust the recursion of the evaluator;
            # past that point evaluate with m bound to k, which is the same
            # truth value in the standard model
            ok = eval_sigma0(at(self.phi, k)) if k <= 200 else eval_sigma0(self.phi, {FREE: k})
            if not ok:
                self.first = k
            self.checked += 1
        if self.first is not None and self.first <= n:
            return self.first
        return None


_SEARCH: dict[Formula, _Search] = {}


def is_n_decided(phi: Formula, n: int) -> bool:
    """phi(0), ..., phi(n) are all true."""
    s = _SEARCH.get(phi)
    if s is None:
        if len(_SEARCH) > 1 << 16:
            _SEARCH.clear()
        s = _SEARCH[phi] = _Search(phi)
    return s.first_failure_upto(n) is None


def d(n: int, phi: Formula) -> str:
    return PLUS if is_n_decided(phi, n) else MINUS


def J_list(n: int, enum: F0Enumeration = Z) -> list[tuple[Formula, str]]:
    """J_n by the literal recursion J_{n+1} = J_n u U_{m<=n} [(Z(m), d^n(Z(m)))]."""
    from ..category import list_union

    out: list = []
    for k in range(n):
        block: list = []
        for m in range(k + 1):
            block = list_union(block, [(enum(m), d(k, enum(m)))])
        out = list_union(out, block)
    return out


def enumerator_J(n: int, enum: F0Enumeration = Z) -> tuple[Formula, str]:
    """J(n) = J_{n+1}(n), read off in closed form (block j holds Z(0..j))."""
    j = (isqrt(8 * n + 1) - 1) // 2
    phi = enum(n - j * (j + 1) // 2)
    return phi, d(j, phi)


def alpha(phi: Formula) -> Formula:
    """The universal closure forall m. phi(m)."""
    return Forall(FREE, phi)


__all__ = [
    "F0Enumeration", "FREE", "J_list", "Z", "alpha", "at", "d", "enumerator_J", "f0_of_size",
    "is_f0", "is_n_decided", "terms_of_size",
]
