"""Integer polynomials, root search, and the signed enumerator A.

A(n) lists pairs (p, d) where d is + while no integer root of p has been
found among the first candidates N(0), N(1), ... The polynomials that stay
+ forever are exactly the root-free ones.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterable, Sequence

from . import coding
from .category import MINUS, PLUS, Encoding, list_union, register
from .machine import MachineCode, Macro, macro
from .stability import Verdict, dec_B, g_sweep, verdict_of


def var_name(i: int) -> str:
    return "xyz"[i] if i < 3 else f"x{i}"


def var_index(name: str) -> int:
    if name in ("x", "y", "z"):
        return "xyz".index(name)
    m = re.fullmatch(r"x(\d+)", name)
    if not m or int(m.group(1)) < 3:
        raise ValueError(f"unknown variable {name!r}; use x, y, z, x3, x4, ...")
    return int(m.group(1))


def _trim(exps: Sequence[int]) -> tuple[int, ...]:
    exps = list(exps)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


@dataclass(frozen=True)
class Pol:
    """Sparse polynomial: sorted (exponents, coefficient) pairs, no zero coefficients."""

    terms: tuple = ()

    @staticmethod
    def of(mapping: dict) -> "Pol":
        acc: dict[tuple, int] = {}
        for exps, c in mapping.items():
            e = _trim(exps)
            acc[e] = acc.get(e, 0) + c
        return Pol(tuple(sorted((e, c) for e, c in acc.items() if c != 0)))

    @property
    def nvars(self) -> int:
        return max([len(e) for e, _ in self.terms] + [1])

    def __call__(self, *xs: int) -> int:
        return eval_E(xs, self)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in sorted(self.terms, key=lambda t: (-sum(t[0]), [-e for e in t[0]])):
            mono = "*".join(
                var_name(i) + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e
            )
            mag = abs(c)
            body = mono if mono and mag == 1 else (f"{mag}*{mono}" if mono else str(mag))
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


_PTOK = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def parse_pol(text: str) -> Pol:
    """Parse sums of monomials such as ``2*x^2*y - 7``."""
    toks = [next(g for g in m.groups() if g is not None) for m in _PTOK.finditer(text.strip())]
    i = 0
    acc: dict[tuple, int] = {}

    def peek():
        return toks[i] if i < len(toks) else None

    def take():
        nonlocal i
        if i >= len(toks):
            raise ValueError("unexpected end of polynomial")
        i += 1
        return toks[i - 1]

    sign = 1
    if peek() in ("+", "-"):
        sign = -1 if take() == "-" else 1
    while True:
        coef = 1
        exps: dict[int, int] = {}
        while True:
            tok = take()
            if tok.isdigit():
                coef *= int(tok)
            elif tok[0].isalpha() or tok[0] == "_":
                k = 1
                if peek() == "^":
                    take()
                    e = take()
                    if not e.isdigit():
                        raise ValueError(f"bad exponent {e!r}")
                    k = int(e)
                v = var_index(tok)
                exps[v] = exps.get(v, 0) + k
            else:
                raise ValueError(f"unexpected {tok!r} in polynomial")
            if peek() == "*":
                take()
                continue
            break
        vec = [0] * (max(exps) + 1 if exps else 0)
        for v, k in exps.items():
            vec[v] = k
        key = _trim(vec)
        acc[key] = acc.get(key, 0) + sign * coef
        nxt = peek()
        if nxt is None:
            break
        if nxt not in ("+", "-"):
            raise ValueError(f"unexpected {nxt!r} in polynomial")
        sign = -1 if take() == "-" else 1
    return Pol.of(acc)


def eval_E(n: int | Sequence[int], p: Pol) -> int:
    """p evaluated at an integer point (an int for one variable, else a tuple)."""
    xs = (n,) if isinstance(n, int) else tuple(n)
    total = 0
    for exps, c in p.terms:
        if len(exps) > len(xs):
            raise ValueError(f"{p} needs {p.nvars} arguments")
        v = c
        for x, e in zip(xs, exps):
            if e:
                v *= x ** e
        total += v
    return total


# --------------------------------------------------------------------------
# the bijections Z : N -> Pol and N : N -> Z^k


def _unlist(n: int) -> list[int]:
    """Bijection N -> finite lists of naturals: 0 -> [], 2^a (2m + 1) -> [a] + unlist(m)."""
    out = []
    while n:
        a = (n & -n).bit_length() - 1
        out.append(a)
        n = (n >> (a + 1))
    return out


def _list(xs: Sequence[int]) -> int:
    n = 0
    for a in reversed(xs):
        n = (2 * n + 1) << a
    return n


def _monomial(j: int) -> tuple[int, ...]:
    """Exponent vector of the j-th monomial: the prime exponents of j + 1."""
    return tuple(coding.prime_exponents(j + 1))


def _monomial_index(exps: Sequence[int]) -> int:
    n = 1
    for i, e in enumerate(exps):
        n *= coding.nth_prime(i) ** e
    return n - 1


@lru_cache(maxsize=1 << 16)
def canonical_pol(n: int) -> Pol:
    """The n-th polynomial in the canonical order (Z without seeds)."""
    l = _unlist(n)
    if not l:
        return Pol()
    coeffs = [coding.zigzag(a) for a in l[:-1]] + [coding.zigzag(l[-1] + 1)]
    return Pol.of({_monomial(j): c for j, c in enumerate(coeffs) if c})


def canonical_index(p: Pol) -> int:
    if not p.terms:
        return 0
    by = {_monomial_index(e): c for e, c in p.terms}
    top = max(by)
    coeffs = [by.get(j, 0) for j in range(top + 1)]
    l = [coding.unzigzag(c) for c in coeffs[:-1]] + [coding.unzigzag(coeffs[-1]) - 1]
    return _list(l)


#: distinguished encoding of Pol: the canonical index
POLS = register(Encoding(
    "pol", canonical_index, lambda n: isinstance(n, int) and n >= 0, canonical_pol,
    lambda r: canonical_pol(r.randrange(2000)),
))
INTS = register(Encoding(
    "int", coding.unzigzag, lambda n: isinstance(n, int) and n >= 0, coding.zigzag,
    lambda r: r.randrange(-50, 51),
))


class PolEnumeration:
    """A total bijection N -> Pol: the seeds first, then the canonical order without them.

    Moving finitely many polynomials to the front keeps Z a computable
    bijection; it lets chosen polynomials enter A early.
    """

    def __init__(self, seeds: Sequence[Pol] = ()):
        if len(set(seeds)) != len(seeds):
            raise ValueError("duplicate seed")
        self.seeds = tuple(seeds)
        self._pos = {p: i for i, p in enumerate(self.seeds)}
        self._canon = sorted(canonical_index(p) for p in self.seeds)

    def __call__(self, n: int) -> Pol:
        k = len(self.seeds)
        if n < k:
            return self.seeds[n]
        c = n - k
        for s in self._canon:
            if s <= c:
                c += 1
        return canonical_pol(c)

    def index(self, p: Pol) -> int:
        if p in self._pos:
            return self._pos[p]
        c = canonical_index(p)
        return len(self.seeds) + c - sum(1 for s in self._canon if s < c)

    def key(self) -> str:
        return ";".join(str(p) for p in self.seeds)


def point(i: int, k: int) -> tuple[int, ...]:
    """N_k(i): the i-th point of Z^k (zigzag per coordinate of nested Cantor unpairing)."""
    coords = []
    for _ in range(k - 1):
        a, i = coding.uncantor(i)
        coords.append(a)
    coords.append(i)
    return tuple(coding.zigzag(c) for c in coords)


def N(i: int) -> int:
    return coding.zigzag(i)


class _RootSearch:
    def __init__(self, p: Pol):
        self.p = p
        self.checked = 0  # indices < checked have been tried
        self.first: int | None = None

    def first_root_upto(self, n: int) -> int | None:
        """Least i <= n with p(N_k(i)) = 0, if any."""
        k = self.p.nvars
        while self.first is None and self.checked <= n:
            if eval_E(point(self.checked, k), self.p) == 0:
                self.first = self.checked
            self.checked += 1
        if self.first is not None and self.first <= n:
            return self.first
        return None


_SEARCH: dict[Pol, _RootSearch] = {}


def d(n: int, p: Pol) -> str:
    """+ iff none of N(0), ..., N(n) is a root of p."""
    s = _SEARCH.get(p)
    if s is None:
        if len(_SEARCH) > 1 << 16:
            _SEARCH.clear()
        s = _SEARCH[p] = _RootSearch(p)
    return MINUS if s.first_root_upto(n) is not None else PLUS


def A_list(n: int, Z: PolEnumeration | None = None) -> list[tuple[Pol, str]]:
    """A_n by the literal recursion A_{n+1} = A_n u U_{m<=n} [(Z(m), d^n(Z(m)))]."""
    Z = Z or PolEnumeration()
    a: list = []
    for k in range(n):
        block: list = []
        for m in range(k + 1):
            block = list_union(block, [(Z(m), d(k, Z(m)))])
        a = list_union(a, block)
    return a


def enumerator_A(n: int, Z: PolEnumeration | None = None) -> tuple[Pol, str]:
    """A(n) = A_{n+1}(n), read off in closed form.

    A_{n+1} is the concatenation of blocks j = 0..n, block j holding
    (Z(m), d^j(Z(m))) for m = 0..j, so entry n sits in the block j with
    j(j+1)/2 <= n < (j+1)(j+2)/2, at offset m = n - j(j+1)/2.
    """
    Z = Z or PolEnumeration()
    j = (isqrt(8 * n + 1) - 1) // 2
    m = n - j * (j + 1) // 2
    p = Z(m)
    return p, d(j, p)


@macro("DIO_A", "str")
def _dio_a(x, meter, seeds):
    """The signed enumerator A with Z seeded by the given polynomials."""
    p, s = enumerator_A(x, _enumeration(seeds))
    return coding.pair(canonical_index(p), 1 if s == PLUS else 0)


@lru_cache(maxsize=64)
def _enumeration(seeds: str) -> PolEnumeration:
    return PolEnumeration([parse_pol(t) for t in seeds.split(";") if t.strip()])


def A_code(Z: PolEnumeration | None = None) -> MachineCode:
    return MachineCode.of(Macro("DIO_A", ((Z or PolEnumeration()).key(),)))


def decider_code(Z: PolEnumeration | None = None) -> MachineCode:
    """P = Dec_Pol(A)."""
    return dec_B(A_code(Z), POLS)


def decider_P(p: Pol, n: int, Z: PolEnumeration | None = None, fuel: int = 10**7) -> str:
    from .stability import decide
    return decide(decider_code(Z), p, n, POLS, fuel)


def decision_trace(polys: Iterable[Pol], horizon: int, Z: PolEnumeration | None = None,
                   fuel: int = 10**9) -> dict[Pol, list[str]]:
    """P(p, n) for n = 0..horizon, for each p, in one sweep."""
    polys = list(polys)
    out: dict[Pol, list[str]] = {p: [] for p in polys}
    for st in g_sweep(A_code(Z), POLS, horizon, fuel, watch=polys):
        for p in polys:
            out[p].append(PLUS if p in st.plus else MINUS)
    return out


def verdict_trace(signs: Sequence[str]) -> Iterable[Verdict]:
    """The prefix verdict at every horizon h = 0..len-1, incrementally."""
    last_plus = None
    first_minus_after = None
    for h, s in enumerate(signs):
        if s == PLUS:
            last_plus, first_minus_after = h, None
        elif last_plus is not None and first_minus_after is None:
            first_minus_after = h
        if last_plus is None:
            yield Verdict("unknown")
        elif first_minus_after is None:
            yield Verdict("plus-stable-so-far")
        else:
            yield Verdict("refuted-at", first_minus_after)


__all__ = [
    "A_code", "A_list", "INTS", "N", "POLS", "Pol", "PolEnumeration", "canonical_index",
    "canonical_pol", "d", "decider_P", "decider_code", "decision_trace", "enumerator_A", "eval_E",
    "parse_pol", "point", "verdict_of", "verdict_trace",
]
