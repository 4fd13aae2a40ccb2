"""Numbering formulas.

A formula is flattened to a token list in prefix order; the list is then
coded either by bit packing (``scheme="pack"``, the default, small enough to
hand to machines) or by the prime-power list code (``scheme="list"``, only
practical for tiny formulas).

Token layout, one node at a time::

    Var x           0, name(x)
    Fn f(t1..tk)    1, name(f), k, t1 .. tk
    t = u           2, t, u
    R(t1..tk)       3, name(R), k, t1 .. tk
    ~F              4, F
    F & G           5, F, G
    F | G           6, F, G
    F -> G          7, F, G
    forall x. F     8, name(x), F
    exists x. F     9, name(x), F

where name(s) is the byte string of s read as a number.
"""

from __future__ import annotations

from functools import lru_cache

from .. import coding
from ..category import Encoding, list_encoding, NAT, register
from .syntax import (
    ARITH, And, Eq, Exists, Fn, Forall, Formula, Imp, Not, Or, Rel, Signature, Var,
    free_vars, is_formula,
)

_BIN = {And: 5, Or: 6, Imp: 7}
_BIN_INV = {v: k for k, v in _BIN.items()}
_PRIME_LIST = list_encoding(NAT)


def _name(s: str) -> int:
    return coding.bytes_to_nat(s.encode())


def _unname(n: int) -> str | None:
    raw = coding.nat_to_bytes(n)
    if raw is None or not raw:
        return None
    try:
        s = raw.decode()
    except UnicodeDecodeError:
        return None
    return s


def tokens(f) -> list[int]:
    out: list[int] = []

    def go(n):
        if isinstance(n, Var):
            out.extend((0, _name(n.name)))
        elif isinstance(n, Fn):
            out.extend((1, _name(n.name), len(n.args)))
            for a in n.args:
                go(a)
        elif isinstance(n, Eq):
            out.append(2)
            go(n.left)
            go(n.right)
        elif isinstance(n, Rel):
            out.extend((3, _name(n.name), len(n.args)))
            for a in n.args:
                go(a)
        elif isinstance(n, Not):
            out.append(4)
            go(n.body)
        elif isinstance(n, (And, Or, Imp)):
            out.append(_BIN[type(n)])
            go(n.left)
            go(n.right)
        elif isinstance(n, (Forall, Exists)):
            out.extend((8 if isinstance(n, Forall) else 9, _name(n.var)))
            go(n.body)
        else:
            raise TypeError(f"not a formula node: {n!r}")

    go(f)
    return out


class _Bad(Exception):
    pass


def untokens(toks: list[int]) -> Formula | None:
    """The formula with this token list, or None when the list is ill-formed."""
    pos = 0

    def nxt() -> int:
        nonlocal pos
        if pos >= len(toks):
            raise _Bad
        pos += 1
        return toks[pos - 1]

    def name() -> str:
        s = _unname(nxt())
        if s is None:
            raise _Bad
        return s

    def term():
        k = nxt()
        if k == 0:
            return Var(name())
        if k == 1:
            f = name()
            arity = nxt()
            if arity > len(toks):
                raise _Bad
            return Fn(f, tuple(term() for _ in range(arity)))
        raise _Bad

    def formula():
        k = nxt()
        if k == 2:
            return Eq(term(), term())
        if k == 3:
            r = name()
            arity = nxt()
            if arity > len(toks):
                raise _Bad
            return Rel(r, tuple(term() for _ in range(arity)))
        if k == 4:
            return Not(formula())
        if k in _BIN_INV:
            return _BIN_INV[k](formula(), formula())
        if k in (8, 9):
            x = name()
            return (Forall if k == 8 else Exists)(x, formula())
        raise _Bad

    try:
        f = formula()
    except (_Bad, RecursionError):
        return None
    return f if pos == len(toks) else None


def formula_encoding(sig: Signature | None = None, scheme: str = "pack", sentences: bool = False) -> Encoding:
    """Injective numbering of formulas (sentences only if asked).

    With ``sig`` None any symbols are allowed; otherwise arities must match ``sig``.

    The image test decodes and syntax-checks the tree, including arities.
    """
    if scheme == "pack":
        to_int, from_int = coding.pack, coding.unpack
    elif scheme == "list":
        to_int = _PRIME_LIST.encode

        def from_int(n):
            return _PRIME_LIST.decode(n) if _PRIME_LIST.contains(n) else None
    else:
        raise ValueError(f"unknown scheme {scheme!r}")

    def ok(f) -> bool:
        return is_formula(f) and (sig is None or sig.admits(f)) and (not sentences or not free_vars(f))

    def enc(f):
        if not ok(f):
            raise ValueError(f"not a {'sentence' if sentences else 'formula'} {f!r}")
        return to_int(tokens(f))

    # decode() asks contains() first, which decodes too
    @lru_cache(maxsize=1024)
    def dec_or_none(n):
        if not isinstance(n, int) or n <= 0:
            return None
        toks = from_int(n)
        if toks is None:
            return None
        f = untokens(toks)
        return f if f is not None and ok(f) else None

    kind = "sentence" if sentences else "formula"
    key = kind if sig is None else f"{kind}:{sig.name}"
    if scheme != "pack":
        key += f":{scheme}"
    return Encoding(key, enc, lambda n: dec_or_none(n) is not None, dec_or_none)


FORMULAS = register(formula_encoding())
SENTENCES = register(formula_encoding(sentences=True))
ARITH_SENTENCES = register(formula_encoding(ARITH, sentences=True))
