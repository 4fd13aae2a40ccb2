"""Encodings as objects and computable maps as morphisms.

An :class:`Encoding` bundles an injective ``encode``, a total image test and
a ``decode`` defined exactly on the image. Encodings are named by a *key*
string (``"nat"``, ``"prod(nat,pm)"``, ``"list(nat)"``, ...) so that machine
codes can refer to them; :func:`resolve` turns a key back into the object.

Two product and two list schemes coexist:

=========  =================================  ====================================
key        code                               use
=========  =================================  ====================================
prod(A,B)  2^a * 3^b                          the textbook product
sum(A,B)   2^(a+1) or 3^(b+1)                 coproduct
list(A)    prod_i p_i^(a_i + 1), [] -> 1      the textbook list code
pair(A,B)  cantor(a, b) + 1                   what machines exchange
pack(A)    Elias-gamma bit packing            lists machines exchange
=========  =================================  ====================================
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from . import coding
from .machine import (
    IDENTITY, Halted, MachineCode, Macro, Undefined, evaluate, macro, seq, universal,
)


class NotInImage(ValueError):
    pass


class BoundaryMismatch(TypeError):
    """Composed maps disagree on the encoding of the glued object."""


class BudgetExhausted(RuntimeError):
    """A computation ran out of fuel before answering (unlike :class:`Undefined`)."""


@dataclass(frozen=True, eq=False)
class Encoding:
    key: str
    encode: Callable[[Any], int]
    contains: Callable[[int], bool]
    _decode: Callable[[int], Any]
    sample: Callable[[random.Random], Any] | None = None

    def decode(self, n: int) -> Any:
        if not self.contains(n):
            raise NotInImage(f"{n} is not in the image of {self.key}")
        return self._decode(n)

    def __call__(self, x: Any) -> int:
        return self.encode(x)

    def __eq__(self, other) -> bool:
        return isinstance(other, Encoding) and other.key == self.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Encoding({self.key})"


# --------------------------------------------------------------------------
# base objects

_BASE: dict[str, Encoding] = {}
_CACHE: dict[str, Encoding] = {}


def register(enc: Encoding) -> Encoding:
    _BASE[enc.key] = enc
    return enc


def _is_nat(n) -> bool:
    return isinstance(n, int) and not isinstance(n, bool) and n >= 0


NAT = register(Encoding("nat", lambda x: x, _is_nat, lambda n: n, lambda r: r.randrange(50)))

PLUS, MINUS = "+", "-"
SIGNS = register(Encoding(
    "pm",
    lambda s: {MINUS: 0, PLUS: 1}[s],
    lambda n: n in (0, 1),
    lambda n: PLUS if n == 1 else MINUS,
    lambda r: r.choice([PLUS, MINUS]),
))


def _code_encoding() -> Encoding:
    from .machine import is_code

    def enc(c):
        return MachineCode.of(c).number

    return Encoding("code", enc, lambda n: _is_nat(n) and is_code(n), lambda n: MachineCode(n))


CODES = register(_code_encoding())


# --------------------------------------------------------------------------
# constructors


def _prod_split(n: int) -> tuple[int, int] | None:
    if not _is_nat(n) or n == 0:
        return None
    a = coding.multiplicity(n, 2)
    m = n >> a
    b = coding.multiplicity(m, 3)
    if m != 3 ** b:
        return None
    return a, b


def product_encoding(ea: Encoding, eb: Encoding) -> Encoding:
    """(a, b) |-> 2^ea(a) * 3^eb(b)."""
    def contains(n):
        ab = _prod_split(n)
        return ab is not None and ea.contains(ab[0]) and eb.contains(ab[1])

    def dec(n):
        a, b = _prod_split(n)
        return ea.decode(a), eb.decode(b)

    return Encoding(
        f"prod({ea.key},{eb.key})",
        lambda ab: 2 ** ea(ab[0]) * 3 ** eb(ab[1]),
        contains, dec, _sample_pair(ea, eb),
    )


def pair_encoding(ea: Encoding, eb: Encoding) -> Encoding:
    """(a, b) |-> cantor(ea(a), eb(b)) + 1, the product machines exchange."""
    def contains(n):
        if not _is_nat(n) or n == 0:
            return False
        a, b = coding.unpair(n)
        return ea.contains(a) and eb.contains(b)

    def dec(n):
        a, b = coding.unpair(n)
        return ea.decode(a), eb.decode(b)

    return Encoding(
        f"pair({ea.key},{eb.key})",
        lambda ab: coding.pair(ea(ab[0]), eb(ab[1])),
        contains, dec, _sample_pair(ea, eb),
    )


def _sample_pair(ea, eb):
    if ea.sample is None or eb.sample is None:
        return None
    return lambda r: (ea.sample(r), eb.sample(r))


LEFT, RIGHT = "L", "R"


def sum_encoding(ea: Encoding, eb: Encoding) -> Encoding:
    """Tagged union: (L, x) |-> 2^(ea(x)+1), (R, y) |-> 3^(eb(y)+1).

    The +1 keeps (L, x) and (R, y) apart when both codes are 0.
    """
    def enc(v):
        tag, x = v
        if tag == LEFT:
            return 2 ** (ea(x) + 1)
        if tag == RIGHT:
            return 3 ** (eb(x) + 1)
        raise ValueError(f"bad tag {tag!r}")

    def split(n):
        ab = _prod_split(n)
        if ab is None:
            return None
        a, b = ab
        if a > 0 and b == 0 and ea.contains(a - 1):
            return LEFT, a - 1
        if b > 0 and a == 0 and eb.contains(b - 1):
            return RIGHT, b - 1
        return None

    def dec(n):
        tag, k = split(n)
        return tag, (ea if tag == LEFT else eb).decode(k)

    def sample(r):
        if r.random() < 0.5:
            return LEFT, ea.sample(r)
        return RIGHT, eb.sample(r)

    return Encoding(
        f"sum({ea.key},{eb.key})", enc, lambda n: split(n) is not None, dec,
        sample if ea.sample and eb.sample else None,
    )


def _plist_codes(n: int) -> list[int] | None:
    """Element codes of a prime-power list code, or None."""
    if not _is_nat(n) or n == 0:
        return None
    exps = coding.prime_exponents(n)
    if any(e == 0 for e in exps):
        return None
    return [e - 1 for e in exps]


def _plist_encode(codes: Sequence[int]) -> int:
    out = 1
    for i, c in enumerate(codes):
        out *= coding.nth_prime(i) ** (c + 1)
    return out


def list_encoding(ea: Encoding) -> Encoding:
    """[x0, ..., xn] |-> prod_i p_i^(ea(xi) + 1), [] |-> 1.

    Every exponent is shifted by one so that lists ending in a 0-coded
    element stay distinguishable from shorter ones.
    """
    def contains(n):
        codes = _plist_codes(n)
        return codes is not None and all(ea.contains(c) for c in codes)

    def sample(r):
        return [ea.sample(r) for _ in range(r.randrange(5))]

    return Encoding(
        f"list({ea.key})",
        lambda xs: _plist_encode([ea(x) for x in xs]),
        contains,
        lambda n: [ea.decode(c) for c in _plist_codes(n)],
        sample if ea.sample else None,
    )


def pack_encoding(ea: Encoding) -> Encoding:
    """Bit-packed lists: linear in the total size of the element codes."""
    def contains(n):
        codes = coding.unpack(n) if _is_nat(n) else None
        return codes is not None and all(ea.contains(c) for c in codes)

    def sample(r):
        return [ea.sample(r) for _ in range(r.randrange(5))]

    return Encoding(
        f"pack({ea.key})",
        lambda xs: coding.pack([ea(x) for x in xs]),
        contains,
        lambda n: [ea.decode(c) for c in coding.unpack(n)],
        sample if ea.sample else None,
    )


_CONSTRUCTORS = {
    "prod": (2, product_encoding),
    "pair": (2, pair_encoding),
    "sum": (2, sum_encoding),
    "list": (1, list_encoding),
    "pack": (1, pack_encoding),
}


def resolve(key: str) -> Encoding:
    """The encoding named by ``key``."""
    if key in _CACHE:
        return _CACHE[key]
    enc = _parse_key(key.replace(" ", ""))
    _CACHE[key] = enc
    return enc


def _parse_key(key: str) -> Encoding:
    if key in _BASE:
        return _BASE[key]
    head, sep, rest = key.partition("(")
    if not sep or not rest.endswith(")") or head not in _CONSTRUCTORS:
        raise KeyError(f"unknown encoding {key!r}")
    arity, ctor = _CONSTRUCTORS[head]
    parts, depth, cur = [], 0, ""
    for ch in rest[:-1]:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    parts.append(cur)
    if len(parts) != arity:
        raise KeyError(f"{head} takes {arity} argument(s)")
    return ctor(*[resolve(p) for p in parts])


# --------------------------------------------------------------------------
# scheme helpers shared by the library routines

def _combine(scheme: str, a: int, b: int) -> int:
    if scheme == "prod":
        return 2 ** a * 3 ** b
    return coding.pair(a, b)


def _split(scheme: str, n: int) -> tuple[int, int]:
    if scheme == "prod":
        ab = _prod_split(n)
    else:
        ab = coding.unpair(n) if _is_nat(n) and n > 0 else None
    if ab is None:
        raise Undefined(f"{n} is not a {scheme} code")
    return ab


def _list_codes(scheme: str, n: int) -> list[int]:
    codes = _plist_codes(n) if scheme == "list" else (coding.unpack(n) if _is_nat(n) else None)
    if codes is None:
        raise Undefined(f"{n} is not a {scheme} code")
    return codes


def _list_make(scheme: str, codes: Sequence[int]) -> int:
    return _plist_encode(codes) if scheme == "list" else coding.pack(codes)


def _scheme_of(enc: Encoding) -> str:
    return enc.key.split("(", 1)[0]


# --------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class ComputableMap:
    """A map ``source -> target`` together with a code computing it on codes."""

    source: Encoding
    target: Encoding
    code: MachineCode

    def __call__(self, x: Any, fuel: int = 10**6) -> Any:
        out = universal(self.code, self.source(x), fuel, detect_loops=True)
        if isinstance(out, Halted):
            return self.target.decode(out.value)
        if out.proven_divergent:
            raise Undefined(f"undefined at {x!r}")
        raise BudgetExhausted(f"no answer within {fuel} steps")

    def on_codes(self, n: int, fuel: int = 10**6):
        return universal(self.code, n, fuel)


def identity_map(e: Encoding) -> ComputableMap:
    return ComputableMap(e, e, MachineCode.of(IDENTITY))


def compose(f: ComputableMap, g: ComputableMap) -> ComputableMap:
    """g after f."""
    if f.target != g.source:
        raise BoundaryMismatch(f"{f.target.key} != {g.source.key}")
    return ComputableMap(f.source, g.target, seq(f.code, g.code))


@macro("FANOUT", "code", "code", "str")
def _fanout(x, meter, f, g, scheme):
    return _combine(scheme, evaluate(f, x, meter), evaluate(g, x, meter))


@macro("PAR", "code", "code", "str", "str")
def _par(x, meter, f, g, src, tgt):
    a, b = _split(src, x)
    return _combine(tgt, evaluate(f, a, meter), evaluate(g, b, meter))


@macro("PROJ", "nat", "str")
def _proj(x, meter, i, scheme):
    return _split(scheme, x)[i]


def pairing(f: ComputableMap, g: ComputableMap, scheme: str = "prod") -> ComputableMap:
    """a |-> (f(a), g(a))."""
    if f.source != g.source:
        raise BoundaryMismatch(f"{f.source.key} != {g.source.key}")
    ctor = product_encoding if scheme == "prod" else pair_encoding
    return ComputableMap(
        f.source, ctor(f.target, g.target),
        MachineCode.of(Macro("FANOUT", (f.code.term, g.code.term, scheme))),
    )


def parallel(f: ComputableMap, g: ComputableMap, scheme: str = "prod") -> ComputableMap:
    """(a, b) |-> (f(a), g(b))."""
    ctor = product_encoding if scheme == "prod" else pair_encoding
    return ComputableMap(
        ctor(f.source, g.source), ctor(f.target, g.target),
        MachineCode.of(Macro("PAR", (f.code.term, g.code.term, scheme, scheme))),
    )


def projection(product: Encoding, i: int) -> ComputableMap:
    scheme = _scheme_of(product)
    if scheme not in ("prod", "pair"):
        raise BoundaryMismatch(f"{product.key} is not a product")
    left, right = _factors(product)
    return ComputableMap(product, (left, right)[i], MachineCode.of(Macro("PROJ", (i, scheme))))


def _factors(enc: Encoding) -> list[Encoding]:
    inner = enc.key[enc.key.index("(") + 1:-1]
    parts, depth, cur = [], 0, ""
    for ch in inner:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    parts.append(cur)
    return [resolve(p) for p in parts]


# --------------------------------------------------------------------------
# inverses and lists


@macro("INV", "str")
def _inv(x, meter, key):
    """x if x is in the image of the named encoding, else undefined."""
    meter.charge(1)
    if not resolve(key).contains(x):
        raise Undefined(f"{x} not in image of {key}")
    return x


def inverse_map(e: Encoding) -> ComputableMap:
    """The partial inverse N -> A of an encoding, defined on its image."""
    return ComputableMap(NAT, e, MachineCode.of(Macro("INV", (e.key,))))


@macro("MAPL", "code", "str")
def _mapl(x, meter, f, scheme):
    codes = _list_codes(scheme, x)
    return _list_make(scheme, [evaluate(f, c, meter) for c in codes])


def map_list(f: ComputableMap, scheme: str = "list") -> ComputableMap:
    """L(f): apply f elementwise; undefined if any application is."""
    ctor = list_encoding if scheme == "list" else pack_encoding
    return ComputableMap(
        ctor(f.source), ctor(f.target), MachineCode.of(Macro("MAPL", (f.code.term, scheme))),
    )


def lu(code, scheme: str = "list") -> ComputableMap:
    """LU(T, -): run ``code`` on every entry of a list of naturals."""
    return map_list(ComputableMap(NAT, NAT, MachineCode.of(code)), scheme)


def list_union(l1: Sequence, l2: Sequence) -> list:
    """The list that reads l1 at indices 0..n and l2(i - n - 1) after."""
    n = len(l1) - 1
    m = len(l2) - 1
    out = []
    for i in range(n + m + 2):
        out.append(l1[i] if i <= n else l2[i - n - 1])
    return out


@macro("LUNION", "str", "str")
def _lunion(x, meter, pscheme, lscheme):
    a, b = _split(pscheme, x)
    meter.charge(1)
    return _list_make(lscheme, _list_codes(lscheme, a) + _list_codes(lscheme, b))


def union_map(e: Encoding, scheme: str = "list", pscheme: str = "prod") -> ComputableMap:
    lst = (list_encoding if scheme == "list" else pack_encoding)(e)
    src = (product_encoding if pscheme == "prod" else pair_encoding)(lst, lst)
    return ComputableMap(src, lst, MachineCode.of(Macro("LUNION", (pscheme, scheme))))


def length(l: Sequence) -> int:
    """Largest index of a nonempty list (a list on {0..n} has length n)."""
    if not l:
        raise Undefined("the empty list has no largest index")
    return len(l) - 1


def element(l: Sequence, i: int):
    """l(i) for 0 <= i <= length(l); undefined beyond."""
    if not 0 <= i < len(l):
        raise Undefined(f"index {i} beyond length {len(l) - 1}")
    return l[i]


@macro("LEN", "str")
def _len(x, meter, scheme):
    meter.charge(1)
    codes = _list_codes(scheme, x)
    if not codes:
        raise Undefined("empty list")
    return len(codes) - 1


@macro("NTH", "str", "str")
def _nth(x, meter, pscheme, lscheme):
    l, i = _split(pscheme, x)
    codes = _list_codes(lscheme, l)
    meter.charge(1)
    if i >= len(codes):
        raise Undefined("index out of range")
    return codes[i]


def length_map(e: Encoding, scheme: str = "list") -> ComputableMap:
    lst = (list_encoding if scheme == "list" else pack_encoding)(e)
    return ComputableMap(lst, NAT, MachineCode.of(Macro("LEN", (scheme,))))


def element_map(e: Encoding, scheme: str = "list", pscheme: str = "prod") -> ComputableMap:
    """P: L(A) x N -> A."""
    lst = (list_encoding if scheme == "list" else pack_encoding)(e)
    src = (product_encoding if pscheme == "prod" else pair_encoding)(lst, NAT)
    return ComputableMap(src, e, MachineCode.of(Macro("NTH", (pscheme, scheme))))


__all__ = [
    "BoundaryMismatch", "BudgetExhausted", "CODES", "ComputableMap", "Encoding", "LEFT", "MINUS",
    "NAT", "NotInImage", "PLUS", "RIGHT", "SIGNS", "compose", "element", "element_map",
    "identity_map", "inverse_map", "length", "length_map", "list_encoding", "list_union", "lu",
    "map_list", "pack_encoding", "pair_encoding", "pairing", "parallel", "product_encoding",
    "projection", "register", "resolve", "sum_encoding", "union_map",
]
