"""Signed streams, their stabilization, and decision machines.

A signed stream over B is a machine whose outputs, where defined, are codes
``pair(e_B(b), e(sign))`` with e(-) = 0 and e(+) = 1. A decision machine over
B reads ``pair(e_B(b), n)`` and answers 0 or 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Any, Hashable, Iterable, Iterator, Sequence

from . import coding
from .category import (
    MINUS, NAT, PLUS, SIGNS, BudgetExhausted, Encoding, resolve,
)
from .machine import (
    Exhausted, MachineCode, Macro, Meter, SENTINEL, Undefined, _as_term, evaluate, macro,
    dovetail, totalized_prefix, universal, Halted,
)


def stream_encoding(eB: Encoding) -> Encoding:
    """e_{B x {+-}}."""
    return resolve(f"pair({eB.key},pm)")


def graph_encoding(eB: Encoding) -> Encoding:
    """e_{N x B x {+-}}: (n, b, s) |-> pair(n, pair(e_B(b), e(s)))."""
    return resolve(f"pair(nat,pair({eB.key},pm))")


def decision_encoding(eB: Encoding) -> Encoding:
    """e_{B x N}, the input side of a decision machine."""
    return resolve(f"pair({eB.key},nat)")


# --------------------------------------------------------------------------
# stability in lists


def is_l_stable(l: Sequence[tuple[Any, str]], b: Any) -> bool:
    """Some (b, +) is not followed by any (b, -); i.e. b's last entry is +."""
    for elem, sign in reversed(l):
        if elem == b:
            return sign == PLUS
    return False


def stable_set(l: Sequence[tuple[Any, str]]) -> set:
    last: dict = {}
    for elem, sign in l:
        last[elem] = sign
    return {b for b, s in last.items() if s == PLUS}


@dataclass(frozen=True)
class PeriodicStream:
    """The stream prefix + tail + tail + ... over B x {+-}."""

    prefix: tuple
    tail: tuple

    def __post_init__(self):
        if not self.tail:
            raise ValueError("tail must be nonempty")

    def at(self, n: int) -> tuple[Any, str]:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.tail[(n - len(self.prefix)) % len(self.tail)]

    def take(self, n: int) -> list:
        return [self.at(i) for i in range(n)]

    def machine(self, eB: Encoding = NAT, delay: int = 0) -> MachineCode:
        """A code computing the stream. ``delay`` makes input x cost an extra
        (x * delay) mod 5 steps so dovetailed discovery comes out of order."""
        enc = stream_encoding(eB)
        return MachineCode.of(Macro("EPS", (
            coding.pack([enc(e) for e in self.prefix]),
            coding.pack([enc(e) for e in self.tail]),
            delay,
        )))


def stabilization_oracle(stream: PeriodicStream) -> frozenset:
    """Exact stabilization of an eventually periodic stream.

    An element occurring in the tail recurs forever, so it is stable iff all
    of its tail occurrences are +. Otherwise its last occurrence in the
    prefix decides.
    """
    out = set()
    tail_signs: dict = {}
    for b, s in stream.tail:
        tail_signs.setdefault(b, set()).add(s)
    for b, signs in tail_signs.items():
        if signs == {PLUS}:
            out.add(b)
    for b in {b for b, _ in stream.prefix} - set(tail_signs):
        if is_l_stable(stream.prefix, b):
            out.add(b)
    return frozenset(out)


@macro("EPS", "nat", "nat", "nat")
def _eps(x, meter, prefix, tail, delay):
    """Eventually periodic stream given by packed prefix and tail codes."""
    meter.charge((x * delay) % 5)
    pre = coding.unpack(prefix)
    tl = coding.unpack(tail)
    if x < len(pre):
        return pre[x]
    return tl[(x - len(pre)) % len(tl)]


@macro("POINTS", "nat")
def _points(x, meter, table):
    """Finite partial map: packed [i0, v0, i1, v1, ...]; undefined elsewhere."""
    flat = coding.unpack(table)
    for i in range(0, len(flat) - 1, 2):
        if flat[i] == x:
            return flat[i + 1]
    raise Undefined(f"no value at {x}")


def finite_stream(points: dict[int, tuple[Any, str]], eB: Encoding = NAT) -> MachineCode:
    """A code defined exactly on the keys of ``points``."""
    enc = stream_encoding(eB)
    flat = []
    for i in sorted(points):
        flat += [i, enc(points[i])]
    return MachineCode.of(Macro("POINTS", (coding.pack(flat),)))


def raw_points(points: dict[int, int]) -> MachineCode:
    """Like :func:`finite_stream` but with raw output codes (possibly off-image)."""
    flat = []
    for i in sorted(points):
        flat += [i, points[i]]
    return MachineCode.of(Macro("POINTS", (coding.pack(flat),)))


# --------------------------------------------------------------------------
# K, Gr, f^T


@macro("K", "code", "str")
def _k(x, meter, code, key):
    """Run code; keep the output only when it codes an element of B x {+-}."""
    v = evaluate(code, x, meter)
    if not resolve(f"pair({key},pm)").contains(v):
        raise Undefined(f"{v} is not a signed element")
    return v


def coerce_K(code, eB: Encoding) -> MachineCode:
    return MachineCode.of(Macro("K", (_as_term(code), eB.key)))


@macro("GR", "code", "str")
def _gr(x, meter, code, key):
    """n |-> pair(n, K(code)(n))."""
    return coding.pair(x, _k(x, meter, code, key))


def graph_stream(code, eB: Encoding) -> MachineCode:
    return MachineCode.of(Macro("GR", (_as_term(code), eB.key)))


def total_graph(code, eB: Encoding) -> MachineCode:
    """Tot(Gr(code)): total, emitting graph points or SENTINEL."""
    return MachineCode.of(Macro("TOT", (Macro("GR", (_as_term(code), eB.key)),)))


GraphPoint = tuple  # (n, b, sign)


def _decode_point(v: int, eB: Encoding) -> GraphPoint | None:
    if v == SENTINEL:
        return None
    n, bs = coding.unpair(v)
    eb, s = coding.unpair(bs)
    return n, eB.decode(eb), SIGNS.decode(s)


def f_T_prefix(code, eB: Encoding, n: int, meter: Meter) -> list[GraphPoint | None]:
    """f^T(0..n); None marks a sentinel output."""
    gr = Macro("GR", (_as_term(code), eB.key))
    return [_decode_point(v, eB) for v in totalized_prefix(gr, n, meter)]


def ord_graph(points: Iterable[GraphPoint | None]) -> list[tuple[Any, str]]:
    """l_S for the graphical set S of the given points; sentinels are skipped."""
    seen: dict[int, tuple] = {}
    for p in points:
        if p is None:
            continue
        i, b, s = p
        if i in seen and seen[i] != (b, s):
            raise ValueError(f"not graphical at index {i}")
        seen[i] = (b, s)
    return [seen[i] for i in sorted(seen)]


def _run_meter(fuel: int, what) :
    meter = Meter(fuel)
    try:
        return what(meter)
    except Exhausted as e:
        raise BudgetExhausted(f"budget of {fuel} exhausted") from e


def _lazy_points(code, eB: Encoding, horizon: int, fuel: int) -> Iterator[GraphPoint | None]:
    """f^T(0), ..., f^T(horizon), each yielded as soon as its stage ends.

    Same values as :func:`f_T_prefix`; running out of fuel raises
    BudgetExhausted after the ranks already yielded.
    """
    meter = Meter(fuel)
    gr = Macro("GR", (_as_term(code), eB.key))
    queue: list[int] = []
    head = 0
    stages = dovetail(gr, meter)
    try:
        for s, i, v in stages:
            if i >= 0:
                queue.append(v)
                continue
            if head < len(queue):
                yield _decode_point(queue[head], eB)
                head += 1
            else:
                yield None
            if s == horizon:
                return
    except Exhausted as e:
        raise BudgetExhausted(f"budget of {fuel} exhausted") from e


def decision_G(b: Any, code, n: int, eB: Encoding = NAT, fuel: int = 10**7) -> str:
    """+ iff b is l_S-stable for S the image of f^T on 0..n."""
    pts = _run_meter(fuel, lambda m: f_T_prefix(code, eB, n, m))
    return PLUS if is_l_stable(ord_graph(pts), b) else MINUS


@dataclass
class SweepStep:
    n: int
    point: GraphPoint | None
    plus: frozenset  # elements l_S-stable after this rank


def g_sweep(code, eB: Encoding, horizon: int, fuel: int = 10**8,
            watch: Iterable[Hashable] | None = None) -> Iterator[SweepStep]:
    """G(-, T, n) for n = 0..horizon in one pass.

    Equal to calling :func:`decision_G` at every n (this is tested): l_S only
    grows, and b's verdict depends only on b's point of largest index.
    ``watch`` limits the reported sets to the given elements.
    """
    watch = None if watch is None else set(watch)
    last: dict = {}
    plus: set = set()
    for n, p in enumerate(_lazy_points(code, eB, horizon, fuel)):
        if p is not None:
            i, b, s = p
            if watch is None or b in watch:
                if b not in last or i > last[b][0]:
                    last[b] = (i, s)
                    if s == PLUS:
                        plus.add(b)
                    else:
                        plus.discard(b)
        yield SweepStep(n, p, frozenset(plus))


# --------------------------------------------------------------------------
# decision machines


@macro("DEC", "code", "str")
def _dec(x, meter, code, key):
    """(b, n) |-> G(b, code, n) as 0/1."""
    enc = resolve(f"pair({key},nat)")
    if not enc.contains(x):
        raise Undefined("not a (b, n) code")
    eb, n = coding.unpair(x)
    eB = resolve(key)
    pts = f_T_prefix(code, eB, n, meter)
    return int(is_l_stable(ord_graph(pts), eB.decode(eb)))


def dec_B(code, eB: Encoding = NAT) -> MachineCode:
    return MachineCode.of(Macro("DEC", (_as_term(code), eB.key)))


@macro("OMEGA", "code", "str")
def _omega(x, meter, code, key):
    """Keep code's answer only on (b, n) inputs and only when it is 0 or 1."""
    if not resolve(f"pair({key},nat)").contains(x):
        raise Undefined("not a (b, n) code")
    v = evaluate(code, x, meter)
    if v not in (0, 1):
        raise Undefined(f"{v} is not a sign")
    return v


def omega(code, eB: Encoding) -> MachineCode:
    """Coerce into the decision machines over B."""
    return MachineCode.of(Macro("OMEGA", (_as_term(code), eB.key)))


def decide(dcode, b: Any, n: int, eB: Encoding = NAT, fuel: int = 10**7) -> str:
    """D(b, n) for a decision machine code; raises on exhaustion or undefinedness."""
    out = universal(dcode, coding.pair(eB(b), n), fuel, detect_loops=True)
    if isinstance(out, Halted):
        if out.value not in (0, 1):
            raise ValueError(f"decision machine answered {out.value}")
        return PLUS if out.value else MINUS
    if out.proven_divergent:
        raise Undefined(f"D({b!r}, {n}) is undefined")
    raise BudgetExhausted(f"D({b!r}, {n}) not answered within {fuel}")


@dataclass(frozen=True)
class Verdict:
    kind: str  # "plus-stable-so-far", "refuted-at" or "unknown"
    k: int | None = None

    def __str__(self) -> str:
        return f"refuted-at({self.k})" if self.kind == "refuted-at" else self.kind


def verdict_of(signs: Sequence[str]) -> Verdict:
    """Prefix verdict for D(b, 0..h) given as a list of signs.

    plus-stable-so-far: the last + is not followed by any -.
    refuted-at(k): the last + is followed by a -, first at k.
    unknown: no + at all.
    """
    last_plus = None
    for m in range(len(signs) - 1, -1, -1):
        if signs[m] == PLUS:
            last_plus = m
            break
    if last_plus is None:
        return Verdict("unknown")
    return Verdict("plus-stable-so-far") if last_plus == len(signs) - 1 else Verdict("refuted-at", last_plus + 1)


def is_decided_prefix(dcode, b: Any, horizon: int, eB: Encoding = NAT, fuel: int = 10**7) -> Verdict:
    return verdict_of([decide(dcode, b, m, eB, fuel) for m in range(horizon + 1)])


def decided_by_tail(signs: Sequence[str], period: int) -> bool:
    """Decidedness of an eventually periodic sign sequence.

    ``signs`` must already be periodic with the given period over its last
    two periods (checked). Decided iff the last period is all +.
    """
    if len(signs) < 2 * period:
        raise ValueError("need at least two periods")
    a = list(signs[-2 * period:-period])
    b = list(signs[-period:])
    if a != b:
        raise ValueError("sequence is not yet periodic")
    return all(s == PLUS for s in b)


def stream_decided_set(stream: PeriodicStream, eB: Encoding = NAT, delay: int = 0) -> frozenset:
    """Elements decided by Dec_B(T) for T computing ``stream``, by tail analysis.

    Discovery costs repeat with period 5 and the stream with its tail
    length, so after the prefix and a settling window every G(b, T, -)
    repeats with period lcm(5, len(tail)). We sweep well past that point
    and read off the last period.
    """
    period = lcm(5, len(stream.tail))
    horizon = len(stream.prefix) + 20 + 4 * period
    code = stream.machine(eB, delay)
    elems = {b for b, _ in stream.prefix} | {b for b, _ in stream.tail}
    steps = list(g_sweep(code, eB, horizon))
    out = set()
    for b in elems:
        signs = [PLUS if b in st.plus else MINUS for st in steps]
        if decided_by_tail(signs, period):
            out.add(b)
    return frozenset(out)
