"""C(T): a signed enumeration of the deductive closure of T's stable set."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .. import coding
from ..category import MINUS, PLUS, SIGNS, BudgetExhausted, _plist_encode
from ..fol.encoding import SENTENCES
from ..fol.proofs import Proof, phi_closure
from ..fol.syntax import Formula
from ..machine import Exhausted, MachineCode, Macro, Meter, _as_term, macro, try_run
from ..stability import _k, is_l_stable

KEY = SENTENCES.key

#: default step budget per graph point per block
POINT_FUEL = 2000


def premise_lists(n: int) -> list[tuple[int, ...]]:
    """L_n: the increasing index lists with max <= n (the empty list
    included), in the order of their prime-power list codes."""
    out = [c for r in range(n + 2) for c in combinations(range(n + 1), r)]
    return sorted(out, key=_plist_encode)


@dataclass(frozen=True)
class Entry:
    """One rank of C(T) with its provenance."""

    rank: int
    sentence: Formula
    sign: str
    indices: tuple[int, ...]  # the premise list l
    points: tuple  # the graph points (i, sentence, sign) of T read for l
    step: int  # the closure step m
    proof: Proof

    @property
    def premises(self) -> list[Formula]:
        return [b for _, b, _ in self.points]


class ClosureRun:
    """The recursion U_{k+1} = U_k u (entries of block k), computed on demand.

    Block k reads T's graph at 0..k+1. A graph point that is not produced
    within ``point_fuel * (k + 2)`` steps is left out of that block, which
    keeps every rank total; later blocks have larger budgets.
    """

    def __init__(self, code, point_fuel: int = POINT_FUEL, meter: Meter | None = None):
        self.code = _as_term(code)
        self.point_fuel = point_fuel
        self.meter = meter or Meter(10**12)
        self.entries: list[Entry] = []
        self.blocks = 0
        self._points: dict[int, tuple] = {}  # index -> (budget tried, point or None)

    def _point(self, i: int, budget: int):
        tried = self._points.get(i)
        if tried is not None and (tried[1] is not None or tried[0] >= budget):
            return tried[1]
        v = try_run(Macro("K", (self.code, KEY)), i, self.meter, budget)
        pt = None
        if v is not None:
            f, s = coding.unpair(v)
            pt = (i, SENTENCES.decode(f), SIGNS.decode(s))
        self._points[i] = (budget, pt)
        return pt

    def _block(self, k: int) -> list[Entry]:
        budget = self.point_fuel * (k + 2)
        full = [self._point(i, budget) for i in range(k + 2)]
        history = [(b, s) for p in full if p is not None for _, b, s in [p]]
        out = []
        for l in premise_lists(k + 1):
            pts = tuple(full[i] for i in l if full[i] is not None)
            premises = [b for _, b, _ in pts]
            zeta = PLUS if all(is_l_stable(history, b) for b in premises) else MINUS
            for m in range(k + 2):
                self.meter.charge(1)
                f, proof = phi_closure(premises, m)
                out.append(Entry(0, f, zeta, l, pts, m, proof))
        return out

    def upto(self, n: int) -> list[Entry]:
        while len(self.entries) <= n:
            base = len(self.entries)
            blk = self._block(self.blocks)
            self.entries += [Entry(base + j, *_fields(e)) for j, e in enumerate(blk)]
            self.blocks += 1
        return self.entries[: n + 1]

    def __getitem__(self, n: int) -> Entry:
        return self.upto(n)[n]


def _fields(e: Entry) -> tuple:
    return e.sentence, e.sign, e.indices, e.points, e.step, e.proof


def block_length(k: int) -> int:
    """|L_{k+1}| * (k + 2)."""
    return 2 ** (k + 2) * (k + 2)


_RUNS: dict[tuple, ClosureRun] = {}


def _run(code, point_fuel: int) -> ClosureRun:
    key = (MachineCode.of(_as_term(code)).number, point_fuel)
    r = _RUNS.get(key)
    if r is None:
        if len(_RUNS) > 256:
            _RUNS.clear()
        r = _RUNS[key] = ClosureRun(code, point_fuel)
    return r


@macro("C", "code", "nat")
def _c(x, meter, code, point_fuel):
    """Rank x of C(code): pair(sentence, sign)."""
    # a fixed charge: the actual work depends on what earlier calls cached,
    # and fuel accounting has to be reproducible
    meter.charge(x + 1)
    e = _run(code, point_fuel)[x]
    return coding.pair(SENTENCES(e.sentence), SIGNS(e.sign))


def closure_C(code, point_fuel: int = POINT_FUEL) -> MachineCode:
    return MachineCode.of(Macro("C", (_as_term(code), point_fuel)))


def closure_entries(code, n: int, point_fuel: int = POINT_FUEL, fuel: int = 10**7) -> list[Entry]:
    """C(code) at ranks 0..n with provenance, under a total budget."""
    run = ClosureRun(code, point_fuel, Meter(fuel))
    try:
        return run.upto(n)
    except Exhausted as e:
        raise BudgetExhausted(f"closure budget of {fuel} exhausted at rank {len(run.entries)}") from e


__all__ = ["ClosureRun", "Entry", "POINT_FUEL", "block_length", "closure_C", "closure_entries", "premise_lists"]
