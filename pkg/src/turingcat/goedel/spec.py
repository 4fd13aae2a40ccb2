"""Spec_i: interleave a signed stream with speculative universal claims."""

from __future__ import annotations

from dataclasses import dataclass

from .. import coding
from ..category import SIGNS
from ..fol.encoding import SENTENCES
from ..fol.syntax import Formula
from ..fol.translate import Translation, name_of, translation_named
from ..machine import MachineCode, Macro, Meter, _as_term, macro, try_run
from ..stability import _k
from .formulas import alpha, enumerator_J

#: streams produced here range over sentences of any signature
KEY = SENTENCES.key


def speculative_entry(k: int, t: Translation) -> tuple[Formula, str]:
    """(t(forall m. phi), sign) for (phi, sign) = J(k)."""
    phi, sign = enumerator_J(k)
    return t(alpha(phi)), sign


@macro("SPEC", "code", "str")
def _spec(x, meter, code, tname):
    """Rank 2k+1 repeats K(code) at k; rank 2k carries J(k) as a universal claim."""
    k, odd = divmod(x, 2)
    if odd:
        return _k(k, meter, code, KEY)
    f, sign = speculative_entry(k, translation_named(tname))
    meter.charge(1)
    return coding.pair(SENTENCES(f), SIGNS(sign))


def spec_i(code, t: Translation) -> MachineCode:
    return MachineCode.of(Macro("SPEC", (_as_term(code), name_of(t))))


@dataclass(frozen=True)
class SpeculativeStream:
    """Spec_i(code), with the provenance of each rank available."""

    source: MachineCode
    translation: Translation

    @property
    def code(self) -> MachineCode:
        return spec_i(self.source, self.translation)

    @staticmethod
    def origin(n: int) -> tuple[str, int]:
        """("stream", k) for rank 2k+1, ("J", k) for rank 2k."""
        k, odd = divmod(n, 2)
        return ("stream", k) if odd else ("J", k)

    def prefix(self, n: int, fuel: int = 10**5) -> list[tuple[Formula, str] | None]:
        """Entries at ranks 0..n; None where the rank does not answer within ``fuel``."""
        out = []
        code = self.code
        meter = Meter(fuel * (n + 1))
        for r in range(n + 1):
            v = try_run(code, r, meter, fuel)
            out.append(None if v is None else _decode(v))
        return out


def _decode(v: int) -> tuple[Formula, str]:
    f, s = coding.unpair(v)
    return SENTENCES.decode(f), SIGNS.decode(s)


__all__ = ["SpeculativeStream", "speculative_entry", "spec_i"]
