"""H, Tur and the map G(T) = s(Tur(T))."""

from __future__ import annotations

from .. import coding
from ..fol.encoding import SENTENCES
from ..fol.translate import IDENTITY, Translation, name_of, translation_named
from ..machine import InvalidCode, MachineCode, Macro, Undefined, _as_term, decode, evaluate, macro, smn
from ..stability import dec_B
from .arithmetize import GoedelSentence, sentence_s, translated
from .closure import POINT_FUEL, closure_C
from .spec import spec_i


def decision_code(f_code, t: Translation, point_fuel: int = POINT_FUEL) -> MachineCode:
    """Dec_L(C(Spec_i(F)))."""
    return dec_B(closure_C(spec_i(f_code, t), point_fuel), SENTENCES)


@macro("HMAP", "str", "nat")
def _hmap(x, meter, tname, point_fuel):
    """pair(F, pair(T, n)) |-> Dec_L(C(Spec_i(F)))(i(s(T)), n)."""
    if x == 0:
        raise Undefined("not a pair")
    f, rest = coding.unpair(x)
    if rest == 0:
        raise Undefined("not a pair")
    T, n = coding.unpair(rest)
    try:
        f_term, _ = decode(f), decode(T)
    except InvalidCode:
        raise Undefined("not a code") from None
    t = translation_named(tname)
    claim = t(sentence_s(MachineCode(T)).sentence)
    meter.charge(1)
    dec = decision_code(f_term, t, point_fuel)
    return evaluate(dec, coding.pair(SENTENCES(claim), n), meter)


def h_code(t: Translation = IDENTITY, point_fuel: int = POINT_FUEL) -> MachineCode:
    """The three-input map H(F, T, n) as a code on pair(F, pair(T, n))."""
    return MachineCode.of(Macro("HMAP", (name_of(t), point_fuel)))


def build_H_and_Tur(f_code, t: Translation = IDENTITY, point_fuel: int = POINT_FUEL) -> MachineCode:
    """Tur(F): the specialization of H at F, a decision machine on pair(T, n)."""
    f = MachineCode.of(_as_term(f_code))
    return smn(h_code(t, point_fuel), f.number)


def goedel_G(f_code, t: Translation = IDENTITY, point_fuel: int = POINT_FUEL) -> GoedelSentence:
    """G(F) = s(Tur(F)); carries t(s) as well when t is not the identity."""
    g = sentence_s(build_H_and_Tur(f_code, t, point_fuel))
    return g if t is IDENTITY else translated(g, t)


__all__ = ["build_H_and_Tur", "decision_code", "goedel_G", "h_code"]
