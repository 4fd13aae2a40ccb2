"""Translations between first-order languages."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .syntax import (
    ARITH, SET, And, Eq, Exists, Fn, Forall, Formula, Imp, Not, Or, Rel, Signature, Term, Var,
)


class OutOfLanguage(ValueError):
    pass


@dataclass(frozen=True)
class Translation:
    kind: str  # "identity", "von-neumann" or "user"
    source: Signature | None
    target: Signature | None
    fn: Callable[[Formula], Formula]

    def __call__(self, f: Formula) -> Formula:
        return translate(self, f)


def translate(t: Translation, f: Formula) -> Formula:
    if t.source is not None and not t.source.admits(f):
        raise OutOfLanguage(f"formula is not in the source language of the {t.kind} translation")
    return t.fn(f)


def identity(sig: Signature | None = None) -> Translation:
    return Translation("identity", sig, sig, lambda f: f)


_VN_FUN = {"0": "empty", "s": "suc", "+": "oadd", "*": "omul"}


def _vn_term(t: Term) -> Term:
    if isinstance(t, Var):
        return t
    return Fn(_VN_FUN[t.name], tuple(_vn_term(a) for a in t.args))


def _omega_guard(x: str) -> Formula:
    return Rel("in", (Var(x), Fn("omega")))


def von_neumann_formula(f: Formula) -> Formula:
    """Arithmetic into set theory: n becomes the ordinal n, < becomes membership,
    and quantifiers are relativized to omega."""
    if isinstance(f, Eq):
        return Eq(_vn_term(f.left), _vn_term(f.right))
    if isinstance(f, Rel):
        return Rel("in", tuple(_vn_term(a) for a in f.args))
    if isinstance(f, Not):
        return Not(von_neumann_formula(f.body))
    if isinstance(f, (And, Or, Imp)):
        return type(f)(von_neumann_formula(f.left), von_neumann_formula(f.right))
    body = von_neumann_formula(f.body)
    if isinstance(f, Forall):
        return Forall(f.var, Imp(_omega_guard(f.var), body))
    return Exists(f.var, And(_omega_guard(f.var), body))


VON_NEUMANN = Translation("von-neumann", ARITH, SET, von_neumann_formula)
IDENTITY = identity(ARITH)


def user(fn: Callable[[Formula], Formula], source: Signature | None = None,
         target: Signature | None = None) -> Translation:
    return Translation("user", source, target, fn)


#: translations that can be named inside machine codes
TRANSLATIONS: dict[str, Translation] = {"identity": IDENTITY, "vonneumann": VON_NEUMANN}


def translation_named(name: str) -> Translation:
    try:
        return TRANSLATIONS[name]
    except KeyError:
        raise ValueError(f"unknown translation {name!r}; known: {sorted(TRANSLATIONS)}") from None


def name_of(t: Translation) -> str:
    for k, v in TRANSLATIONS.items():
        if v is t:
            return k
    raise ValueError("translation is not registered; add it to TRANSLATIONS to use it in codes")
