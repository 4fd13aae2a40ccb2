"""First-order logic: syntax, numbering, arithmetic, proofs and translations."""

from .arith import Level, NotArithmetic, NotBounded, classify_prenex, eval_sigma0, is_delta0, q_axioms
from .encoding import FORMULAS, SENTENCES, formula_encoding
from .proofs import Closure, Just, Line, ProofCheck, check_proof, closure, phi_closure
from .syntax import (
    ARITH, SET, And, Eq, Exists, Fn, Forall, Formula, Imp, Not, Or, Rel, Signature, Var,
    free_vars, is_sentence, numeral,
)
from .text import ParseError, parse, show
from .translate import IDENTITY, VON_NEUMANN, OutOfLanguage, Translation, translate

__all__ = [
    "ARITH", "And", "Closure", "Eq", "Exists", "FORMULAS", "Fn", "Forall", "Formula", "IDENTITY",
    "Imp", "Just", "Level", "Line", "Not", "NotArithmetic", "NotBounded", "Or", "OutOfLanguage",
    "ParseError", "ProofCheck", "Rel", "SENTENCES", "SET", "Signature", "Translation", "VON_NEUMANN",
    "Var", "check_proof", "classify_prenex", "closure", "eval_sigma0", "formula_encoding",
    "free_vars", "is_delta0", "is_sentence", "numeral", "parse", "phi_closure", "q_axioms", "show",
    "translate",
]
