"""The diagonal pipeline: J, Spec_i, C, H, Tur and the sentence s(T)."""

from .arithmetize import GoedelSentence, lower, matrix, sentence_s, trace_core, trace_predicate
from .closure import ClosureRun, Entry, closure_C, closure_entries, premise_lists
from .formulas import F0Enumeration, J_list, Z, alpha, enumerator_J, is_f0, is_n_decided
from .pipeline import build_H_and_Tur, decision_code, goedel_G, h_code
from .spec import SpeculativeStream, spec_i, speculative_entry

__all__ = [
    "ClosureRun", "Entry", "F0Enumeration", "GoedelSentence", "J_list", "SpeculativeStream", "Z",
    "alpha", "build_H_and_Tur", "closure_C", "closure_entries", "decision_code", "enumerator_J",
    "goedel_G", "h_code", "is_f0", "is_n_decided", "lower", "matrix", "premise_lists",
    "sentence_s", "spec_i", "speculative_entry", "trace_core", "trace_predicate",
]
