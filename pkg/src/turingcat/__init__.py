"""Computability in a Turing category: codes, signed streams, stabilization,
first-order proofs and the diagonal construction of a Pi2 sentence."""

import sys

# code text writes numerals in decimal and codes nest other codes, so literals
# of many thousand digits are routine
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

# importing every module registers its library routines, so any code number
# produced by this package can be decoded
from . import category, coding, diophantine, fol, goedel, machine, stability  # noqa: F401

__version__ = "0.1.0"
