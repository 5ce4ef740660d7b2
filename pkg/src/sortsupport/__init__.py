"""Support checking for sortedness constraints, and a gadget reduction from
NAE-3SAT that makes the question hard.

The pieces: :mod:`intervals` (integer interval sets), :mod:`instance`
(constraint instances and witnesses), :mod:`solver` (exact support search),
:mod:`consistency` (domain and bounds consistency by definition), :mod:`nae`
(formulas and a brute-force oracle) and :mod:`reduction` (formula to instance
and back).
"""

__version__ = "0.1.0"

from .intervals import IntegerSet, lex_leq, parse_set, format_set  # noqa: E402
from .instance import SortInstance, SupportWitness, Var, validate_witness  # noqa: E402
from .solver import Outcome, Pin, SolveOptions, Verdict, brute_force_support, decide_support  # noqa: E402
from .nae import CnfFormula, balance_occurrences, nae_brute_force, nae_check, parse_dimacs  # noqa: E402
from .reduction import reduce, roundtrip_verify, verify_structure  # noqa: E402

__all__ = [
    "IntegerSet", "lex_leq", "parse_set", "format_set",
    "SortInstance", "SupportWitness", "Var", "validate_witness",
    "Outcome", "Pin", "SolveOptions", "Verdict", "brute_force_support", "decide_support",
    "CnfFormula", "balance_occurrences", "nae_brute_force", "nae_check", "parse_dimacs",
    "reduce", "roundtrip_verify", "verify_structure",
]
