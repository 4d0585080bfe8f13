"""Many-valued logic programs and their reductions to 2-valued modal logics."""

from .errors import (
    BudgetExceeded, EvaluationError, GroundingError, LatticeError, MvredError, ParseError,
    StratificationError,
)
from .lattice import LatticeSpec, builtin_lattice, check_lattice, lattice_from_selector, residuum
from .semantics import Interpretation, compute_model, satisfies_rule, valuation
from .syntax import format_formula, format_program, ground, parse_formula, parse_program

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "EvaluationError", "GroundingError", "LatticeError", "MvredError",
    "ParseError", "StratificationError", "LatticeSpec", "builtin_lattice", "check_lattice",
    "lattice_from_selector", "residuum", "Interpretation", "compute_model", "satisfies_rule",
    "valuation", "format_formula", "format_program", "ground", "parse_formula", "parse_program",
]
