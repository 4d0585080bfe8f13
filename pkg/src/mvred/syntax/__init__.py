from .ast import *  # noqa: F401,F403
from .ast import __all__ as _ast_all
from .ground import ground, rule_variables
from .parser import parse_formula, parse_mv_formula, parse_program
from .printer import format_formula, format_program, format_rule

__all__ = [*_ast_all, "ground", "rule_variables", "parse_formula", "parse_mv_formula",
           "parse_program", "format_formula", "format_program", "format_rule"]
