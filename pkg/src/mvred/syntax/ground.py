"""Grounding over the program's constant set."""

from __future__ import annotations

from itertools import product

from ..errors import GroundingError
from .ast import Literal, Program, Rule, is_var

__all__ = ["ground", "rule_variables"]


def rule_variables(rule: Rule) -> list[str]:
    seen: list[str] = []
    for atom in [rule.head, *(lit.atom for lit in rule.literals())]:
        seen.extend(t for t in atom.args if is_var(t) and t not in seen)
    return seen


def _instantiate(rule: Rule, g: dict[str, str]) -> Rule:
    def sub(atom):
        return type(atom)(atom.pred, tuple(g.get(t, t) for t in atom.args))

    body = tuple(tuple(Literal(sub(l.atom), l.negated) for l in block) for block in rule.body)
    return Rule(sub(rule.head), body, rule.annotation)


def ground(program: Program) -> Program:
    """Replace every rule by all its instances over the constants, in order.

    Instances of one rule follow the lexicographic order of assignments to
    its variables (variables in first-occurrence order, constants sorted).
    """
    rules = []
    consts = program.constants
    for rule in program.rules:
        names = rule_variables(rule)
        if not names:
            rules.append(rule)
            continue
        if not consts:
            raise GroundingError(f"rule for {rule.head} has variables but there are no constants")
        for combo in product(consts, repeat=len(names)):
            rules.append(_instantiate(rule, dict(zip(names, combo))))
    return Program(program.lattice, tuple(rules), dict(program.predicates), consts)
