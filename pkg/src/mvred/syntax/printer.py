"""Canonical text rendering of programs and formulas.

Binary connectives are always parenthesised so that parsing the output gives
back the same AST.
"""

from __future__ import annotations

from .ast import (
    Atom, BoxGamma, Conj, Const, Dia, DiaD, Disj, Encap, FAtom, FOp, Impl,
    Literal, MAtom, Not, Op, Program, Rule,
)

__all__ = ["format_formula", "format_program", "format_rule"]

_MV_BINARY = {"and": "and", "or": "or", "imp": "->"}
_FLAT_BINARY = {"andA": "andA", "orA": "orA", "larrowA": "<-A"}


def format_formula(node) -> str:
    if isinstance(node, Atom):
        return str(node)
    if isinstance(node, Const):
        return f"@{node.value}"
    if isinstance(node, Op):
        if node.name == "neg":
            return f"~{format_formula(node.args[0])}"
        if node.name in _MV_BINARY and len(node.args) == 2:
            a, b = (format_formula(x) for x in node.args)
            return f"({a} {_MV_BINARY[node.name]} {b})"
        return f"${node.name}({', '.join(format_formula(x) for x in node.args)})"
    if isinstance(node, MAtom):
        return f"[{node.value}]{node.atom}"
    if isinstance(node, Not):
        return f"not {format_formula(node.arg)}"
    if isinstance(node, (Conj, Disj, Impl)):
        sym = {Conj: "and", Disj: "or", Impl: "->"}[type(node)]
        return f"({format_formula(node.left)} {sym} {format_formula(node.right)})"
    if isinstance(node, BoxGamma):
        return f"box_gamma {format_formula(node.arg)}"
    if isinstance(node, DiaD):
        return f"dia_d {format_formula(node.arg)}"
    if isinstance(node, Dia):
        return f"dia {format_formula(node.arg)}"
    if isinstance(node, Encap):
        return f"E({format_formula(node.arg)})"
    if isinstance(node, FAtom):
        return f"{node.flat_name}({', '.join(node.args + (node.value,))})"
    if isinstance(node, FOp):
        if node.name == "negA":
            return f"~A {format_formula(node.args[0])}"
        a, b = (format_formula(x) for x in node.args)
        return f"({a} {_FLAT_BINARY[node.name]} {b})"
    raise TypeError(f"cannot format {node!r}")


def _literal(lit: Literal) -> str:
    return str(lit)


def format_rule(rule: Rule) -> str:
    if rule.is_fact:
        return f"{rule.head} <- @{rule.annotation}."
    body = "; ".join(", ".join(_literal(l) for l in block) for block in rule.body)
    return f"{rule.head} :- {body}."


def format_program(program: Program) -> str:
    lines = [f"lattice {program.lattice.name}."]
    lines.extend(format_rule(r) for r in program.rules)
    return "\n".join(lines) + "\n"
