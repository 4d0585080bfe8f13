"""Immutable AST for annotated programs and for the formula languages.

Terms are plain strings; a term is a variable when it starts with an
uppercase letter or an underscore.  Three formula families share this module:

* many-valued formulas: :class:`Const`, :class:`Atom`, :class:`Op`;
* two-valued modal formulas: :class:`MAtom` (``[α]p(c)``), the classical
  connectives :class:`Not`, :class:`Conj`, :class:`Disj`, :class:`Impl`,
  and the abstract operators :class:`BoxGamma` and :class:`DiaD`;
* flattened formulas: :class:`FAtom` (``p_F(c, α)``), :class:`FOp` for the
  binary/unary meta operators, :class:`Encap` (unexpanded ``E(φ)``) and
  :class:`Dia`.

Which family is legal where is decided by the evaluating model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Union

from ..lattice import LatticeSpec

__all__ = [
    "Atom", "BoxGamma", "Conj", "Const", "Dia", "DiaD", "Disj", "Encap", "FAtom",
    "FOp", "Formula", "Impl", "Literal", "MAtom", "Not", "Op", "Program", "Rule",
    "ERROR_MARK", "FLAT_OPS", "atoms_of", "body_formula", "conj_all", "disj_all",
    "is_ground", "is_var", "larrow", "rule_formula", "substitute", "variables",
]

ERROR_MARK = "e"
# flattened meta operators and the lattice connective each one mirrors
FLAT_OPS = {"negA": "neg", "andA": "and", "orA": "or", "larrowA": "imp"}


def is_var(term: str) -> bool:
    return term[:1].isupper() or term[:1] == "_"


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[str, ...] = ()

    def __str__(self):
        return f"{self.pred}({','.join(self.args)})" if self.args else self.pred

    @property
    def arity(self) -> int:
        return len(self.args)


@dataclass(frozen=True)
class Const:
    value: str


@dataclass(frozen=True)
class Op:
    """Application of a lattice connective (``neg``, ``and``, ``or``, ``imp`` or an extra)."""

    name: str
    args: tuple


@dataclass(frozen=True)
class MAtom:
    value: str
    atom: Atom


@dataclass(frozen=True)
class Not:
    arg: object


@dataclass(frozen=True)
class Conj:
    left: object
    right: object


@dataclass(frozen=True)
class Disj:
    left: object
    right: object


@dataclass(frozen=True)
class Impl:
    left: object
    right: object


@dataclass(frozen=True)
class BoxGamma:
    arg: object


@dataclass(frozen=True)
class DiaD:
    arg: object


@dataclass(frozen=True)
class FAtom:
    pred: str
    args: tuple[str, ...]
    value: str

    @property
    def flat_name(self) -> str:
        return f"{self.pred}_F"


@dataclass(frozen=True)
class FOp:
    name: str
    args: tuple


@dataclass(frozen=True)
class Encap:
    arg: object


@dataclass(frozen=True)
class Dia:
    arg: object


Formula = Union[Atom, Const, Op, MAtom, Not, Conj, Disj, Impl, BoxGamma, DiaD, FAtom, FOp, Encap, Dia]

_UNARY = (Not, BoxGamma, DiaD, Encap, Dia)
_BINARY = (Conj, Disj, Impl)


def children(node) -> tuple:
    if isinstance(node, (Op, FOp)):
        return node.args
    if isinstance(node, _UNARY):
        return (node.arg,)
    if isinstance(node, _BINARY):
        return (node.left, node.right)
    if isinstance(node, MAtom):
        return (node.atom,)
    return ()


def rebuild(node, kids):
    if isinstance(node, Op):
        return Op(node.name, tuple(kids))
    if isinstance(node, FOp):
        return FOp(node.name, tuple(kids))
    if isinstance(node, _UNARY):
        return type(node)(kids[0])
    if isinstance(node, _BINARY):
        return type(node)(kids[0], kids[1])
    if isinstance(node, MAtom):
        return MAtom(node.value, kids[0])
    return node


def substitute(node, g: dict[str, str]):
    """Replace variables by constants according to the assignment ``g``."""
    if not g:
        return node
    if isinstance(node, Atom):
        return Atom(node.pred, tuple(g.get(t, t) for t in node.args))
    if isinstance(node, FAtom):
        return FAtom(node.pred, tuple(g.get(t, t) for t in node.args), node.value)
    kids = children(node)
    if not kids:
        return node
    return rebuild(node, [substitute(k, g) for k in kids])


def atoms_of(node) -> list[Atom]:
    """Atoms in left-to-right order (duplicates kept)."""
    if isinstance(node, Atom):
        return [node]
    out = []
    for k in children(node):
        out.extend(atoms_of(k))
    return out


def variables(node) -> list[str]:
    """Variables in order of first occurrence (flattened atoms included)."""
    seen: list[str] = []

    def walk(n):
        if isinstance(n, (Atom, FAtom)):
            seen.extend(t for t in n.args if is_var(t) and t not in seen)
        for k in children(n):
            walk(k)

    walk(node)
    return seen


def is_ground(node) -> bool:
    return not variables(node)


def conj_all(parts, op_and=lambda a, b: Op("and", (a, b))):
    parts = list(parts)
    acc = parts[0]
    for p in parts[1:]:
        acc = op_and(acc, p)
    return acc


def disj_all(parts, op_or=lambda a, b: Op("or", (a, b))):
    return conj_all(parts, op_or)


def larrow(head, body) -> Op:
    """``head ← body`` as the lattice implication ``body → head``."""
    return Op("imp", (body, head))


# -- programs -----------------------------------------------------------------


@dataclass(frozen=True)
class Literal:
    atom: Atom
    negated: bool = False

    def __str__(self):
        return ("~" if self.negated else "") + str(self.atom)

    def formula(self):
        return Op("neg", (self.atom,)) if self.negated else self.atom


@dataclass(frozen=True)
class Rule:
    """A fact ``head <- @α`` (``annotation`` set, empty body) or a rule ``head :- body``.

    ``body`` is a disjunction of conjunctive blocks of literals.
    """

    head: Atom
    body: tuple[tuple[Literal, ...], ...] = ()
    annotation: str | None = None

    @property
    def is_fact(self) -> bool:
        return self.annotation is not None

    def literals(self) -> list[Literal]:
        return [lit for block in self.body for lit in block]


def body_formula(body) -> object:
    """Many-valued formula ``∨_j (∧_i l_ji)`` of a rule body."""
    return disj_all(conj_all(lit.formula() for lit in block) for block in body)


def rule_formula(rule: Rule) -> Op:
    """The clause as a formula: ``head ← α`` for facts, ``head ← body`` otherwise."""
    if rule.is_fact:
        return larrow(rule.head, Const(rule.annotation))
    return larrow(rule.head, body_formula(rule.body))


@dataclass(frozen=True)
class Program:
    lattice: LatticeSpec
    rules: tuple[Rule, ...]
    predicates: dict = field(default_factory=dict, compare=False, hash=False)
    constants: tuple[str, ...] = ()

    def herbrand_base(self) -> tuple[Atom, ...]:
        """All ground atoms over the program's predicates and constants, sorted."""
        out = []
        for pred in sorted(self.predicates):
            for args in product(self.constants, repeat=self.predicates[pred]):
                out.append(Atom(pred, args))
        return tuple(sorted(out, key=str))

    def is_ground(self) -> bool:
        return all(is_ground(r.head) and all(is_ground(lit.atom) for lit in r.literals()) for r in self.rules)
