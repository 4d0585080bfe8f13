"""Many-valued Herbrand interpretations and the stratified least model."""

from __future__ import annotations

import json
from collections.abc import Mapping

import networkx as nx

from .errors import EvaluationError, StratificationError
from .lattice import LatticeSpec
from .syntax.ast import Atom, Const, Op, Program, Rule
from .syntax.ground import ground

__all__ = ["Interpretation", "valuation", "satisfies_rule", "compute_model", "stratify"]


class Interpretation(Mapping):
    """Total, immutable map from the Herbrand base to lattice elements."""

    def __init__(self, lattice: LatticeSpec, values: Mapping[Atom, str], base=None):
        self.lattice = lattice
        base = tuple(sorted(values, key=str)) if base is None else tuple(base)
        data = {a: lattice.bottom for a in base}
        for atom, value in values.items():
            if atom not in data:
                raise EvaluationError(f"atom {atom} is not in the Herbrand base")
            data[atom] = lattice.lookup(value)
        self._data = data
        self.base = base

    def __getitem__(self, atom):
        try:
            return self._data[atom]
        except KeyError:
            raise EvaluationError(f"atom {atom} is not in the Herbrand base") from None

    def __iter__(self):
        return iter(self.base)

    def __len__(self):
        return len(self.base)

    def __eq__(self, other):
        if isinstance(other, Interpretation):
            return self._data == other._data
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._data.items()))

    def __repr__(self):
        inner = ", ".join(f"{a}={v}" for a, v in self.items())
        return f"Interpretation({inner})"

    def with_value(self, atom: Atom, value: str) -> "Interpretation":
        data = dict(self._data)
        if atom not in data:
            raise EvaluationError(f"atom {atom} is not in the Herbrand base")
        data[atom] = value
        return Interpretation(self.lattice, data, self.base)

    def leq(self, other: "Interpretation") -> bool:
        """Pointwise order of the function space."""
        return all(self.lattice.le(v, other[a]) for a, v in self.items())

    def dump_text(self) -> str:
        return "".join(f"{a} = {self._data[a]}\n" for a in sorted(self.base, key=str))

    def to_json(self) -> dict[str, str]:
        return {str(a): self._data[a] for a in sorted(self.base, key=str)}

    def dump_json(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, indent=2)


def valuation(I: Mapping[Atom, str], phi, lattice: LatticeSpec | None = None) -> str:
    """Homomorphic extension of ``I`` to a ground many-valued formula."""
    L = lattice if lattice is not None else I.lattice
    if isinstance(phi, Atom):
        try:
            return I[phi]
        except KeyError:
            raise EvaluationError(f"atom {phi} is not in the Herbrand base") from None
    if isinstance(phi, Const):
        return L.lookup(phi.value)
    if isinstance(phi, Op):
        args = [valuation(I, a, L) for a in phi.args]
        if phi.name not in L.connectives:
            raise EvaluationError(f"lattice {L.name} has no connective {phi.name!r}")
        return L.apply(phi.name, *args)
    raise EvaluationError(f"not a many-valued formula: {phi!r}")


def _body_value(I, body, L) -> str:
    out = L.bottom
    for block in body:
        acc = L.top
        for lit in block:
            v = I[lit.atom]
            acc = L.meet(acc, L.neg(v) if lit.negated else v)
        out = L.join(out, acc)
    return out


def satisfies_rule(I: Interpretation, rule: Rule) -> bool:
    L = I.lattice
    if rule.is_fact:
        return L.le(rule.annotation, I[rule.head])
    return L.le(_body_value(I, rule.body, L), I[rule.head])


def stratify(program: Program) -> list[list[Atom]]:
    """Strongly connected components of the ground dependency graph, bottom up.

    Raises :class:`StratificationError` if a negative edge lies on a cycle.
    """
    g = nx.DiGraph()
    g.add_nodes_from(program.herbrand_base())
    for rule in program.rules:
        g.add_node(rule.head)
        for lit in rule.literals():
            neg = g.get_edge_data(lit.atom, rule.head, {}).get("neg", False)
            g.add_edge(lit.atom, rule.head, neg=neg or lit.negated)
    cond = nx.condensation(g)
    for u, v, data in g.edges(data=True):
        if data["neg"] and cond.graph["mapping"][u] == cond.graph["mapping"][v]:
            raise StratificationError(f"{v} depends negatively on {u} through a cycle")
    # stable topological order: ties broken by the smallest member
    key = {c: min(str(a) for a in cond.nodes[c]["members"]) for c in cond.nodes}
    order = nx.lexicographical_topological_sort(cond, key=lambda c: key[c])
    return [sorted(cond.nodes[c]["members"], key=str) for c in order]


def compute_model(program: Program, trace: list | None = None) -> Interpretation:
    """Least model, stratum by stratum.

    Inside a stratum the immediate-consequence step is iterated from bottom;
    atoms of earlier strata are already final, which freezes every negated
    literal.  If ``trace`` is a list, ``(stratum, snapshot)`` pairs are
    appended after every step.
    """
    if not program.is_ground():
        program = ground(program)
    L = program.lattice
    base = program.herbrand_base()
    values = {a: L.bottom for a in base}
    facts: dict[Atom, str] = {}
    bodies: dict[Atom, list] = {}
    for rule in program.rules:
        values.setdefault(rule.head, L.bottom)
        if rule.is_fact:
            facts[rule.head] = L.join(facts.get(rule.head, L.bottom), rule.annotation)
        else:
            bodies.setdefault(rule.head, []).append(rule.body)
    for k, stratum in enumerate(stratify(program)):
        while True:
            new = {a: L.join_all([facts.get(a, L.bottom)] +
                                 [_body_value(values, b, L) for b in bodies.get(a, ())])
                   for a in stratum}
            changed = any(new[a] != values[a] for a in stratum)
            values.update(new)
            if trace is not None:
                trace.append((k, {a: values[a] for a in stratum}))
            if not changed:
                break
    return Interpretation(L, values, sorted(values, key=str))
