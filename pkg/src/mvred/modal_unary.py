"""Reduction to a positive program over unary modal atoms ``[α]p(c)``.

Every ground many-valued atom ``p(c)`` is replaced by the family of
2-valued m-atoms ``[α]p(c)``, one per truth value, of which exactly one holds
in the intended model.  A rule with ``m`` body literals becomes ``|W|**m``
positive clauses, one for each way of guessing the literal values.

Body reading
------------
A merged rule body is a disjunction of blocks.  Two readings of the
transformed body are offered:

``"conjunctive"`` (default)
    all m-atoms of all blocks must hold.  The head value ``β`` is computed
    from the guessed values of *every* block, so the clause is only sound
    when every guess is right.
``"verbatim"``
    the body keeps its disjunctive shape.  This fires a clause as soon as
    one block is guessed correctly, which can derive a wrong head value when
    the other blocks were guessed wrongly.  :func:`verify_invariance`
    reports such clauses.
"""

from __future__ import annotations

import json
import random
from collections import defaultdict
from dataclasses import dataclass
from itertools import product

from .errors import BudgetExceeded, EvaluationError
from .generate import random_matom_formula
from .kripke import KripkeModel
from .lattice import LatticeSpec
from .semantics import Interpretation, compute_model
from .syntax.ast import Atom, Conj, Disj, Impl, MAtom, Not, Op, Program
from .syntax.ground import ground
from .syntax.printer import format_formula
from .verdict import Verdict

__all__ = [
    "ModalClause", "ModalProgram", "UnaryKripkeModel", "transform_unary",
    "build_kripke_unary", "eval_modal", "extent", "verify_invariance",
    "true_matoms", "least_model", "non_normality_witness", "verify_two_valued",
    "clause_count", "DEFAULT_CLAUSE_BUDGET",
]

DEFAULT_CLAUSE_BUDGET = 10**6
BODY_MODES = ("conjunctive", "verbatim")


@dataclass(frozen=True)
class ModalClause:
    head: MAtom
    body: tuple[tuple[MAtom, ...], ...] = ()

    def body_atoms(self):
        return [m for block in self.body for m in block]

    def format(self, body_mode: str = "conjunctive") -> str:
        if not self.body:
            return f"{_matom(self.head)}."
        sep = ", " if body_mode == "conjunctive" else "; "
        blocks = [", ".join(_matom(m) for m in b) for b in self.body]
        return f"{_matom(self.head)} :- {sep.join(blocks)}."

    def to_json(self) -> dict:
        return {
            "head": _matom_json(self.head),
            "body": [[_matom_json(m) for m in block] for block in self.body],
        }


def _matom(m: MAtom) -> str:
    return f"[{m.value}]{m.atom}"


def _matom_json(m: MAtom) -> dict:
    return {"op": m.value, "atom": str(m.atom)}


@dataclass(frozen=True)
class ModalProgram:
    lattice: LatticeSpec
    clauses: tuple[ModalClause, ...]
    body_mode: str = "conjunctive"

    def body_true(self, clause: ModalClause, truth) -> bool:
        """Truth of a clause body given a predicate on m-atoms."""
        if not clause.body:
            return True
        if self.body_mode == "conjunctive":
            return all(truth(m) for m in clause.body_atoms())
        return any(all(truth(m) for m in block) for block in clause.body)

    def format(self) -> str:
        return "".join(c.format(self.body_mode) + "\n" for c in self.clauses)

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.clauses]

    def dump_json(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, indent=2)


def _group(program: Program):
    facts: dict[Atom, str] = {}
    bodies: dict[Atom, list] = defaultdict(list)
    L = program.lattice
    for rule in program.rules:
        if rule.is_fact:
            facts[rule.head] = L.join(facts.get(rule.head, L.bottom), rule.annotation)
        else:
            bodies[rule.head].extend(rule.body)
    heads = sorted(set(facts) | set(bodies), key=str)
    return heads, facts, bodies


def clause_count(program: Program) -> int:
    """Number of clauses :func:`transform_unary` would emit."""
    if not program.is_ground():
        program = ground(program)
    heads, facts, bodies = _group(program)
    n = len(program.lattice)
    return sum(n ** sum(len(b) for b in bodies[h]) if h in bodies else 1 for h in heads)


def transform_unary(program: Program, budget: int = DEFAULT_CLAUSE_BUDGET,
                    body_mode: str = "conjunctive") -> ModalProgram:
    """Positive m-atom program of a (grounded) many-valued program.

    Facts of one head are joined into a single clause ``[α]p(c).``  When a
    head also has rules, that join is folded into each rule clause's ``β``.
    Assignments are enumerated lexicographically over the carrier order.
    """
    if body_mode not in BODY_MODES:
        raise ValueError(f"body_mode must be one of {BODY_MODES}")
    if not program.is_ground():
        program = ground(program)
    required = clause_count(program)
    if required > budget:
        raise BudgetExceeded("unary transform clause count", required, budget)
    L = program.lattice
    meet, join, neg = L.table("and"), L.table("or"), L.table("neg")
    carrier = L.carrier
    heads, facts, bodies = _group(program)
    clauses = []
    for head in heads:
        fact = L.index(facts.get(head, L.bottom))
        if head not in bodies:
            clauses.append(ModalClause(MAtom(carrier[fact], head)))
            continue
        blocks = bodies[head]
        shape = [len(b) for b in blocks]
        lits = [lit for b in blocks for lit in b]
        for g in product(range(len(carrier)), repeat=len(lits)):
            beta = fact
            pos = 0
            body = []
            for size in shape:
                acc = L.index(L.top)
                for i in range(pos, pos + size):
                    x = neg[g[i]] if lits[i].negated else g[i]
                    acc = meet[acc][x]
                beta = join[beta][acc]
                body.append(tuple(MAtom(carrier[g[i]], lits[i].atom) for i in range(pos, pos + size)))
                pos += size
            clauses.append(ModalClause(MAtom(carrier[beta], head), tuple(body)))
    return ModalProgram(L, tuple(clauses), body_mode)


class UnaryKripkeModel(KripkeModel):
    """Worlds are truth values; ``R_α = W × {α}``; ``p(c)`` holds only at ``I(p(c))``."""

    kind = "unary"

    def __init__(self, lattice: LatticeSpec, interpretation: Interpretation, constants=()):
        W = lattice.carrier
        relations = {rel_name(a): [(x, a) for x in W] for a in W}
        V = {atom: {interpretation[atom]} for atom in interpretation}
        super().__init__(W, relations, constants, V)
        self.lattice = lattice

    def _holds(self, phi, w, memo) -> bool:
        if isinstance(phi, MAtom):
            try:
                val = self.lattice.lookup(phi.value)
            except Exception:
                raise EvaluationError(f"unknown modal value {phi.value!r}") from None
            return all(self._holds(phi.atom, y, memo) for y in self.successors(rel_name(val), w))
        if isinstance(phi, Atom):
            try:
                return w in self.valuation[phi]
            except KeyError:
                raise EvaluationError(f"unknown atom {phi}") from None
        if isinstance(phi, Not):
            return not self._holds(phi.arg, w, memo)
        if isinstance(phi, Conj):
            return self._holds(phi.left, w, memo) and self._holds(phi.right, w, memo)
        if isinstance(phi, Disj):
            return self._holds(phi.left, w, memo) or self._holds(phi.right, w, memo)
        if isinstance(phi, Impl):
            return (not self._holds(phi.left, w, memo)) or self._holds(phi.right, w, memo)
        raise EvaluationError(f"{type(phi).__name__} is not part of the unary modal language")


def rel_name(alpha: str) -> str:
    return f"R[{alpha}]"


def build_kripke_unary(program: Program, interpretation: Interpretation) -> UnaryKripkeModel:
    return UnaryKripkeModel(program.lattice, interpretation, program.constants)


def eval_modal(model: KripkeModel, phi, w, g=None) -> bool:
    return model.holds(phi, w, g)


def extent(model: KripkeModel, phi, g=None) -> frozenset:
    return model.extent(phi, g)


def true_matoms(model: UnaryKripkeModel, atoms) -> set[MAtom]:
    """All ``[α]p(c)`` true at every world, for ``p(c)`` in ``atoms``."""
    return {MAtom(a, atom) for atom in atoms for a in model.worlds
            if model.is_true(MAtom(a, atom))}


def least_model(mp: ModalProgram) -> set[MAtom]:
    """Least Herbrand model of a positive m-atom program (forward chaining)."""
    true: set[MAtom] = set()
    changed = True
    while changed:
        changed = False
        for c in mp.clauses:
            if c.head not in true and mp.body_true(c, true.__contains__):
                true.add(c.head)
                changed = True
    return true


def verify_invariance(program: Program, interpretation: Interpretation | None = None,
                      budget: int = DEFAULT_CLAUSE_BUDGET,
                      body_mode: str = "conjunctive") -> Verdict:
    """Check that the transformed program has the many-valued model's m-atom image.

    (a) every clause holds when ``[α]p(c)`` is read as ``α = I(p(c))``;
    (b) the m-atoms true in the Kripke model are exactly
        ``S_T = {[I(A)]A | A in H}``, each with extent ∅ or W;
    (c) the least model of the positive program lies inside ``S_T``.
    """
    if not program.is_ground():
        program = ground(program)
    I = compute_model(program) if interpretation is None else interpretation
    mp = transform_unary(program, budget, body_mode)
    s_t = {MAtom(v, a) for a, v in I.items()}
    holds = s_t.__contains__
    details = {"clauses": len(mp.clauses), "atoms": len(I), "body_mode": body_mode}
    for c in mp.clauses:
        if mp.body_true(c, holds) and not holds(c.head):
            return Verdict("invariance", False, c.format(body_mode), details)
    M = build_kripke_unary(program, I)
    W = frozenset(M.worlds)
    for atom in I:
        for a in M.worlds:
            ext = M.extent(MAtom(a, atom))
            if ext not in (frozenset(), W):
                return Verdict("invariance", False, f"extent of [{a}]{atom} is {sorted(ext)}", details)
    tm = true_matoms(M, I)
    if tm != s_t:
        diff = sorted(map(_matom, tm ^ s_t))
        return Verdict("invariance", False, f"true m-atoms differ from S_T at {diff[0]}", details)
    lm = least_model(mp)
    extra = lm - s_t
    if extra:
        return Verdict("invariance", False, f"least model derives {_matom(min(extra, key=_matom))}", details)
    details["derived"] = len(lm)
    return Verdict("invariance", True, None, details)


def non_normality_witness(L: LatticeSpec) -> dict | None:
    """A formula valid in the lattice whose value-test ``[α]`` is not.

    The value test ``[α](x)`` is ``top`` iff ``x = α``.  ``p -> p`` takes the
    value ``top`` under every valuation, but ``[α](top)`` is ``bottom`` for
    every ``α ≠ top``; the test also fails to be monotone.
    """
    phi = Op("imp", (Atom("p"), Atom("p")))
    values = {L.implies(x, x) for x in L.carrier}
    if values != {L.top}:
        return None
    for alpha in L.carrier:
        if alpha != L.top:
            test = {x: (L.top if x == alpha else L.bottom) for x in L.carrier}
            mono = next(((x, y) for x in L.carrier for y in L.carrier
                         if L.le(x, y) and not L.le(test[x], test[y])), None)
            return {"alpha": alpha, "formula": phi, "value": L.top,
                    "boxed_value": test[L.top], "monotonicity_failure": mono}
    return None


def verify_two_valued(program: Program, interpretation: Interpretation | None = None,
                      count: int = 500, depth: int = 4, seed: int = 0) -> Verdict:
    """Random m-atom formulas have extent ∅ or W, and extents obey the Boolean laws."""
    if not program.is_ground():
        program = ground(program)
    I = compute_model(program) if interpretation is None else interpretation
    M = build_kripke_unary(program, I)
    W = frozenset(M.worlds)
    atoms = list(I)
    details = {"formulas": count if atoms else 0, "depth": depth}
    if not atoms:
        return Verdict("twovalued", True, None, details)
    rng = random.Random(seed)

    def check(phi) -> frozenset:
        ext = M.extent(phi)
        if isinstance(phi, Not):
            want = W - check(phi.arg)
        elif isinstance(phi, Conj):
            want = check(phi.left) & check(phi.right)
        elif isinstance(phi, Disj):
            want = check(phi.left) | check(phi.right)
        elif isinstance(phi, Impl):
            want = (W - check(phi.left)) | check(phi.right)
        else:
            want = ext
        if ext not in (frozenset(), W) or ext != want:
            raise _LawFailure(phi, ext)
        return ext

    for _ in range(count):
        phi = random_matom_formula(rng, atoms, program.lattice, depth)
        try:
            check(phi)
        except _LawFailure as exc:
            return Verdict("twovalued", False,
                           f"|{format_formula(exc.phi)}| = {sorted(exc.ext)}", details)
    return Verdict("twovalued", True, None, details)


class _LawFailure(Exception):
    def __init__(self, phi, ext):
        self.phi, self.ext = phi, ext
