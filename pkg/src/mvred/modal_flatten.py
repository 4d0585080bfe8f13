"""Flattening: truth values become an extra argument ``p_F(c, α)``.

The model's values are exposed through a semantic reflection ``κ``; formula
structure is mirrored by existential binary modalities over ternary
relations whose worlds are truth values.
"""

from __future__ import annotations

import random
from collections.abc import Mapping

from .errors import EvaluationError
from .generate import random_flat_formula
from .kripke import KripkeModel
from .lattice import LatticeSpec
from .modal_unary import build_kripke_unary
from .semantics import Interpretation, compute_model, valuation
from .syntax.ast import (
    ERROR_MARK, Atom, Conj, Dia, Disj, Encap, FAtom, FOp, Impl, MAtom, Not, Op, Program,
    body_formula, children,
)
from .syntax.ground import ground
from .syntax.printer import format_formula
from .verdict import Verdict

__all__ = [
    "SemanticReflection", "FlatKripkeModel", "reflect", "encapsulate", "build_kripke_flat",
    "eval_flat", "verify_flat", "verify_corollary", "flatten_program", "subformulas",
    "BUILTIN_PREDICATES",
]

BUILTIN_PREDICATES = ("=", "<=")
_ENCAP = {"neg": "negA", "and": "andA", "or": "orA"}
_REL = {"negA": "R_neg", "andA": "R_and", "orA": "R_or", "larrowA": "R_imp"}


class SemanticReflection:
    """``κ_p(c…)``: the model value of ``p(c…)``, or ``e`` on arity misuse.

    ``=`` and ``<=`` are 2-valued built-ins with a fixed extension (``<=``
    compares constant names as strings).
    """

    def __init__(self, lattice: LatticeSpec, interpretation: Mapping[Atom, str],
                 arities: Mapping[str, int], overrides: Mapping | None = None):
        self.lattice = lattice
        self.interpretation = interpretation
        self.arities = dict(arities)
        self.overrides = dict(overrides or {})
        self.error_mark = ERROR_MARK

    def __call__(self, pred: str, args: tuple[str, ...]) -> str:
        key = (pred, tuple(args))
        if key in self.overrides:
            return self.overrides[key]
        L = self.lattice
        if pred in BUILTIN_PREDICATES:
            if len(args) != 2:
                return ERROR_MARK
            a, b = args
            hit = a == b if pred == "=" else a <= b
            return L.top if hit else L.bottom
        if pred not in self.arities:
            raise EvaluationError(f"unknown predicate {pred!r}")
        if len(args) != self.arities[pred]:
            return ERROR_MARK
        try:
            return self.interpretation[Atom(pred, tuple(args))]
        except (KeyError, EvaluationError):
            raise EvaluationError(f"{pred}({','.join(args)}) is not in the Herbrand base") from None

    def with_value(self, pred: str, args: tuple[str, ...], value: str) -> "SemanticReflection":
        """Copy with one entry overridden (used to inject defects)."""
        overrides = dict(self.overrides)
        overrides[(pred, tuple(args))] = value
        return SemanticReflection(self.lattice, self.interpretation, self.arities, overrides)


def reflect(program: Program, interpretation: Interpretation) -> SemanticReflection:
    return SemanticReflection(program.lattice, interpretation, program.predicates)


def encapsulate(phi, kappa: SemanticReflection):
    """``E(φ)``: atoms become flattened atoms carrying ``κ``; connectives get an ``A`` twin."""
    if isinstance(phi, Atom):
        return FAtom(phi.pred, phi.args, kappa(phi.pred, phi.args))
    if isinstance(phi, Op):
        if phi.name == "imp":
            body, head = phi.args
            return FOp("larrowA", (encapsulate(head, kappa), encapsulate(body, kappa)))
        if phi.name in _ENCAP:
            return FOp(_ENCAP[phi.name], tuple(encapsulate(a, kappa) for a in phi.args))
        raise EvaluationError(f"connective {phi.name!r} cannot be encapsulated")
    raise EvaluationError(f"cannot encapsulate {type(phi).__name__}")


class FlatKripkeModel(KripkeModel):
    kind = "flat"

    def __init__(self, lattice: LatticeSpec, reflection: SemanticReflection,
                 full_implication: bool = False, constants=()):
        W = lattice.carrier
        ap = lattice.apply
        relations = {
            "R_neg": [(ap("neg", x), x) for x in W],
            "R_and": [(ap("and", x, y), x, y) for x in W for y in W],
            "R_or": [(ap("or", x, y), x, y) for x in W for y in W],
            "R_imp": [(ap("imp", x, y), x, y) for x in W for y in W
                      if full_implication or lattice.le(x, y)],
            "R_x": [(x, y) for x in W for y in W],
        }
        V = {}
        for atom in reflection.interpretation:
            value = reflection(atom.pred, atom.args)
            V[FAtom(atom.pred, atom.args, value)] = {value} if value in W else set()
        super().__init__(W, relations, constants, V)
        self.lattice = lattice
        self.reflection = reflection
        self.full_implication = full_implication

    def _holds(self, phi, w, memo) -> bool:
        key = (id(phi), w)
        if key in memo:
            return memo[key][0]
        result = self._eval(phi, w, memo)
        memo[key] = (result, phi)  # keep phi alive so its id is not reused
        return result

    def _eval(self, phi, w, memo) -> bool:
        if isinstance(phi, FAtom):
            if phi.value == ERROR_MARK:
                return False
            return w == phi.value == self.reflection(phi.pred, phi.args)
        if isinstance(phi, FOp):
            rel = _REL.get(phi.name)
            if rel is None:
                raise EvaluationError(f"unknown flat operator {phi.name!r}")
            if phi.name == "negA":
                return any(self._holds(phi.args[0], y, memo) for y in self.successors(rel, w))
            left, right = phi.args
            return any(self._holds(left, z, memo) and self._holds(right, y, memo)
                       for y, z in self.successors(rel, w))
        if isinstance(phi, Dia):
            return any(self._holds(phi.arg, y, memo) for y in self.successors("R_x", w))
        if isinstance(phi, Encap):
            ekey = ("E", id(phi))
            if ekey not in memo:
                memo[ekey] = (encapsulate(phi.arg, self.reflection), phi)
            return self._holds(memo[ekey][0], w, memo)
        if isinstance(phi, Not):
            return not self._holds(phi.arg, w, memo)
        if isinstance(phi, Conj):
            return self._holds(phi.left, w, memo) and self._holds(phi.right, w, memo)
        if isinstance(phi, Disj):
            return self._holds(phi.left, w, memo) or self._holds(phi.right, w, memo)
        if isinstance(phi, Impl):
            return (not self._holds(phi.left, w, memo)) or self._holds(phi.right, w, memo)
        raise EvaluationError(f"{type(phi).__name__} is not part of the flattened language")


def build_kripke_flat(program: Program, interpretation: Interpretation,
                      full_implication: bool = False,
                      reflection: SemanticReflection | None = None) -> FlatKripkeModel:
    kappa = reflection if reflection is not None else reflect(program, interpretation)
    return FlatKripkeModel(program.lattice, kappa, full_implication, program.constants)


def eval_flat(model: FlatKripkeModel, phi, w, g=None) -> bool:
    return model.holds(phi, w, g)


def subformulas(program: Program) -> list:
    """Distinct encapsulable subformulas of a ground program, in first-seen order.

    Covers every atom of the Herbrand base, every body subformula and every
    rule read as ``head <- body``.
    """
    seen: dict = {}

    def add(node):
        for k in children(node):
            add(k)
        seen.setdefault(node, None)

    for atom in program.herbrand_base():
        seen.setdefault(atom, None)
    for rule in program.rules:
        if rule.is_fact:
            continue
        add(Op("imp", (body_formula(rule.body), rule.head)))
    return list(seen)


def _oracle(phi, I, L, full: bool):
    """Expected extent of ``E(φ)``: ``{v(φ)}``, or ∅ when a filtered ``R_imp`` has no triple."""
    if not full:
        stack = [phi]
        while stack:
            n = stack.pop()
            if isinstance(n, Op) and n.name == "imp":
                b, h = n.args
                if not L.le(valuation(I, b, L), valuation(I, h, L)):
                    return frozenset()
            stack.extend(children(n))
    return frozenset([valuation(I, phi, L)])


def verify_flat(program: Program, interpretation: Interpretation | None = None,
                full_implication: bool = False, samples: int = 50, seed: int = 0) -> Verdict:
    """(a) ``|E(φ)|`` matches its oracle, (b) ``|◇E(φ)|`` is W (or ∅ where
    the oracle is empty), (c) ``|◇Φ|`` is ∅ or W for random flat ``Φ``,
    (d) the true ``◇p_F(c, α)`` recover the interpretation exactly."""
    if not program.is_ground():
        program = ground(program)
    I = compute_model(program) if interpretation is None else interpretation
    L = program.lattice
    M = build_kripke_flat(program, I, full_implication)
    W = frozenset(M.worlds)
    mode = "full" if full_implication else "verbatim"
    suite = subformulas(program)
    details = {"mode": mode, "formulas": len(suite), "random": samples}

    def fail(msg):
        return Verdict("flatten", False, msg, details)

    for phi in suite:
        want = _oracle(phi, I, L, full_implication)
        got = M.extent(Encap(phi))
        if got != want:
            return fail(f"|E({format_formula(phi)})| = {sorted(got)}, expected {sorted(want)}")
        dia = M.extent(Dia(Encap(phi)))
        if dia != (W if want else frozenset()):
            return fail(f"|dia E({format_formula(phi)})| = {sorted(dia)}")
    rng = random.Random(seed)
    base = list(I)
    if base:
        for _ in range(samples):
            Phi = random_flat_formula(rng, base, L, depth=3)
            ext = M.extent(Dia(Phi))
            if ext not in (frozenset(), W):
                return fail(f"|dia {format_formula(Phi)}| = {sorted(ext)}")
    recovered = {}
    for atom in base:
        hits = [a for a in L.carrier if M.is_true(Dia(FAtom(atom.pred, atom.args, a)))]
        if len(hits) != 1:
            return fail(f"{atom}: {len(hits)} true flattened values")
        recovered[atom] = hits[0]
    if recovered != dict(I.items()):
        bad = next(a for a in base if recovered[a] != I[a])
        return fail(f"recovered {bad} = {recovered[bad]}, model has {I[bad]}")
    return Verdict("flatten", True, None, details)


def verify_corollary(program: Program, interpretation: Interpretation | None = None,
                     reflection: SemanticReflection | None = None,
                     full_implication: bool = False) -> Verdict:
    """``E(p(c))`` holds at ``w`` exactly when ``[w]p(c)`` is true in the unary model."""
    if not program.is_ground():
        program = ground(program)
    I = compute_model(program) if interpretation is None else interpretation
    flat = build_kripke_flat(program, I, full_implication, reflection)
    unary = build_kripke_unary(program, I)
    for atom in I:
        for w in flat.worlds:
            lhs = flat.holds(Encap(atom), w)
            rhs = unary.is_true(MAtom(w, atom))
            if lhs != rhs:
                witness = {"atom": str(atom), "world": w, "flat": lhs, "unary": rhs}
                return Verdict("corollary", False, witness, {"atoms": len(I)})
    return Verdict("corollary", True, None, {"atoms": len(I)})


def flatten_program(program: Program, interpretation: Interpretation | None = None) -> list[str]:
    """Encapsulated clauses, one line each: ``p_F(a, t) <-A (r_F(a, t) andA s_F(a, top)).``"""
    if not program.is_ground():
        program = ground(program)
    I = compute_model(program) if interpretation is None else interpretation
    kappa = reflect(program, I)
    lines = []
    for rule in program.rules:
        head = format_formula(encapsulate(rule.head, kappa))
        if rule.is_fact:
            lines.append(f"{head}.")
        else:
            body = format_formula(encapsulate(body_formula(rule.body), kappa))
            lines.append(f"{head} <-A {body}.")
    return lines
