"""Consequence as a 2-valued modal statement.

Two constructions are provided.  :class:`SuszkoModel` takes all valuations
as worlds and boxes over the models of ``Γ``; :class:`MatrixModel` takes the
truth values as worlds and diamonds over the designated ones.

Satisfaction of a formula by a valuation ``v``:

* a clause ``head <- body`` (an ``imp`` node) holds iff ``v(body) <= v(head)``;
* any other formula needs a :class:`Matrix` and holds iff ``v(φ) ∈ D``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import BudgetExceeded, EvaluationError
from .kripke import KripkeModel
from .lattice import LatticeSpec
from .semantics import valuation
from .syntax.ground import ground
from .syntax.ast import Atom, BoxGamma, Conj, Const, DiaD, Disj, Impl, Not, Op, rule_formula
from .syntax.printer import format_formula
from .verdict import Verdict

__all__ = [
    "ValuationSpace", "Matrix", "SuszkoModel", "MatrixModel", "models_of", "consequence",
    "suszko_model", "matrix_model", "verify_suszko", "verify_matrix", "program_clauses",
    "satisfied", "DEFAULT_VALUATION_BUDGET",
]

DEFAULT_VALUATION_BUDGET = 10**6


@dataclass(frozen=True)
class Matrix:
    lattice: LatticeSpec
    designated: frozenset

    def __init__(self, lattice: LatticeSpec, designated):
        D = frozenset(lattice.lookup(d) for d in designated)
        if not D:
            raise EvaluationError("the designated set must be non-empty")
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "designated", D)

    def sorted_designated(self) -> list[str]:
        return [x for x in self.lattice.carrier if x in self.designated]


class ValuationSpace:
    """``Val = W^H`` enumerated lexicographically (first atom varies slowest)."""

    def __init__(self, herbrand_base, lattice: LatticeSpec, budget: int = DEFAULT_VALUATION_BUDGET):
        self.base = tuple(herbrand_base)
        self.lattice = lattice
        self.size = len(lattice) ** len(self.base)
        if self.size > budget:
            raise BudgetExceeded("valuation space", self.size, budget)
        self._pos = {a: i for i, a in enumerate(self.base)}

    def __len__(self):
        return self.size

    def __iter__(self):
        for combo in product(self.lattice.carrier, repeat=len(self.base)):
            yield dict(zip(self.base, combo))

    def __getitem__(self, i: int) -> dict:
        n = len(self.lattice)
        digits = []
        for _ in self.base:
            i, d = divmod(i, n)
            digits.append(d)
        return {a: self.lattice.carrier[d] for a, d in zip(self.base, reversed(digits))}

    def index_of(self, v) -> int:
        i = 0
        for a in self.base:
            i = i * len(self.lattice) + self.lattice.index(v[a])
        return i

    def column(self, atom: Atom) -> np.ndarray:
        """Value index of ``atom`` under every valuation, as one array."""
        try:
            k = self._pos[atom]
        except KeyError:
            raise EvaluationError(f"atom {atom} is not in the Herbrand base") from None
        n, m = len(self.lattice), len(self.base)
        return (np.arange(self.size) // n ** (m - 1 - k)) % n

    def values(self, phi) -> np.ndarray:
        """``v(φ)`` for every valuation, by table lookup on whole columns."""
        L = self.lattice
        if isinstance(phi, Atom):
            return self.column(phi)
        if isinstance(phi, Const):
            return np.full(self.size, L.index(L.lookup(phi.value)))
        if isinstance(phi, Op):
            table = {"neg": L.neg_table, "and": L.meet_table, "or": L.join_table,
                     "imp": L.implies_table}.get(phi.name)
            if table is None:
                table = L.extra.get(phi.name)
            if table is None:
                raise EvaluationError(f"lattice {L.name} has no connective {phi.name!r}")
            return np.asarray(table)[tuple(self.values(a) for a in phi.args)]
        raise EvaluationError(f"not a many-valued formula: {phi!r}")

    def satisfaction(self, phi, matrix: Matrix | None = None) -> np.ndarray:
        """Boolean mask of valuations satisfying ``φ``."""
        if isinstance(phi, Op) and phi.name == "imp":
            body, head = phi.args
            return self.lattice.leq_table[self.values(body), self.values(head)]
        if matrix is None:
            raise EvaluationError(f"{format_formula(phi)} is not a clause and no matrix is given")
        D = np.zeros(len(self.lattice), dtype=bool)
        D[[self.lattice.index(d) for d in matrix.designated]] = True
        return D[self.values(phi)]


def satisfied(v, phi, lattice: LatticeSpec, matrix: Matrix | None = None) -> bool:
    """Scalar satisfaction of ``φ`` by one valuation."""
    if isinstance(phi, Op) and phi.name == "imp":
        body, head = phi.args
        return lattice.le(valuation(v, body, lattice), valuation(v, head, lattice))
    if matrix is None:
        raise EvaluationError(f"{format_formula(phi)} is not a clause and no matrix is given")
    return valuation(v, phi, lattice) in matrix.designated


def program_clauses(program) -> list[Op]:
    """The ground program as a set of clauses (facts read as ``p(c) <- α``)."""
    if not program.is_ground():
        program = ground(program)
    return list(dict.fromkeys(rule_formula(r) for r in program.rules))


def models_of(gamma, vs: ValuationSpace, matrix: Matrix | None = None) -> list[int]:
    """Indices of the valuations satisfying every member of ``Γ``."""
    gamma = list(gamma)
    return [i for i, v in enumerate(vs) if all(satisfied(v, g, vs.lattice, matrix) for g in gamma)]


def consequence(gamma, phi, vs: ValuationSpace, matrix: Matrix | None = None,
                models: list[int] | None = None) -> bool:
    """Every model of ``Γ`` satisfies ``φ`` (scalar enumeration)."""
    models = models_of(gamma, vs, matrix) if models is None else models
    return all(satisfied(vs[i], phi, vs.lattice, matrix) for i in models)


class SuszkoModel(KripkeModel):
    """Worlds are valuation indices; ``R_Γ = Val × Val_Γ``.

    ``R_Γ`` is kept implicit (every world sees ``Val_Γ``) unless replaced by
    :meth:`with_relation`.
    """

    kind = "suszko"

    def __init__(self, vs: ValuationSpace, gamma, matrix: Matrix | None = None,
                 models: list[int] | None = None):
        self.vs = vs
        self.gamma = tuple(gamma)
        self.matrix = matrix
        self.val_gamma = tuple(models_of(self.gamma, vs, matrix) if models is None else models)
        super().__init__(range(vs.size), {}, ())
        self._gamma_set = frozenset(self.val_gamma)
        self._gamma_array = np.asarray(self.val_gamma, dtype=np.int64)
        self._explicit = None
        self._mask_cache: dict = {}

    def with_relation(self, pairs) -> "SuszkoModel":
        """Copy whose ``R_Γ`` is the given explicit set of pairs."""
        other = SuszkoModel(self.vs, self.gamma, self.matrix, self.val_gamma)
        succ: dict[int, list[int]] = {}
        for w, u in sorted(pairs):
            succ.setdefault(w, []).append(u)
        other._explicit = succ
        return other

    def successors(self, relation, w):
        if relation != "R_Gamma":
            raise EvaluationError(f"no accessibility relation {relation!r}")
        if self._explicit is not None:
            return self._explicit.get(w, [])
        return self.val_gamma

    def relations_json(self):
        return {"R_Gamma": [[w, u] for w in self.worlds for u in self.successors("R_Gamma", w)]}

    def atom_holds(self, w) -> bool:
        """``V(w, p)(c) = 1`` iff ``w ∈ Val_Γ``, for every atom."""
        return w in self._gamma_set

    def _mask(self, phi) -> np.ndarray:
        key = phi
        if key not in self._mask_cache:
            self._mask_cache[key] = self.vs.satisfaction(phi, self.matrix)
        return self._mask_cache[key]

    def _holds(self, phi, w, memo) -> bool:
        if isinstance(phi, BoxGamma):
            mask = self._mask(phi.arg)
            if self._explicit is None:
                # every world sees the same successors
                key = ("box", id(phi))
                if key not in memo:
                    memo[key] = (bool(mask[self._gamma_array].all()), phi)
                return memo[key][0]
            return bool(mask[np.asarray(self.successors("R_Gamma", w), dtype=np.int64)].all())
        if isinstance(phi, Atom):
            return self.atom_holds(w)
        if isinstance(phi, Not):
            return not self._holds(phi.arg, w, memo)
        if isinstance(phi, Conj):
            return self._holds(phi.left, w, memo) and self._holds(phi.right, w, memo)
        if isinstance(phi, Disj):
            return self._holds(phi.left, w, memo) or self._holds(phi.right, w, memo)
        if isinstance(phi, Impl):
            return (not self._holds(phi.left, w, memo)) or self._holds(phi.right, w, memo)
        raise EvaluationError(f"{type(phi).__name__} is not part of the Suszko language")


class MatrixModel(KripkeModel):
    """Worlds are truth values; ``R_D = W × D``; ``p(c)`` holds only at ``v(p(c))``.

    With ``designated_only`` the valuation keeps an atom only when its value
    is designated, which is the stricter reading of the definition.  ``v`` is
    always decoded back from ``V``; an atom that holds nowhere makes every
    formula containing it false.
    """

    kind = "matrix"

    def __init__(self, matrix: Matrix, v, designated_only: bool = False):
        L = matrix.lattice
        self.matrix = matrix
        self.lattice = L
        self.designated_only = designated_only
        V = {}
        for atom, value in v.items():
            value = L.lookup(value)
            keep = not designated_only or value in matrix.designated
            V[atom] = {value} if keep else set()
        D = matrix.sorted_designated()
        super().__init__(L.carrier, {"R_D": [(x, d) for x in L.carrier for d in D]}, (), V)
        self.decoded = {a: next(iter(ws)) for a, ws in self.valuation.items() if len(ws) == 1}
        self._values: dict = {}

    def value(self, phi):
        """``v(φ)`` decoded from ``V``, or ``None`` if some atom holds nowhere."""
        if phi in self._values:
            return self._values[phi]
        L = self.lattice
        if isinstance(phi, Atom):
            if phi not in self.valuation:
                raise EvaluationError(f"atom {phi} is not in the Herbrand base")
            out = self.decoded.get(phi)
        elif isinstance(phi, Op):
            args = [self.value(a) for a in phi.args]
            if phi.name not in L.connectives:
                raise EvaluationError(f"lattice {L.name} has no connective {phi.name!r}")
            out = None if None in args else L.apply(phi.name, *args)
        else:
            out = valuation(self.decoded, phi, L)
        self._values[phi] = out
        return out

    def _holds(self, phi, w, memo) -> bool:
        if isinstance(phi, DiaD):
            key = ("v", id(phi))
            if key not in memo:
                memo[key] = (self.value(phi.arg), phi)
            val = memo[key][0]
            return any(u == val for u in self.successors("R_D", w))
        if isinstance(phi, (Atom, Const, Op)):
            return w == self.value(phi)
        if isinstance(phi, Not):
            return not self._holds(phi.arg, w, memo)
        if isinstance(phi, Conj):
            return self._holds(phi.left, w, memo) and self._holds(phi.right, w, memo)
        if isinstance(phi, Disj):
            return self._holds(phi.left, w, memo) or self._holds(phi.right, w, memo)
        if isinstance(phi, Impl):
            return (not self._holds(phi.left, w, memo)) or self._holds(phi.right, w, memo)
        raise EvaluationError(f"{type(phi).__name__} is not part of the matrix language")


def suszko_model(gamma, vs: ValuationSpace, matrix: Matrix | None = None) -> SuszkoModel:
    return SuszkoModel(vs, gamma, matrix)


def matrix_model(matrix: Matrix, v, designated_only: bool = False) -> MatrixModel:
    return MatrixModel(matrix, v, designated_only)


def verify_suszko(gamma, suite, vs: ValuationSpace, matrix: Matrix | None = None,
                  model: SuszkoModel | None = None) -> Verdict:
    """``Γ ⊨ φ`` iff ``□_Γ φ`` holds at every valuation; extents are ∅ or Val."""
    gamma = list(gamma)
    M = suszko_model(gamma, vs, matrix) if model is None else model
    models = list(M.val_gamma)
    full = frozenset(M.worlds)
    n = 0
    for phi in suite:
        n += 1
        left = consequence(gamma, phi, vs, matrix, models)
        ext = M.extent(BoxGamma(phi))
        right = ext == full
        if left != right or ext not in (frozenset(), full):
            witness = {"formula": format_formula(phi), "side_left": left, "side_right": right,
                       "extent_size": len(ext)}
            return Verdict("suszko", False, witness,
                           {"lemma": "suszko", "formulas_checked": n}, "witness")
    return Verdict("suszko", True, None, {"lemma": "suszko", "formulas_checked": n}, "witness")


def verify_matrix(matrix: Matrix, v, suite, designated_only: bool = False) -> Verdict:
    """``v(φ) ∈ D`` iff ``◇_D φ`` holds at every world; extents are ∅ or W."""
    M = matrix_model(matrix, v, designated_only)
    L = matrix.lattice
    full = frozenset(M.worlds)
    n = 0
    for phi in suite:
        n += 1
        left = valuation(v, phi, L) in matrix.designated
        ext = M.extent(DiaD(phi))
        right = ext == full
        if left != right or ext not in (frozenset(), full):
            witness = {"formula": format_formula(phi), "side_left": left, "side_right": right,
                       "extent_size": len(ext)}
            return Verdict("matrix", False, witness,
                           {"lemma": "matrix", "formulas_checked": n}, "witness")
    return Verdict("matrix", True, None, {"lemma": "matrix", "formulas_checked": n}, "witness")
