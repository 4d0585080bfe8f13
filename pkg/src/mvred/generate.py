"""Random and exhaustive generators for programs and formulas.

All generators take an explicit ``random.Random`` so results are reproducible.
"""

from __future__ import annotations

import random
from itertools import product

from .lattice import LatticeSpec
from .syntax.ast import (
    ERROR_MARK, Atom, Conj, Const, Dia, Disj, Encap, FAtom, FOp, Impl, Literal, MAtom,
    Not, Op, Program, Rule,
)

__all__ = [
    "random_program", "random_matom_formula", "random_mv_formula", "random_flat_formula",
    "enumerate_formulas", "clause_suite",
]

_CONSTS = "abcd"
_VARS = "XY"


def random_program(rng: random.Random, lattice: LatticeSpec, max_consts: int = 4,
                   max_rules: int = 6, max_body: int = 2, max_head_literals: int = 4,
                   max_arity: int = 2) -> Program:
    """A stratified program: ``~`` only points to predicates of a lower level.

    Body variables always occur in the head, so grounding never multiplies a
    head's merged body.  Literal occurrences per head predicate are capped by
    ``max_head_literals``, which bounds the unary transform at
    ``|W| ** max_head_literals`` clauses per ground head.
    """
    consts = list(_CONSTS[: rng.randint(1, max_consts)])
    npred = rng.randint(1, 4)
    arity = {f"p{i}": rng.choice([a for a in (0, 1, 1, 2) if a <= max_arity]) for i in range(npred)}
    preds = list(arity)
    used: dict[str, int] = {p: 0 for p in preds}
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        i = rng.randrange(npred)
        head_pred = preds[i]
        room = min(max_body, max_head_literals - used[head_pred])
        if i == 0 or room <= 0 or rng.random() < 0.35:
            head = Atom(head_pred, tuple(rng.choice(consts) for _ in range(arity[head_pred])))
            rules.append(Rule(head, (), rng.choice(lattice.carrier)))
            continue
        head_args = tuple(rng.choice(consts + list(_VARS)) for _ in range(arity[head_pred]))
        pool = consts + sorted({t for t in head_args if t in _VARS})
        n_lits = rng.randint(1, room)
        lits = []
        for _ in range(n_lits):
            negated = rng.random() < 0.4
            j = rng.randrange(i) if negated else rng.randrange(i + 1)
            body_pred = preds[j]
            lits.append(Literal(Atom(body_pred, tuple(rng.choice(pool) for _ in range(arity[body_pred]))),
                                negated))
        used[head_pred] += n_lits
        if n_lits == 2 and rng.random() < 0.3:
            body = ((lits[0],), (lits[1],))
        else:
            body = (tuple(lits),)
        rules.append(Rule(Atom(head_pred, head_args), body))
    return Program(lattice, tuple(rules), arity, tuple(consts))


def random_matom_formula(rng: random.Random, atoms, lattice: LatticeSpec, depth: int = 4):
    if depth <= 0 or rng.random() < 0.25:
        return MAtom(rng.choice(lattice.carrier), rng.choice(atoms))
    k = rng.randrange(4)
    if k == 0:
        return Not(random_matom_formula(rng, atoms, lattice, depth - 1))
    cls = (Conj, Disj, Impl)[k - 1]
    return cls(random_matom_formula(rng, atoms, lattice, depth - 1),
               random_matom_formula(rng, atoms, lattice, depth - 1))


def random_mv_formula(rng: random.Random, atoms, lattice: LatticeSpec, depth: int = 3,
                      ops=("neg", "and", "or", "imp"), constants: bool = False):
    if depth <= 0 or rng.random() < 0.3:
        if constants and rng.random() < 0.2:
            return Const(rng.choice(lattice.carrier))
        return rng.choice(atoms)
    name = rng.choice(ops)
    arity = lattice.connectives[name]
    return Op(name, tuple(random_mv_formula(rng, atoms, lattice, depth - 1, ops, constants)
                          for _ in range(arity)))


def random_flat_formula(rng: random.Random, atoms, lattice: LatticeSpec, depth: int = 3):
    """Flat formulas mixing arbitrary ``p_F(c, α)`` leaves, ``E(…)`` and ``A``-operators."""
    if depth <= 0 or rng.random() < 0.25:
        atom = rng.choice(atoms)
        r = rng.random()
        if r < 0.2:
            return Encap(random_mv_formula(rng, atoms, lattice, 2))
        value = ERROR_MARK if r < 0.25 else rng.choice(lattice.carrier)
        return FAtom(atom.pred, atom.args, value)
    k = rng.randrange(6)
    if k == 0:
        return FOp("negA", (random_flat_formula(rng, atoms, lattice, depth - 1),))
    if k == 4:
        return Dia(random_flat_formula(rng, atoms, lattice, depth - 1))
    if k == 5:
        return Not(random_flat_formula(rng, atoms, lattice, depth - 1))
    name = ("andA", "orA", "larrowA")[k - 1]
    return FOp(name, (random_flat_formula(rng, atoms, lattice, depth - 1),
                      random_flat_formula(rng, atoms, lattice, depth - 1)))


def enumerate_formulas(atoms, depth: int, ops=(("neg", 1), ("and", 2), ("or", 2), ("imp", 2)),
                       constants=()) -> list:
    """Every formula of nesting depth at most ``depth``, in a fixed order."""
    level = [*atoms, *(Const(c) for c in constants)]
    seen = dict.fromkeys(level)
    for _ in range(depth):
        prev = list(seen)
        for name, arity in ops:
            for args in product(prev, repeat=arity):
                seen.setdefault(Op(name, args), None)
    return list(seen)


def clause_suite(atoms, lattice: LatticeSpec) -> list[Op]:
    """Clauses ``φ <- ψ`` with ``φ`` of depth one and ``ψ`` of depth one or a constant."""
    heads = enumerate_formulas(atoms, 1, ops=(("neg", 1), ("and", 2), ("or", 2)))
    bodies = heads + [Const(c) for c in lattice.carrier]
    return [Op("imp", (b, h)) for h in heads for b in bodies]
