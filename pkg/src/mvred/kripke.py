"""Finite multi-modal Kripke structures shared by the reductions."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from functools import cached_property

from .errors import EvaluationError
from .syntax.ast import substitute, variables

__all__ = ["KripkeModel"]


class KripkeModel:
    """Worlds, named binary/ternary relations, constants and a valuation ``V``.

    ``valuation`` maps a ground key (whose shape depends on the reduction) to
    the set of worlds where it holds.  Subclasses implement :meth:`_holds`.
    """

    kind = "kripke"

    def __init__(self, worlds: Iterable, relations: Mapping[str, Iterable[tuple]],
                 constants: Iterable[str] = (), valuation: Mapping | None = None):
        self.worlds = tuple(worlds)
        self._world_set = frozenset(self.worlds)
        self._order = {w: i for i, w in enumerate(self.worlds)}
        self.relations = {name: frozenset(map(tuple, rel)) for name, rel in relations.items()}
        for name, rel in self.relations.items():
            for tup in rel:
                bad = [x for x in tup if x not in self._world_set]
                if bad:
                    raise EvaluationError(f"relation {name} mentions non-world {bad[0]!r}")
        self.constants = tuple(constants)
        self.valuation = {k: frozenset(v) for k, v in (valuation or {}).items()}

    # -- relations ----------------------------------------------------------

    @cached_property
    def _succ(self) -> dict[str, dict]:
        index: dict[str, dict] = {}
        for name, rel in self.relations.items():
            table: dict = {}
            for tup in sorted(rel, key=lambda t: [self._order[x] for x in t]):
                rest = tup[1:] if len(tup) > 2 else tup[1]
                table.setdefault(tup[0], []).append(rest)
            index[name] = table
        return index

    def successors(self, relation: str, w) -> list:
        """``y`` with ``(w, y)`` in a binary relation, ``(y, z)`` for a ternary one."""
        try:
            return self._succ[relation].get(w, [])
        except KeyError:
            raise EvaluationError(f"no accessibility relation {relation!r}") from None

    def check_world(self, w):
        if w not in self._world_set:
            raise EvaluationError(f"unknown world {w!r}")

    # -- evaluation ---------------------------------------------------------

    def holds(self, phi, w, g: Mapping[str, str] | None = None) -> bool:
        self.check_world(w)
        phi = self._ground(phi, g)
        return self._holds(phi, w, {})

    def extent(self, phi, g: Mapping[str, str] | None = None) -> frozenset:
        """``|φ|``: the set of worlds where ``φ`` holds."""
        phi = self._ground(phi, g)
        memo: dict = {}
        return frozenset(w for w in self.worlds if self._holds(phi, w, memo))

    def is_true(self, phi, g: Mapping[str, str] | None = None) -> bool:
        return self.extent(phi, g) == self._world_set

    def _ground(self, phi, g):
        if g:
            phi = substitute(phi, dict(g))
        free = variables(phi)
        if free:
            raise EvaluationError(f"formula has unassigned variables {free}")
        return phi

    def _holds(self, phi, w, memo) -> bool:  # pragma: no cover - abstract
        raise NotImplementedError

    # -- export -------------------------------------------------------------

    def relations_json(self) -> dict[str, list[list]]:
        """Relations as sorted lists of tuples, worlds rendered as strings."""
        out = {}
        for name in sorted(self.relations):
            rows = sorted(self.relations[name], key=lambda t: [self._order[x] for x in t])
            out[name] = [[str(x) for x in t] for t in rows]
        return out

    def __repr__(self):
        rels = ", ".join(f"{k}:{len(v)}" for k, v in sorted(self.relations.items()))
        return f"{type(self).__name__}({len(self.worlds)} worlds; {rels})"
