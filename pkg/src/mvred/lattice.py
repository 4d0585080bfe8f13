"""Finite bounded lattices of algebraic truth values.

A lattice is stored extensionally: the carrier is an ordered tuple of element
names and every connective is a numpy table of carrier indices.  The four
built-in lattices (Belnap's bilattice, a discretised fuzzy chain, closed
subintervals of the grid and belief/doubt confidence pairs) are produced by
:func:`builtin_lattice`; user lattices are read from declaration files by
:func:`load_lattice_file`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import LatticeError

__all__ = [
    "CORE_CONNECTIVES",
    "LatticeSpec",
    "builtin_lattice",
    "check_lattice",
    "lattice_from_selector",
    "load_lattice_file",
    "parse_lattice_declaration",
    "residuum",
]

# name -> arity of the connectives every lattice carries
CORE_CONNECTIVES = {"neg": 1, "and": 2, "or": 2, "imp": 2}

_TABLE_FIELDS = ("leq_table", "meet_table", "join_table", "neg_table", "implies_table")


@dataclass(frozen=True, eq=False)
class LatticeSpec:
    """Bounded lattice ``(W, <=, meet, join)`` with negation, residuum and extras.

    ``extra`` maps connective names to index tables whose number of
    dimensions is the connective's arity.  ``aliases`` maps alternative
    spellings (``⊤``, ``1``, ...) to canonical element names.
    """

    name: str
    carrier: tuple[str, ...]
    leq_table: np.ndarray
    meet_table: np.ndarray
    join_table: np.ndarray
    neg_table: np.ndarray
    implies_table: np.ndarray
    bottom: str
    top: str
    extra: Mapping[str, np.ndarray] = field(default_factory=dict)
    aliases: Mapping[str, str] = field(default_factory=dict)
    numeric: bool = False

    def __post_init__(self):
        for name in _TABLE_FIELDS:
            arr = np.array(getattr(self, name), copy=True)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        extra = {}
        for name, table in self.extra.items():
            arr = np.array(table, dtype=np.int64, copy=True)
            arr.setflags(write=False)
            extra[name] = arr
        object.__setattr__(self, "extra", extra)
        object.__setattr__(self, "aliases", dict(self.aliases))
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.carrier)})

    # -- identity -------------------------------------------------------------

    def _key(self):
        tables = tuple(getattr(self, f).tobytes() for f in _TABLE_FIELDS)
        extras = tuple((k, v.tobytes()) for k, v in sorted(self.extra.items()))
        return (self.name, self.carrier, tables, extras, self.bottom, self.top)

    def __eq__(self, other):
        if not isinstance(other, LatticeSpec):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        return hash((self.name, self.carrier))

    def __repr__(self):
        return f"LatticeSpec({self.name!r}, {len(self.carrier)} elements)"

    def __len__(self):
        return len(self.carrier)

    def __iter__(self):
        return iter(self.carrier)

    def __contains__(self, value):
        return value in self._index

    # -- element access -------------------------------------------------------

    def index(self, value: str) -> int:
        try:
            return self._index[value]
        except KeyError:
            raise LatticeError(f"{value!r} is not an element of lattice {self.name}") from None

    def lookup(self, text: str) -> str:
        """Resolve a surface lexeme to the canonical element name."""
        key = re.sub(r"\s+", "", text)
        if key in self._index:
            return key
        if key in self.aliases:
            return self.aliases[key]
        if self.numeric:
            canon = re.sub(r"\d+(?:\.\d+)?(?:/\d+)?", lambda m: _fmt(Fraction(m.group())), key)
            if canon in self._index:
                return canon
        raise LatticeError(f"unknown element {text!r} for lattice {self.name}")

    @cached_property
    def _tables(self):
        tables = {
            "neg": self.neg_table.tolist(),
            "and": self.meet_table.tolist(),
            "or": self.join_table.tolist(),
            "imp": self.implies_table.tolist(),
        }
        for name, table in self.extra.items():
            tables[name] = table.tolist()
        return tables

    @cached_property
    def connectives(self) -> dict[str, int]:
        ops = dict(CORE_CONNECTIVES)
        ops.update({name: table.ndim for name, table in self.extra.items()})
        return ops

    def table(self, op: str):
        """Nested python lists of indices for ``op`` (fast scalar access)."""
        try:
            return self._tables[op]
        except KeyError:
            raise LatticeError(f"lattice {self.name} has no connective {op!r}") from None

    def apply(self, op: str, *args: str) -> str:
        table = self.table(op)
        if len(args) != self.connectives[op]:
            raise LatticeError(f"{op} expects {self.connectives[op]} arguments, got {len(args)}")
        for a in args:
            table = table[self.index(a)]
        return self.carrier[table]

    def le(self, a: str, b: str) -> bool:
        return bool(self.leq_table[self.index(a), self.index(b)])

    def meet(self, a: str, b: str) -> str:
        return self.apply("and", a, b)

    def join(self, a: str, b: str) -> str:
        return self.apply("or", a, b)

    def neg(self, a: str) -> str:
        return self.apply("neg", a)

    def implies(self, a: str, b: str) -> str:
        return self.apply("imp", a, b)

    def join_all(self, values: Iterable[str]) -> str:
        acc = self.bottom
        for v in values:
            acc = self.join(acc, v)
        return acc

    def meet_all(self, values: Iterable[str]) -> str:
        acc = self.top
        for v in values:
            acc = self.meet(acc, v)
        return acc

    @cached_property
    def height(self) -> int:
        """Length of the longest strict chain (number of cover steps)."""
        n = len(self.carrier)
        strict = self.leq_table & ~np.eye(n, dtype=bool)
        order = sorted(range(n), key=lambda i: int(self.leq_table[:, i].sum()))
        depth = [0] * n
        for j in order:
            below = [depth[i] + 1 for i in range(n) if strict[i, j]]
            depth[j] = max(below, default=0)
        return max(depth)

    def with_entry(self, op: str, args: tuple[str, ...], value: str | bool) -> "LatticeSpec":
        """Copy with one table entry overwritten.  No validation is performed."""
        fields = {f: np.array(getattr(self, f)) for f in _TABLE_FIELDS}
        extra = {k: np.array(v) for k, v in self.extra.items()}
        idx = tuple(self.index(a) for a in args)
        if op == "leq":
            fields["leq_table"][idx] = bool(value)
        else:
            target = {"and": "meet_table", "or": "join_table", "neg": "neg_table", "imp": "implies_table"}
            new = self.index(value)
            if op in target:
                fields[target[op]][idx] = new
            elif op in extra:
                extra[op][idx] = new
            else:
                raise LatticeError(f"no table named {op!r}")
        return LatticeSpec(
            self.name, self.carrier, bottom=self.bottom, top=self.top, extra=extra,
            aliases=self.aliases, numeric=self.numeric, **fields,
        )


def residuum(L: LatticeSpec, a: str, b: str) -> str:
    """Relative pseudo-complement: the join of every ``c`` with ``c ∧ a <= b``.

    Raises :class:`LatticeError` when that join is itself not a candidate,
    i.e. the lattice is not residuated at ``(a, b)``.
    """
    candidates = [c for c in L.carrier if L.le(L.meet(c, a), b)]
    result = L.join_all(candidates)
    if not L.le(L.meet(result, a), b):
        raise LatticeError(
            f"lattice {L.name} is not residuated at ({a}, {b}): "
            f"join {result} of candidates {candidates} is not a candidate"
        )
    return result


def _residuum_table(carrier, leq, meet, join, bottom):
    n = len(carrier)
    out = np.zeros((n, n), dtype=np.int64)
    for a, b in product(range(n), repeat=2):
        acc = bottom
        for c in range(n):
            if leq[meet[c, a], b]:
                acc = join[acc, c]
        out[a, b] = acc
    return out


def check_lattice(L: LatticeSpec) -> list[str]:
    """Return one report per violated lattice invariant; empty means valid."""
    C = L.carrier
    n = len(C)
    reports: list[str] = []
    shapes = {
        "leq": (L.leq_table, (n, n)),
        "meet": (L.meet_table, (n, n)),
        "join": (L.join_table, (n, n)),
        "neg": (L.neg_table, (n,)),
        "implies": (L.implies_table, (n, n)),
    }
    shapes.update({f"op {k}": (v, (n,) * v.ndim) for k, v in L.extra.items()})
    for label, (table, shape) in shapes.items():
        if table.shape != shape:
            reports.append(f"{label}: table shape {table.shape}, expected {shape}")
        elif label != "leq" and table.size and (table.min() < 0 or table.max() >= n):
            reports.append(f"{label}: table value outside the carrier")
    if L.bottom not in L or L.top not in L:
        reports.append(f"bottom/top ({L.bottom}, {L.top}) not in carrier")
    if reports:
        return reports

    le = L.leq_table.astype(bool)
    m, j, ng, imp = L.meet_table, L.join_table, L.neg_table, L.implies_table
    idx = np.arange(n)

    def pairs(mask):
        return [(C[a], C[b]) for a, b in zip(*np.nonzero(mask))]

    def triples(mask):
        return [(C[a], C[b], C[c]) for a, b, c in zip(*np.nonzero(mask))]

    for a in np.nonzero(~np.diag(le))[0]:
        reports.append(f"leq not reflexive at {C[a]}")
    for a, b in pairs(le & le.T & ~np.eye(n, dtype=bool)):
        if a < b:
            reports.append(f"leq not antisymmetric at ({a}, {b})")
    trans = le[:, :, None] & le[None, :, :] & ~le[:, None, :]
    for a, b, c in triples(trans):
        reports.append(f"leq not transitive: {a} <= {b} <= {c} but not {a} <= {c}")

    for name, t, below in (("meet", m, True), ("join", j, False)):
        rel = le if below else le.T
        bound_ok = rel[t, idx[:, None]] & rel[t, idx[None, :]]
        for a, b in pairs(~bound_ok):
            reports.append(f"{name}({a}, {b}) = {C[t[C.index(a), C.index(b)]]} is not a {'lower' if below else 'upper'} bound")
        # every common bound must lie below (above) the computed one
        common = rel[:, :, None] & rel[:, None, :]
        tight = ~common | rel[:, t]
        for c, a, b in triples(~tight):
            reports.append(
                f"{name}({a}, {b}) = {C[t[C.index(a), C.index(b)]]} is not the "
                f"{'greatest lower' if below else 'least upper'} bound: {c} violates"
            )
        for a, b in pairs(t != t.T):
            if a < b:
                reports.append(f"{name} not commutative at ({a}, {b})")
        assoc = t[t[:, :, None], idx[None, None, :]] != t[idx[:, None, None], t[None, :, :]]
        for a, b, c in triples(assoc):
            reports.append(f"{name} not associative at ({a}, {b}, {c})")
        for a in np.nonzero(np.diag(t) != idx)[0]:
            reports.append(f"{name} not idempotent at {C[a]}")
    absorb = (m[idx[:, None], j] != idx[:, None]) | (j[idx[:, None], m] != idx[:, None])
    for a, b in pairs(absorb):
        reports.append(f"absorption fails at ({a}, {b})")

    bot, top = L.index(L.bottom), L.index(L.top)
    for a in np.nonzero(~le[bot, :])[0]:
        reports.append(f"bottom {L.bottom} is not below {C[a]}")
    for a in np.nonzero(~le[:, top])[0]:
        reports.append(f"top {L.top} is not above {C[a]}")

    if ng[bot] != top:
        reports.append(f"neg(bottom) != top: neg({L.bottom}) = {C[ng[bot]]}")
    if ng[top] != bot:
        reports.append(f"neg(top) != bottom: neg({L.top}) = {C[ng[top]]}")
    for a, b in pairs(le & ~le[ng[None, :], ng[:, None]]):
        reports.append(f"neg not antitonic: {a} <= {b} but not neg({b}) <= neg({a})")

    for a, b in product(range(n), repeat=2):
        cands = [c for c in range(n) if le[m[c, a], b]]
        acc = bot
        for c in cands:
            acc = j[acc, c]
        if not le[m[acc, a], b]:
            reports.append(f"not residuated at ({C[a]}, {C[b]}): join {C[acc]} of candidates is not a candidate")
        elif imp[a, b] != acc:
            reports.append(f"implies({C[a]}, {C[b]}) = {C[imp[a, b]]} but residuum is {C[acc]}")
        if (imp[a, b] == top) != bool(le[a, b]):
            reports.append(f"implies({C[a]}, {C[b]}) = top must hold iff {C[a]} <= {C[b]}")
    return reports


# -- construction helpers -----------------------------------------------------


def _fmt(x: Fraction) -> str:
    den = x.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    s = str(Decimal(x.numerator) / Decimal(x.denominator))
    return s


def _bounds_tables(carrier_size: int, leq: np.ndarray, name: str):
    """Derive meet/join tables from a partial order, failing if not a lattice."""
    n = carrier_size
    meet = np.zeros((n, n), dtype=np.int64)
    join = np.zeros((n, n), dtype=np.int64)
    for a, b in product(range(n), repeat=2):
        lower = [c for c in range(n) if leq[c, a] and leq[c, b]]
        glb = [c for c in lower if all(leq[d, c] for d in lower)]
        upper = [c for c in range(n) if leq[a, c] and leq[b, c]]
        lub = [c for c in upper if all(leq[c, d] for d in upper)]
        if len(glb) != 1 or len(lub) != 1:
            raise LatticeError(f"{name}: order is not a lattice at elements {a}, {b}")
        meet[a, b], join[a, b] = glb[0], lub[0]
    return meet, join


def _closure(n: int, pairs: Iterable[tuple[int, int]]) -> np.ndarray:
    leq = np.eye(n, dtype=bool)
    for a, b in pairs:
        leq[a, b] = True
    for k in range(n):
        leq |= leq[:, [k]] & leq[[k], :]
    return leq


def _from_order(name, carrier, leq, neg, extra=None, aliases=None, numeric=False,
                meet=None, join=None):
    n = len(carrier)
    leq = np.asarray(leq, dtype=bool)
    if meet is None or join is None:
        meet, join = _bounds_tables(n, leq, name)
    bottoms = [i for i in range(n) if leq[i, :].all()]
    tops = [i for i in range(n) if leq[:, i].all()]
    if not bottoms or not tops:
        raise LatticeError(f"{name}: lattice has no bottom or no top")
    implies = _residuum_table(carrier, leq, meet, join, bottoms[0])
    return LatticeSpec(
        name=name, carrier=tuple(carrier), leq_table=leq, meet_table=meet,
        join_table=join, neg_table=np.asarray(neg, dtype=np.int64), implies_table=implies,
        bottom=carrier[bottoms[0]], top=carrier[tops[0]], extra=extra or {},
        aliases=aliases or {}, numeric=numeric,
    )


def _belnap4() -> LatticeSpec:
    C = ("f", "bot", "top", "t")
    f, bot, top, t = range(4)
    leq = _closure(4, [(f, bot), (f, top), (bot, t), (top, t)])
    neg = [t, bot, top, f]
    meet, join = _bounds_tables(4, leq, "belnap4")
    kleq = _closure(4, [(bot, f), (bot, t), (f, top), (t, top)])
    otimes, oplus = _bounds_tables(4, kleq, "belnap4 knowledge order")
    conflation = [f, top, bot, t]
    mu = [f, f, t, t]
    implies = _residuum_table(C, leq, meet, join, f)
    neg_t = [implies[x, f] for x in range(4)]
    aliases = {"⊤": "top", "⊥": "bot", "1": "t", "0": "f", "true": "t", "false": "f"}
    return _from_order(
        "belnap4", C, leq, neg, meet=meet, join=join, aliases=aliases,
        extra={"otimes": otimes, "oplus": oplus, "conflation": conflation, "mu": mu, "neg_t": neg_t},
    )


def _grid(k: int) -> list[Fraction]:
    return [Fraction(i, k - 1) for i in range(k)]


def _fuzzy_chain(k: int) -> LatticeSpec:
    xs = _grid(k)
    C = tuple(_fmt(x) for x in xs)
    leq = np.array([[a <= b for b in xs] for a in xs])
    meet = np.array([[xs.index(min(a, b)) for b in xs] for a in xs])
    join = np.array([[xs.index(max(a, b)) for b in xs] for a in xs])
    neg = [xs.index(1 - a) for a in xs]
    return _from_order(f"fuzzy:{k}", C, leq, neg, meet=meet, join=join, numeric=True)


def _intervals(k: int) -> list[tuple[Fraction, Fraction]]:
    xs = _grid(k)
    return [(x, y) for x in xs for y in xs if x <= y]


def _ivl(p) -> str:
    return f"[{_fmt(p[0])},{_fmt(p[1])}]"


def _interval(k: int) -> LatticeSpec:
    ivs = _intervals(k)
    C = tuple(_ivl(p) for p in ivs)
    pos = {p: i for i, p in enumerate(ivs)}
    leq = np.array([[a[0] <= b[0] and a[1] <= b[1] for b in ivs] for a in ivs])
    meet = np.array([[pos[(min(a[0], b[0]), min(a[1], b[1]))] for b in ivs] for a in ivs])
    join = np.array([[pos[(max(a[0], b[0]), max(a[1], b[1]))] for b in ivs] for a in ivs])
    neg = [pos[(1 - a[1], 1 - a[0])] for a in ivs]
    return _from_order(f"interval:{k}", C, leq, neg, meet=meet, join=join, numeric=True)


def _confidence(k: int) -> LatticeSpec:
    ivs = _intervals(k)
    pairs = [(b, d) for b in ivs for d in ivs]
    C = tuple(f"({_ivl(b)},{_ivl(d)})" for b, d in pairs)
    pos = {p: i for i, p in enumerate(pairs)}

    def ile(a, b):
        return a[0] <= b[0] and a[1] <= b[1]

    def imin(a, b):
        return (min(a[0], b[0]), min(a[1], b[1]))

    def imax(a, b):
        return (max(a[0], b[0]), max(a[1], b[1]))

    leq = np.array([[ile(a[0], b[0]) and ile(b[1], a[1]) for b in pairs] for a in pairs])
    meet = np.array([[pos[(imin(a[0], b[0]), imax(a[1], b[1]))] for b in pairs] for a in pairs])
    join = np.array([[pos[(imax(a[0], b[0]), imin(a[1], b[1]))] for b in pairs] for a in pairs])
    neg = [pos[(a[1], a[0])] for a in pairs]
    return _from_order(f"confidence:{k}", C, leq, neg, meet=meet, join=join, numeric=True)


_DEFAULT_K = {"fuzzy_chain": 5, "interval": 5, "confidence": 3}


@lru_cache(maxsize=None)
def builtin_lattice(name: str, k: int | None = None) -> LatticeSpec:
    """Built-in lattice by name: ``belnap4``, ``fuzzy_chain``, ``interval`` or ``confidence``.

    The three real-valued lattices are discretised on the grid
    ``{0, 1/(k-1), ..., 1}``.
    """
    if name == "belnap4":
        return _belnap4()
    if name not in _DEFAULT_K:
        raise LatticeError(f"unknown built-in lattice {name!r}")
    k = _DEFAULT_K[name] if k is None else int(k)
    if k < 2:
        raise LatticeError(f"grid size k must be at least 2, got {k}")
    return {"fuzzy_chain": _fuzzy_chain, "interval": _interval, "confidence": _confidence}[name](k)


def lattice_from_selector(selector: str, base_dir: str | Path | None = None) -> LatticeSpec:
    """Resolve ``belnap4``, ``fuzzy:k``, ``interval:k``, ``confidence:k`` or ``file:PATH``."""
    selector = selector.strip()
    if selector.startswith("file:"):
        path = Path(selector[5:])
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        return load_lattice_file(path)
    name, _, arg = selector.partition(":")
    name = {"fuzzy": "fuzzy_chain"}.get(name, name)
    if arg:
        try:
            k = int(arg)
        except ValueError:
            raise LatticeError(f"bad grid size in lattice selector {selector!r}") from None
        return builtin_lattice(name, k)
    return builtin_lattice(name)


# -- declaration files ----------------------------------------------------------

_NAME = r"[A-Za-z0-9_.'⊤⊥+-]+"
_HEADER = re.compile(r"^\s*(elements|leq|neg|implies|op\s+([A-Za-z_]\w*)\s*/\s*([12]))\s*:", re.S)
_ENTRY = {
    "leq": re.compile(rf"({_NAME})\s*<=\s*({_NAME})"),
    1: re.compile(rf"({_NAME})\s*->\s*({_NAME})"),
    2: re.compile(rf"\(\s*({_NAME})\s*,\s*({_NAME})\s*\)\s*->\s*({_NAME})"),
}


def _entries(pattern, text, where):
    out, last = [], 0
    for mt in pattern.finditer(text):
        if text[last:mt.start()].strip(" \t\r\n,"):
            raise LatticeError(f"cannot parse {text[last:mt.start()].strip()!r} in {where}")
        out.append(mt.groups())
        last = mt.end()
    if text[last:].strip(" \t\r\n,"):
        raise LatticeError(f"cannot parse {text[last:].strip()!r} in {where}")
    return out


def parse_lattice_declaration(text: str, selector: str | None = None) -> LatticeSpec:
    """Build a lattice from ``lattice NAME { elements: ...; leq: a <= b; ... }``.

    ``leq`` lists generating pairs (the reflexive-transitive closure is
    taken); meet, join and implication are derived from the order.  An
    explicit ``implies`` table is accepted only if it equals the residuum.
    The result must pass :func:`check_lattice`.
    """
    text = re.sub(r"[%#][^\n]*", "", text)
    mt = re.fullmatch(r"\s*lattice\s+([A-Za-z_]\w*)\s*\{(.*)\}\s*", text, re.S)
    if not mt:
        raise LatticeError("expected 'lattice NAME { ... }'")
    name, body = mt.groups()
    sections: dict[str, list[str]] = {}
    current = None
    for stmt in body.split(";"):
        if not stmt.strip():
            continue
        hm = _HEADER.match(stmt)
        if hm:
            current = hm.group(1) if not hm.group(2) else f"op {hm.group(2)}/{hm.group(3)}"
            current = re.sub(r"\s+", " ", current)
            stmt = stmt[hm.end():]
        elif current is None:
            raise LatticeError(f"statement outside any section: {stmt.strip()!r}")
        sections.setdefault(current, []).append(stmt)

    if "elements" not in sections:
        raise LatticeError("declaration has no 'elements' section")
    carrier = " ".join(sections["elements"]).split()
    if len(set(carrier)) != len(carrier):
        raise LatticeError("duplicate element names")
    pos = {e: i for i, e in enumerate(carrier)}
    n = len(carrier)

    def ix(e):
        if e not in pos:
            raise LatticeError(f"undeclared element {e!r}")
        return pos[e]

    leq_pairs = [(ix(a), ix(b)) for s in sections.get("leq", []) for a, b in _entries(_ENTRY["leq"], s, "leq")]
    leq = _closure(n, leq_pairs)

    def unary(section):
        table = {}
        for s in sections[section]:
            for a, b in _entries(_ENTRY[1], s, section):
                table[ix(a)] = ix(b)
        missing = [carrier[i] for i in range(n) if i not in table]
        if missing:
            raise LatticeError(f"{section} is not total: missing {missing}")
        return [table[i] for i in range(n)]

    def binary(section):
        table = np.full((n, n), -1, dtype=np.int64)
        for s in sections[section]:
            for a, b, c in _entries(_ENTRY[2], s, section):
                table[ix(a), ix(b)] = ix(c)
        if (table < 0).any():
            a, b = map(int, np.argwhere(table < 0)[0])
            raise LatticeError(f"{section} is not total: missing ({carrier[a]}, {carrier[b]})")
        return table

    if "neg" not in sections:
        raise LatticeError("declaration has no 'neg' section")
    extra = {}
    for section in sections:
        if section.startswith("op "):
            op, arity = section[3:].split("/")
            if op in CORE_CONNECTIVES or op in ("meet", "join"):
                raise LatticeError(f"connective name {op!r} is reserved")
            extra[op] = unary(section) if arity == "1" else binary(section)
    L = _from_order(selector or f"file:{name}", carrier, leq, unary("neg"), extra=extra)
    if "implies" in sections:
        given = binary("implies")
        bad = np.argwhere(given != L.implies_table)
        if len(bad):
            a, b = map(int, bad[0])
            raise LatticeError(
                f"implies({carrier[a]}, {carrier[b]}) = {carrier[given[a, b]]} "
                f"does not match the residuum {carrier[L.implies_table[a, b]]}"
            )
    reports = check_lattice(L)
    if reports:
        raise LatticeError(f"lattice {name} is invalid: " + "; ".join(reports))
    return L


def load_lattice_file(path: str | Path) -> LatticeSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise LatticeError(f"cannot read lattice file {path}: {exc}") from None
    return parse_lattice_declaration(text, selector=f"file:{path}")
