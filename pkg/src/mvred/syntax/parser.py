"""Hand-written recursive-descent parser for programs and formulas.

Program surface::

    lattice belnap4.
    p(a) <- @t.
    q(X) :- p(X), ~r(X); s(X).

Formula surface (loosest binding first)::

    F   := D ("->" F)?                          right associative
    D   := C ("or" C | "orA" C)*
    C   := U ("and" U | "andA" U | "<-A" U)*
    U   := "not" U | "~A" U | "dia" U | "dia_d" M | "box_gamma" M | "box" M
         | "E" "(" M ")" | "[" VALUE "]" atom | atom | flat-atom | "(" F ")"

Many-valued sub-formulas ``M`` use the same precedence with ``~`` as
negation, ``<-`` as reversed implication, ``@VALUE`` constants and
``$name(args)`` for lattice-specific connectives.
"""

from __future__ import annotations

import re
from pathlib import Path

from ..errors import LatticeError, ParseError
from ..lattice import LatticeSpec, lattice_from_selector
from .ast import (
    ERROR_MARK, Atom, BoxGamma, Conj, Const, Dia, DiaD, Disj, Encap, FAtom, FOp,
    Impl, Literal, MAtom, Not, Op, Program, Rule, is_var,
)

__all__ = ["parse_program", "parse_formula", "parse_mv_formula", "Scanner"]

_WS = re.compile(r"(?:\s+|%[^\n]*)+")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_VALUE = re.compile(
    r"\(\s*\[[^\]]*\]\s*,\s*\[[^\]]*\]\s*\)"    # confidence pair
    r"|\[[^\]]*\]"                               # interval
    r"|\d+(?:\.\d+)?(?:/\d+)?"                   # number or fraction
    r"|[A-Za-z_][A-Za-z0-9_]*"
    r"|[⊤⊥]"
)
_KEYWORDS = {"and", "or", "not", "andA", "orA", "dia", "dia_d", "box", "box_gamma", "E"}
# 2-valued built-ins, written prefix: =(a,b), <=_F(a,b,t)
_PRED = re.compile(r"<=|=|[a-z][A-Za-z0-9_]*")


class Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        m = _WS.match(self.text, self.pos)
        if m:
            self.pos = m.end()

    def location(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, msg, pos=None) -> ParseError:
        return ParseError(msg, *self.location(pos))

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def peek_word(self, word: str) -> bool:
        self.skip()
        m = _IDENT.match(self.text, self.pos)
        return bool(m) and m.group() == word

    def accept(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def accept_word(self, word: str) -> bool:
        if self.peek_word(word):
            self.pos += len(word)
            return True
        return False

    def expect(self, s: str):
        if not self.accept(s):
            raise self.error(f"expected {s!r}, found {self.snippet()!r}")

    def match(self, regex):
        self.skip()
        m = regex.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group()

    def snippet(self) -> str:
        self.skip()
        return self.text[self.pos:self.pos + 12] or "end of input"


def _value(sc: Scanner, lattice: LatticeSpec | None, allow_error=False) -> str:
    start = sc.pos
    text = sc.match(_VALUE)
    if text is None:
        raise sc.error(f"expected a truth value, found {sc.snippet()!r}")
    if allow_error and text == ERROR_MARK and (lattice is None or ERROR_MARK not in lattice):
        return ERROR_MARK
    if lattice is None:
        return re.sub(r"\s+", "", text)
    try:
        return lattice.lookup(text)
    except LatticeError as exc:
        raise sc.error(str(exc), start) from None


def _terms(sc: Scanner) -> tuple[str, ...]:
    if not sc.accept("("):
        return ()
    out = []
    while True:
        t = sc.match(_IDENT)
        if t is None:
            raise sc.error(f"expected a term, found {sc.snippet()!r}")
        out.append(t)
        if sc.accept(")"):
            return tuple(out)
        sc.expect(",")


def _atom(sc: Scanner) -> Atom:
    start = sc.pos
    name = sc.match(_IDENT)
    if name is None or is_var(name):
        raise sc.error(f"expected a predicate, found {sc.snippet()!r}", start)
    return Atom(name, _terms(sc))


# -- programs -----------------------------------------------------------------


class _ProgramParser:
    def __init__(self, text, lattice, base_dir):
        self.sc = Scanner(text)
        self.lattice = lattice
        self.base_dir = base_dir
        self.arity: dict[str, int] = {}

    def run(self) -> Program:
        sc = self.sc
        sc.skip()
        if not sc.accept_word("lattice"):
            raise sc.error("program must start with a lattice declaration")
        sc.skip()
        start = sc.pos
        m = re.compile(r"(\S+?)\.(?=\s|$)").match(sc.text, sc.pos)
        if not m:
            raise sc.error("malformed lattice declaration")
        sc.pos = m.end()
        if self.lattice is None:
            try:
                self.lattice = lattice_from_selector(m.group(1), self.base_dir)
            except LatticeError as exc:
                raise sc.error(str(exc), start) from None
        rules = []
        while not sc.at_end():
            rules.append(self.clause())
        consts = sorted({t for r in rules for a in [r.head, *(l.atom for l in r.literals())]
                         for t in a.args if not is_var(t)})
        return Program(self.lattice, tuple(rules), dict(self.arity), tuple(consts))

    def checked_atom(self) -> Atom:
        start = self.sc.pos
        a = _atom(self.sc)
        known = self.arity.setdefault(a.pred, a.arity)
        if known != a.arity:
            raise self.sc.error(f"predicate {a.pred} used with arity {a.arity}, declared {known}", start)
        return a

    def clause(self) -> Rule:
        sc = self.sc
        start = sc.pos
        head = self.checked_atom()
        if sc.accept("<-"):
            sc.expect("@")
            value = _value(sc, self.lattice)
            sc.expect(".")
            if any(is_var(t) for t in head.args):
                raise sc.error(f"variable in fact {head}", start)
            return Rule(head, (), value)
        if sc.accept(":-"):
            blocks = [self.block()]
            while sc.accept(";"):
                blocks.append(self.block())
            sc.expect(".")
            return Rule(head, tuple(blocks))
        raise sc.error(f"expected '<-' or ':-', found {sc.snippet()!r}")

    def block(self) -> tuple[Literal, ...]:
        lits = [self.literal()]
        while self.sc.accept(","):
            lits.append(self.literal())
        return tuple(lits)

    def literal(self) -> Literal:
        sc = self.sc
        if sc.accept("~"):
            if sc.peek("~"):
                raise sc.error("nested negation is not supported")
            return Literal(self.checked_atom(), True)
        return Literal(self.checked_atom())


def parse_program(text: str, lattice: LatticeSpec | None = None,
                  base_dir: str | Path | None = None) -> Program:
    """Parse program source.  ``lattice`` overrides the declared one."""
    return _ProgramParser(text, lattice, base_dir).run()


# -- formulas -----------------------------------------------------------------


class _FormulaParser:
    def __init__(self, text, lattice):
        self.sc = Scanner(text)
        self.lattice = lattice

    def done(self, node):
        if not self.sc.at_end():
            raise self.sc.error(f"unexpected input {self.sc.snippet()!r}")
        return node

    # modal level

    def formula(self):
        left = self.disj()
        if self.sc.accept("->"):
            return Impl(left, self.formula())
        return left

    def disj(self):
        left = self.conj()
        while True:
            if self.sc.accept_word("orA"):
                left = FOp("orA", (left, self.conj()))
            elif self.sc.accept_word("or"):
                left = Disj(left, self.conj())
            else:
                return left

    def conj(self):
        left = self.unary()
        while True:
            if self.sc.accept_word("andA"):
                left = FOp("andA", (left, self.unary()))
            elif self.sc.accept_word("and"):
                left = Conj(left, self.unary())
            elif self.sc.accept("<-A"):
                left = FOp("larrowA", (left, self.unary()))
            else:
                return left

    def unary(self):
        sc = self.sc
        if sc.accept_word("not"):
            return Not(self.unary())
        if sc.accept("~A"):
            return FOp("negA", (self.unary(),))
        if sc.accept_word("dia"):
            return Dia(self.unary())
        if sc.accept_word("dia_d"):
            return DiaD(self.mv_unary())
        if sc.accept_word("box_gamma") or sc.accept_word("box"):
            return BoxGamma(self.mv_unary())
        if sc.peek_word("E"):
            sc.accept_word("E")
            sc.expect("(")
            inner = self.mv_formula()
            sc.expect(")")
            return Encap(inner)
        if sc.accept("["):
            value = _value(sc, self.lattice)
            sc.expect("]")
            return MAtom(value, _atom(sc))
        if sc.accept("("):
            inner = self.formula()
            sc.expect(")")
            return inner
        return self.leaf()

    def leaf(self):
        sc = self.sc
        start = sc.pos
        name = sc.match(_PRED)
        if name in ("=", "<=") and sc.accept("_F"):
            name += "_F"
        if name is None or name in _KEYWORDS:
            raise sc.error(f"expected a formula, found {sc.snippet()!r}", start)
        if name.endswith("_F") and len(name) > 2:
            sc.expect("(")
            parts = []
            while True:
                if sc.peek(")"):
                    break
                # the last argument is a value; terms are identifiers, which
                # the value lexer also accepts, so read values and split later
                parts.append(_value(sc, None, allow_error=True))
                if not sc.accept(","):
                    break
            sc.expect(")")
            if not parts:
                raise sc.error("flattened atom needs a value argument", start)
            value = parts[-1]
            if self.lattice is not None and value != ERROR_MARK:
                try:
                    value = self.lattice.lookup(value)
                except LatticeError as exc:
                    raise sc.error(str(exc), start) from None
            return FAtom(name[:-2], tuple(parts[:-1]), value)
        return Atom(name, _terms(sc))

    # many-valued level

    def mv_formula(self):
        left = self.mv_disj()
        if self.sc.accept("->"):
            return Op("imp", (left, self.mv_formula()))
        if self.sc.accept("<-"):
            return Op("imp", (self.mv_formula(), left))
        return left

    def mv_disj(self):
        left = self.mv_conj()
        while self.sc.accept_word("or"):
            left = Op("or", (left, self.mv_conj()))
        return left

    def mv_conj(self):
        left = self.mv_unary()
        while self.sc.accept_word("and"):
            left = Op("and", (left, self.mv_unary()))
        return left

    def mv_unary(self):
        sc = self.sc
        if sc.accept("~"):
            return Op("neg", (self.mv_unary(),))
        if sc.accept("@"):
            return Const(_value(sc, self.lattice))
        if sc.accept("$"):
            name = sc.match(_IDENT)
            if name is None:
                raise sc.error("expected a connective name after '$'")
            sc.expect("(")
            args = [self.mv_formula()]
            while sc.accept(","):
                args.append(self.mv_formula())
            sc.expect(")")
            if self.lattice is not None:
                arity = self.lattice.connectives.get(name)
                if arity is None:
                    raise sc.error(f"lattice {self.lattice.name} has no connective {name!r}")
                if arity != len(args):
                    raise sc.error(f"{name} expects {arity} arguments, got {len(args)}")
            return Op(name, tuple(args))
        if sc.accept("("):
            inner = self.mv_formula()
            sc.expect(")")
            return inner
        start = sc.pos
        name = sc.match(_PRED)
        if name is None or name in _KEYWORDS:
            raise sc.error(f"expected an atom, found {sc.snippet()!r}", start)
        return Atom(name, _terms(sc))


def parse_formula(text: str, lattice: LatticeSpec | None = None):
    """Parse a formula of any of the three families."""
    p = _FormulaParser(text, lattice)
    return p.done(p.formula())


def parse_mv_formula(text: str, lattice: LatticeSpec | None = None):
    p = _FormulaParser(text, lattice)
    return p.done(p.mv_formula())
