import random

import pytest
from hypothesis import given, settings, strategies as st

from mvred.errors import GroundingError, ParseError
from mvred.generate import random_flat_formula, random_matom_formula, random_mv_formula, random_program
from mvred.lattice import builtin_lattice
from mvred.syntax import (
    Atom, BoxGamma, Dia, DiaD, Encap, FAtom, FOp, Literal, MAtom, Op, format_formula,
    format_program, ground, parse_formula, parse_program,
)
from mvred.syntax.ast import variables

B = builtin_lattice("belnap4")


def prog(body, lattice="belnap4"):
    return parse_program(f"lattice {lattice}.\n{body}")


def test_fact():
    P = prog("p(a) <- @t.")
    (r,) = P.rules
    assert r.head == Atom("p", ("a",)) and r.annotation == "t" and r.is_fact


def test_rule_one_block():
    (r,) = prog("p(X) :- r(X), ~s(X).").rules
    assert r.body == ((Literal(Atom("r", ("X",))), Literal(Atom("s", ("X",)), True)),)


def test_rule_two_blocks():
    (r,) = prog("p(X) :- r(X); q(X), ~s(X).").rules
    assert len(r.body) == 2 and len(r.body[1]) == 2


def test_values_resolved_against_lattice():
    assert prog("p <- @⊤.").rules[0].annotation == "top"
    assert prog("p <- @0.50.", "fuzzy:5").rules[0].annotation == "0.5"
    assert prog("p <- @[0.25, 0.75].", "interval:5").rules[0].annotation == "[0.25,0.75]"
    assert prog("p <- @([1,1],[0,0]).", "confidence:2").rules[0].annotation == "([1,1],[0,0])"


def test_lattice_override():
    P = parse_program("lattice belnap4.\np <- @1.", lattice=builtin_lattice("fuzzy_chain", 3))
    assert P.lattice.name == "fuzzy:3" and P.rules[0].annotation == "1"


@pytest.mark.parametrize("src,fragment", [
    ("p(a) <- @maybe.", "unknown element"),
    ("p(a) <- @t.\np(a,b) <- @t.", "arity"),
    ("p(X) <- @t.", "variable in fact"),
    ("p(a) :- ~~q(a).", "nested negation"),
    ("p(a) :- q(a)", "expected '.'"),
    ("p(a) q(a).", "expected '<-' or ':-'"),
])
def test_parse_errors(src, fragment):
    with pytest.raises(ParseError) as info:
        prog(src)
    assert fragment in str(info.value)
    assert info.value.line == src.count("\n") + 2


def test_error_column():
    with pytest.raises(ParseError) as info:
        parse_program("lattice belnap4.\np(a) <- @t.\n  q(a) <- @zz.")
    assert (info.value.line, info.value.col) == (3, 12)


def test_missing_lattice():
    with pytest.raises(ParseError):
        parse_program("p(a) <- @t.")


def test_comments_ignored():
    P = prog("% header\np(a) <- @t. % trailing\n")
    assert len(P.rules) == 1


def test_ground_substitution():
    P = prog("p(X) :- r(X).\nr(a) <- @t.\nr(b) <- @f.")
    G = ground(P)
    inst = [r for r in G.rules if not r.is_fact]
    assert [r.head for r in inst] == [Atom("p", ("a",)), Atom("p", ("b",))]
    assert inst[1].body[0][0].atom == Atom("r", ("b",))
    assert G.is_ground()


def test_ground_counts_and_idempotence():
    P = prog("q(X, Y) :- p(X), ~p(Y).\np(a) <- @t.\np(b) <- @t.\np(c) <- @f.")
    G = ground(P)
    assert len([r for r in G.rules if not r.is_fact]) == 9
    assert ground(G) == G
    assert [r for r in G.rules if r.is_fact] == [r for r in P.rules if r.is_fact]


def test_ground_without_constants():
    with pytest.raises(GroundingError):
        ground(prog("p(X) :- q(X)."))


def test_herbrand_base():
    P = prog("p(a) <- @t.\nq(X, Y) :- p(X), p(Y).\nr <- @f.")
    H = [str(a) for a in P.herbrand_base()]
    assert H == ["p(a)", "q(a,a)", "r"]


@pytest.mark.parametrize("text,expected", [
    ("[top] p(a)", MAtom("top", Atom("p", ("a",)))),
    ("[⊤]p(a)", MAtom("top", Atom("p", ("a",)))),
    ("dia (E(p(a)) andA E(q(a)))",
     Dia(FOp("andA", (Encap(Atom("p", ("a",))), Encap(Atom("q", ("a",))))))),
    ("box_gamma p(a)", BoxGamma(Atom("p", ("a",)))),
    ("box p(a)", BoxGamma(Atom("p", ("a",)))),
    ("dia p_F(a, t)", Dia(FAtom("p", ("a",), "t"))),
    ("dia_d ~p", DiaD(Op("neg", (Atom("p"),)))),
    ("E(p(a) <- r(a))", Encap(Op("imp", (Atom("r", ("a",)), Atom("p", ("a",)))))),
    ("p_F(a, b, e)", FAtom("p", ("a", "b"), "e")),
])
def test_parse_formula(text, expected):
    assert parse_formula(text, B) == expected


def test_formula_precedence():
    f = parse_formula("[t]p or [f]p and [t]q -> [t]r", B)
    assert format_formula(f) == "(([t]p or ([f]p and [t]q)) -> [t]r)"


@pytest.mark.parametrize("bad", ["[t] P(a)", "and p", "E(p(a)", "[maybe]p", "dia", "p(a) q"])
def test_formula_errors(bad):
    with pytest.raises(ParseError):
        parse_formula(bad, B)


def test_double_negation_allowed_in_formulas():
    assert parse_formula("dia_d ~~p", B) == DiaD(Op("neg", (Op("neg", (Atom("p"),)),)))


def test_extra_connective_syntax():
    f = parse_formula("E($otimes(p, q))", B)
    assert f == Encap(Op("otimes", (Atom("p"), Atom("q"))))
    with pytest.raises(ParseError):
        parse_formula("dia_d $otimes(p)", B)
    with pytest.raises(ParseError):
        parse_formula("dia_d $nosuch(p)", B)


LATTICES = ["belnap4", "fuzzy:5", "interval:3", "confidence:2"]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(LATTICES))
def test_program_round_trip(seed, name):
    from mvred.lattice import lattice_from_selector

    P = random_program(random.Random(seed), lattice_from_selector(name))
    text = format_program(P)
    Q = parse_program(text)
    assert Q.rules == P.rules and Q.lattice == P.lattice
    assert format_program(Q) == text


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_formula_round_trip(seed):
    rng = random.Random(seed)
    atoms = [Atom("p", ("a",)), Atom("q"), Atom("r", ("a", "b"))]
    for phi in (random_matom_formula(rng, atoms, B, 4), random_flat_formula(rng, atoms, B, 3),
                DiaD(random_mv_formula(rng, atoms, B, 3, constants=True)),
                BoxGamma(random_mv_formula(rng, atoms, B, 3, ops=("neg", "and", "otimes", "mu")))):
        assert parse_formula(format_formula(phi), B) == phi


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_ground_instance_count(seed):
    P = random_program(random.Random(seed), B)
    G = ground(P)
    want = sum(len(P.constants) ** len(variables_of(r)) for r in P.rules)
    assert len(G.rules) == want
    assert ground(G) == G


def variables_of(rule):
    seen = []
    for a in [rule.head, *(lit.atom for lit in rule.literals())]:
        for v in variables(a):
            if v not in seen:
                seen.append(v)
    return seen
