import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from mvred.errors import EvaluationError, StratificationError
from mvred.generate import random_program
from mvred.lattice import builtin_lattice, lattice_from_selector
from mvred.semantics import Interpretation, compute_model, satisfies_rule, stratify, valuation
from mvred.syntax import Atom, Const, Op, ground, parse_mv_formula, parse_program

B = builtin_lattice("belnap4")
F5 = builtin_lattice("fuzzy_chain", 5)
p, q = Atom("p"), Atom("q")


def model(src, lattice="belnap4"):
    return compute_model(parse_program(f"lattice {lattice}.\n{src}"))


def test_valuation_examples():
    I = Interpretation(B, {p: "t", q: "bot"})
    assert valuation(I, Op("and", (p, q))) == "bot"
    assert valuation(I, p) == "t"
    J = Interpretation(F5, {p: "0.25"})
    assert valuation(J, Op("neg", (p,))) == "0.75"
    assert valuation(I, Op("otimes", (p, Const("f")))) == "bot"


def test_valuation_unknown_atom():
    with pytest.raises(EvaluationError):
        valuation(Interpretation(B, {p: "t"}), q)


def test_satisfies_rule_examples():
    I = Interpretation(B, {Atom("p", ("a",)): "t"})
    (fact,) = parse_program("lattice belnap4.\np(a) <- @t.").rules
    assert satisfies_rule(I, fact)
    P = parse_program("lattice belnap4.\np(a) :- r(a).")
    J = Interpretation(B, {Atom("p", ("a",)): "f", Atom("r", ("a",)): "top"})
    assert not satisfies_rule(J, P.rules[0])
    for v in B.carrier:
        K = Interpretation(B, {Atom("p", ("a",)): v, Atom("r", ("a",)): "f"})
        assert satisfies_rule(K, P.rules[0])


def test_model_examples():
    assert model("p(a) <- @t.").to_json() == {"p(a)": "t"}
    assert model("r(a) <- @top.\np(X) :- r(X).")[Atom("p", ("a",))] == "top"
    assert model("r(a) <- @t.\np(X) :- ~r(X).")[Atom("p", ("a",))] == "f"


def test_unmentioned_atoms_are_bottom():
    I = model("p(a) <- @t.\nq(b) :- p(b).")
    assert I[Atom("p", ("b",))] == "f" and I[Atom("q", ("a",))] == "f"


def test_duplicate_facts_join():
    assert model("p <- @top.\np <- @bot.")[p] == "t"


def test_non_stratified_rejected():
    with pytest.raises(StratificationError):
        model("p :- ~q.\nq :- ~p.")
    with pytest.raises(StratificationError):
        model("p :- ~p.")


def test_positive_recursion():
    I = model("p(a) <- @0.5.\np(a) :- q(a).\nq(a) :- p(a), r(a).\nr(a) <- @1.", "fuzzy:5")
    assert I.to_json() == {"p(a)": "0.5", "q(a)": "0.5", "r(a)": "1"}


def test_strata_order():
    P = ground(parse_program("lattice belnap4.\nc :- ~b.\nb :- ~a.\na <- @t."))
    order = [str(s[0]) for s in stratify(P)]
    assert order.index("a") < order.index("b") < order.index("c")


def test_dump_formats():
    I = model("q(b) <- @t.\nq(a) <- @top.")
    assert I.dump_text() == "q(a) = top\nq(b) = t\n"
    assert list(I.to_json()) == ["q(a)", "q(b)"]


# -- brute-force oracle for small programs ------------------------------------


def least_model_brute(P):
    """Smallest satisfying interpretation among all of W^H (pointwise order)."""
    G = ground(P)
    H = G.herbrand_base()
    L = G.lattice
    models = []
    for combo in product(L.carrier, repeat=len(H)):
        I = Interpretation(L, dict(zip(H, combo)), H)
        if all(satisfies_rule(I, r) for r in G.rules):
            models.append(I)
    return models


def test_least_model_matches_brute_force_positive():
    # with no negation the least model is the pointwise least of all models
    for seed in range(25):
        P = random_program(random.Random(seed), B, max_consts=1)
        P = parse_program(
            "lattice belnap4.\n" + "\n".join(
                line.replace("~", "") for line in str_rules(P)))
        if len(P.herbrand_base()) > 4:
            continue
        I = compute_model(P)
        models = least_model_brute(P)
        assert I in models
        assert all(I.leq(M) for M in models)


def str_rules(P):
    from mvred.syntax import format_rule

    return [format_rule(r) for r in P.rules]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["belnap4", "fuzzy:5", "interval:3"]))
def test_model_satisfies_rules_and_is_minimal(seed, name):
    L = lattice_from_selector(name)
    P = ground(random_program(random.Random(seed), L, max_consts=2))
    I = compute_model(P)
    assert all(satisfies_rule(I, r) for r in P.rules)
    if len(I) * len(L) > 1000:
        return
    for atom, v in I.items():
        for lower in L.carrier:
            if lower != v and L.le(lower, v):
                J = I.with_value(atom, lower)
                assert not all(satisfies_rule(J, r) for r in P.rules), (atom, lower)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_iteration_is_monotone_and_bounded(seed):
    P = ground(random_program(random.Random(seed), F5))
    trace = []
    compute_model(P, trace)
    by_stratum = {}
    for k, snap in trace:
        by_stratum.setdefault(k, []).append(snap)
    for snaps in by_stratum.values():
        for a, b in zip(snaps, snaps[1:]):
            assert all(F5.le(a[x], b[x]) for x in a)
        size = len(snaps[0])
        assert len(snaps) <= size * F5.height + 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_two_valued_agrees_with_classical(seed):
    rng = random.Random(seed)
    P = random_program(rng, B)
    src = "\n".join(line.replace("~", "") for line in str_rules(P))
    src = src.replace("@top", "@t").replace("@bot", "@f")
    G = ground(parse_program("lattice belnap4.\n" + src))
    I = compute_model(G)
    # classical least model of the definite program by naive forward chaining
    true = set()
    changed = True
    while changed:
        changed = False
        for r in G.rules:
            if r.head in true:
                continue
            fire = r.annotation == "t" if r.is_fact else any(
                all(l.atom in true for l in block) for block in r.body)
            if fire:
                true.add(r.head)
                changed = True
    assert {a for a, v in I.items() if v == "t"} == true
    assert all(v in ("t", "f") for v in I.values())


def test_interpretation_rejects_foreign_atoms():
    with pytest.raises(EvaluationError):
        Interpretation(B, {p: "t"}, base=[q])


def test_parse_mv_formula_valuation():
    I = Interpretation(B, {p: "top", q: "bot"})
    assert valuation(I, parse_mv_formula("p and q", B)) == "f"
    assert valuation(I, parse_mv_formula("p or q", B)) == "t"
    assert valuation(I, parse_mv_formula("q <- p", B)) == valuation(I, Op("imp", (p, q)))
