"""Acceptance suite.  Every criterion is exact and runs under its own time limit;
the terminal summary prints one PASS/FAIL line per criterion."""

import random
import subprocess
import sys
from fractions import Fraction
from itertools import product
from pathlib import Path

import pytest

from mvred.abstract_reduction import (
    Matrix, ValuationSpace, program_clauses, verify_matrix, verify_suszko,
)
from mvred.generate import enumerate_formulas, random_program
from mvred.lattice import builtin_lattice, check_lattice
from mvred.modal_flatten import verify_corollary, verify_flat
from mvred.modal_unary import (
    ModalClause, build_kripke_unary, eval_modal, least_model, transform_unary, true_matoms,
    verify_invariance, verify_two_valued,
)
from mvred.semantics import compute_model
from mvred.syntax import Atom, Const, MAtom, Op, ground, parse_program

CORPUS = Path(__file__).resolve().parents[1] / "src" / "mvred" / "corpus"
B = builtin_lattice("belnap4")
F5 = builtin_lattice("fuzzy_chain", 5)


def load(name):
    path = CORPUS / name
    return ground(parse_program(path.read_text(), base_dir=path.parent))


def corpus_programs():
    return [load(p.name) for p in sorted(CORPUS.glob("*.mv"))]


def random_corpus():
    """50 Belnap programs and 20 over the five-element chain, fixed seeds."""
    out = [ground(random_program(random.Random(s), B, 4, 6, 2)) for s in range(50)]
    out += [ground(random_program(random.Random(1000 + s), F5, 4, 6, 2)) for s in range(20)]
    return out


@pytest.fixture(scope="module")
def programs():
    return random_corpus()


# ---------------------------------------------------------------------------


def test_criterion_01_belnap_tables(criterion):
    with criterion(1, "Belnap tables", 1.0):
        L = builtin_lattice("belnap4")
        assert L.meet("top", "bot") == "f"
        assert L.join("top", "bot") == "t"
        assert L.apply("otimes", "f", "t") == "bot"
        assert L.apply("oplus", "f", "t") == "top"
        assert [L.neg(x) for x in ("bot", "top", "t", "f")] == ["bot", "top", "f", "t"]
        assert all((L.apply("mu", x) == "t") == (x in ("top", "t")) for x in L.carrier)
        # full tables against the (told-true, told-false) pair encoding
        pair = {"f": (0, 1), "bot": (0, 0), "top": (1, 1), "t": (1, 0)}
        name = {v: k for k, v in pair.items()}
        for x, y in product(L.carrier, repeat=2):
            (a, b), (c, d) = pair[x], pair[y]
            assert L.meet(x, y) == name[(min(a, c), max(b, d))]
            assert L.join(x, y) == name[(max(a, c), min(b, d))]
            assert L.apply("otimes", x, y) == name[(min(a, c), min(b, d))]
            assert L.apply("oplus", x, y) == name[(max(a, c), max(b, d))]
        assert all(L.neg(x) == name[pair[x][::-1]] for x in L.carrier)


def test_criterion_02_lattice_axioms(criterion):
    with criterion(2, "lattice axioms and residuation", 10.0):
        specs = [builtin_lattice("belnap4")]
        specs += [builtin_lattice("fuzzy_chain", k) for k in range(2, 10)]
        specs += [builtin_lattice("interval", k) for k in range(2, 6)]
        specs += [builtin_lattice("confidence", k) for k in range(2, 4)]
        for L in specs:
            assert check_lattice(L) == [], L.name
            for a, b in product(L.carrier, repeat=2):
                sup = L.join_all(c for c in L.carrier if L.le(L.meet(c, a), b))
                assert L.implies(a, b) == sup, (L.name, a, b)
                assert (L.implies(a, b) == L.top) == L.le(a, b)
        # chain implication against exact rationals
        F9 = builtin_lattice("fuzzy_chain", 9)
        for a, b in product(F9.carrier, repeat=2):
            x, y = Fraction(a), Fraction(b)
            assert Fraction(F9.implies(a, b)) == (1 if x <= y else y)


def test_criterion_03_invariance(criterion):
    with criterion(3, "invariance on 70 random programs", 60.0):
        progs = random_corpus()
        assert len(progs) == 70
        for P in progs:
            I = compute_model(P)
            v = verify_invariance(P, I)
            assert v.passed, v.counterexample
            M = build_kripke_unary(P, I)
            assert true_matoms(M, I) == {MAtom(val, a) for a, val in I.items()}


def test_criterion_04_two_valuedness(criterion, programs):
    with criterion(4, "two-valued extents, 500 formulas per program", 60.0):
        for k, P in enumerate(programs):
            v = verify_two_valued(P, count=500, depth=4, seed=k)
            assert v.passed, v.counterexample


def test_criterion_05_flatten(criterion, programs):
    with criterion(5, "flatten correctness (full and verbatim)", 60.0):
        for P in programs + corpus_programs():
            I = compute_model(P)
            full = verify_flat(P, I, full_implication=True, samples=50)
            assert full.passed, full.counterexample
            verbatim = verify_flat(P, I, full_implication=False, samples=50)
            assert verbatim.passed, verbatim.counterexample


def test_criterion_06_corollary(criterion, programs):
    with criterion(6, "flat and unary atoms agree", 30.0):
        for P in programs + corpus_programs():
            I = compute_model(P)
            for full in (False, True):
                v = verify_corollary(P, I, full_implication=full)
                assert v.passed, v.counterexample


def depth2_clauses(H, L):
    """Every clause ``h <- b`` with ``h`` and ``b`` of depth at most one (constants allowed)."""
    parts = enumerate_formulas(H, 1) + [Const(c) for c in L.carrier]
    return [Op("imp", (b, h)) for h in parts for b in parts]


def small_belnap_programs():
    out = [P for P in corpus_programs()
           if P.lattice.name == "belnap4" and len(P.herbrand_base()) <= 3]
    seed = 0
    while len(out) < 16:
        P = ground(random_program(random.Random(5000 + seed), B, max_consts=1, max_arity=1))
        seed += 1
        if 1 <= len(P.herbrand_base()) <= 3:
            out.append(P)
    return out


def test_criterion_07_suszko(criterion):
    with criterion(7, "Suszko lemma, |H| <= 3, depth-2 clauses", 30.0):
        for P in small_belnap_programs():
            H = P.herbrand_base()
            vs = ValuationSpace(H, B)
            assert len(vs) <= 64
            gamma = program_clauses(P)
            v = verify_suszko(gamma, gamma + depth2_clauses(H, B), vs)
            assert v.passed, v.counterexample


def test_criterion_08_matrix(criterion):
    with criterion(8, "matrix lemma for three designated sets", 10.0):
        configs = [(B, ["t", "top"]), (B, ["t"]), (F5, ["1"])]
        two = [Atom("p"), Atom("q")]
        three = [Atom("p"), Atom("q"), Atom("r")]
        suite2, suite3 = enumerate_formulas(two, 2), enumerate_formulas(three, 2)
        rng = random.Random(8)
        for L, D in configs:
            M = Matrix(L, D)
            # every valuation of a two-atom base
            for combo in product(L.carrier, repeat=2):
                v = verify_matrix(M, dict(zip(two, combo)), suite2)
                assert v.passed, v.counterexample
            # three-atom bases: corpus least models over their own atoms
            for P in corpus_programs():
                H = P.herbrand_base()
                if P.lattice == L and len(H) == 3:
                    v = verify_matrix(M, dict(compute_model(P).items()), enumerate_formulas(H, 2))
                    assert v.passed, v.counterexample
            # and seeded valuations of p, q, r
            for _ in range(6):
                val = {a: rng.choice(L.carrier) for a in three}
                v = verify_matrix(M, val, suite3)
                assert v.passed, v.counterexample


def test_criterion_09_paraconsistency(criterion):
    with criterion(9, "paraconsistency witness", 1.0):
        P = load("paraconsistent.mv")
        I = compute_model(P)
        pa = Atom("p", ("a",))
        assert I[pa] == "top" and I[Atom("contra", ("a",))] == "top"
        M = build_kripke_unary(P, I)
        assert all(eval_modal(M, MAtom("top", pa), w) for w in M.worlds)
        # the reduced program is positive and has a model: S_T satisfies every clause
        mp = transform_unary(P)
        assert verify_invariance(P, I).passed
        s_t = {MAtom(v, a) for a, v in I.items()}
        assert all(c.head in s_t for c in mp.clauses if mp.body_true(c, s_t.__contains__))
        # add both classical readings of p(a) as facts; the least model keeps them
        # side by side and still does not contain every m-atom
        both = type(mp)(mp.lattice, mp.clauses + (ModalClause(MAtom("t", pa)),
                                                  ModalClause(MAtom("f", pa))))
        lm = least_model(both)
        assert {MAtom("t", pa), MAtom("f", pa), MAtom("top", pa)} <= lm
        everything = {MAtom(v, a) for a in I for v in B.carrier}
        assert lm < everything
        assert MAtom("f", Atom("believed", ("a",))) not in lm


def test_criterion_10_determinism(criterion):
    with criterion(10, "byte-identical verify runs", 120.0):
        cmd = [sys.executable, "-m", "mvred", "verify", str(CORPUS), "--suite", "all"]
        first = subprocess.run(cmd, capture_output=True, check=False)
        second = subprocess.run(cmd, capture_output=True, check=False)
        assert first.returncode == 0, first.stderr.decode()
        assert first.stdout == second.stdout and first.stdout
