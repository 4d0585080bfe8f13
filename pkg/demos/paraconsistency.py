"""Contradictory evidence in Belnap's four-valued lattice, and what the
unary modal reduction makes of it.

Run with ``python3 demos/paraconsistency.py``.
"""

from mvred.modal_unary import build_kripke_unary, least_model, transform_unary, verify_invariance
from mvred.semantics import compute_model
from mvred.syntax import Atom, MAtom, ground, parse_program

# one report merges a "yes" and a "no" about p(a), so it arrives as top
SOURCE = """
lattice belnap4.
p(a) <- @top.
q(a) <- @t.
conflict(X) :- p(X), ~p(X).
safe(X) :- q(X).
"""


def main():
    program = ground(parse_program(SOURCE))
    I = compute_model(program)
    print("least model")
    print(I.dump_text())

    # conflict(a) = top while safe(a) = t: the contradiction stays local
    mp = transform_unary(program)
    print(f"unary transform: {len(mp.clauses)} positive clauses, e.g.")
    for clause in mp.clauses[:3]:
        print("   ", clause.format())

    M = build_kripke_unary(program, I)
    pa = Atom("p", ("a",))
    print("[top]p(a) true at every world:", M.is_true(MAtom("top", pa)))
    print("[t]safe(a) true at every world:", M.is_true(MAtom("t", Atom("safe", ("a",)))))

    print("least model of the positive program:")
    for m in sorted(least_model(mp), key=str):
        print(f"    [{m.value}]{m.atom}")
    print("invariance:", verify_invariance(program, I).to_json())


if __name__ == "__main__":
    main()
