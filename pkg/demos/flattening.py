"""Truth values as an extra argument: the flattened Kripke model of a
fuzzy program, and the difference the implication filter makes.

Run with ``python3 demos/flattening.py``.
"""

from mvred.modal_flatten import build_kripke_flat, flatten_program, reflect, verify_flat
from mvred.semantics import compute_model
from mvred.syntax import Atom, Dia, Encap, Op, format_formula, ground, parse_program

SOURCE = """
lattice fuzzy:5.
warm(x) <- @0.75.
humid(x) <- @0.5.
muggy(X) :- warm(X), humid(X).
"""


def main():
    program = ground(parse_program(SOURCE))
    I = compute_model(program)
    print(I.dump_text())

    print("flattened clauses")
    for line in flatten_program(program, I):
        print("   ", line)

    kappa = reflect(program, I)
    print("kappa(muggy, (x,)) =", kappa("muggy", ("x",)))
    print("kappa(muggy, (x, x)) =", kappa("muggy", ("x", "x")), "(arity misuse)")

    M = build_kripke_flat(program, I)
    warm, humid = Atom("warm", ("x",)), Atom("humid", ("x",))
    for phi in (Op("and", (warm, humid)), Op("or", (warm, humid)), Op("neg", (warm,))):
        print(f"|E({format_formula(phi)})| = {sorted(M.extent(Encap(phi)))}")

    # an implication whose body exceeds its head has no witness in the filtered relation
    clause = Op("imp", (warm, humid))
    full = build_kripke_flat(program, I, full_implication=True)
    print(f"filtered  |E({format_formula(clause)})| = {sorted(M.extent(Encap(clause)))}")
    print(f"full      |E({format_formula(clause)})| = {sorted(full.extent(Encap(clause)))}")
    print("dia E(...) under the full relation holds everywhere:",
          full.is_true(Dia(Encap(clause))))

    for mode in (True, False):
        print(verify_flat(program, I, full_implication=mode).to_json())


if __name__ == "__main__":
    main()
