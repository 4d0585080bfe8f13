"""Consequence between many-valued clauses as a statement about boxes,
and designated values as a statement about diamonds.

Run with ``python3 demos/consequence.py``.
"""

from mvred.abstract_reduction import (
    Matrix, ValuationSpace, consequence, matrix_model, models_of, suszko_model, verify_matrix,
)
from mvred.generate import enumerate_formulas
from mvred.lattice import builtin_lattice
from mvred.syntax import Atom, BoxGamma, Const, DiaD, Op, format_formula

B = builtin_lattice("belnap4")
p, q = Atom("p"), Atom("q")


def clause(body, head):
    return Op("imp", (body, head))


def main():
    vs = ValuationSpace([p, q], B)
    gamma = [clause(Const("bot"), p), clause(p, q)]
    models = models_of(gamma, vs)
    print(f"{len(vs)} valuations, {len(models)} satisfy the program:")
    for i in models:
        print("   ", {str(a): x for a, x in vs[i].items()})

    M = suszko_model(gamma, vs)
    for phi in (clause(Const("bot"), q), clause(Const("t"), q), clause(p, q), clause(q, p)):
        boxed = M.is_true(BoxGamma(phi))
        print(f"{format_formula(phi):>12}: consequence={consequence(gamma, phi, vs)}, box={boxed}")

    # designated truth: Moore's reading keeps t and top
    D = Matrix(B, ["t", "top"])
    v = {p: "top", q: "f"}
    N = matrix_model(D, v)
    for phi in (p, q, Op("or", (p, q)), Op("neg", (p,))):
        print(f"dia_d {format_formula(phi)} true: {N.is_true(DiaD(phi))}")
    print(verify_matrix(D, v, enumerate_formulas([p, q], 2)).to_json())

    # placing atoms only at designated worlds loses q and breaks the equivalence
    print(verify_matrix(D, v, enumerate_formulas([p, q], 2), designated_only=True).to_json())


if __name__ == "__main__":
    main()
