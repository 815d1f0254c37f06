"""Inspect the graded pieces of a twisted loop algebra.

Each u-degree of the fixed subalgebra decomposes into lines indexed by
admissible relative levels over the folded roots.  The demo lists those
lines, cross-checks the count against the exact fixed-space dimension, and
replays the two rank-one conjugation identities in matrix form.
"""

from fractions import Fraction

from affsch.loopalg import (
    LoopVector,
    ad_exp,
    loop_context,
    make_e_a,
    matrix_realization,
    realize,
    root_lines_at_degree,
    verify_invariant_basis,
    verify_sl2_factorization,
)
from affsch.twist import sigma_affine_to_relative, twisted_datum


def graded_lines() -> None:
    datum = twisted_datum("3D4")
    print(f"{datum.label}: graded lines of the fixed subalgebra")
    for degree in range(-2, 3):
        lines = root_lines_at_degree(datum, degree)
        print(f"  degree {degree}: {len(lines)} root lines")
    report = verify_invariant_basis(datum, 4)
    print("  exact dimension check per degree:")
    for line in report.lines:
        mark = "ok" if line.ok else "MISMATCH"
        print(
            f"    n={line.degree}: fixed dim {line.fixed_dim},"
            f" lines {line.progression_count}, span rank {line.vector_rank} {mark}"
        )


def sl2_expansion() -> None:
    datum = twisted_datum("A1")
    ctx = loop_context(datum)
    lower = LoopVector.make(ctx.algebra, 1, [(("X", (-1,)), -1, 1)])
    raiser = LoopVector.make(ctx.algebra, 1, [(("X", (1,)), 0, 1)])
    conjugated = ad_exp(lower, raiser)
    print("\nsplit rank one: Ad(exp(Y u^-1)) X =")
    for (kind, index), degree, coeff in conjugated.terms:
        print(f"  {coeff.a} * {kind}{index} u^{degree}")
    table = matrix_realization("A1", 1)
    matrix = realize(conjugated, table)
    print("as a 2x2 loop matrix:")
    for i in range(2):
        row = [matrix.entry(i, j) for j in range(2)]
        cells = ["+".join(f"({c.a})u^{n}" for n, c in cell.items()) or "0" for cell in row]
        print(f"  [{cells[0]:>12} {cells[1]:>12}]")


def su3_conjugation() -> None:
    datum = twisted_datum("2A2")
    e_a = make_e_a(datum, sigma_affine_to_relative(datum, ((1,), -1)))
    e_b = make_e_a(datum, sigma_affine_to_relative(datum, ((-1,), 0)))
    table = matrix_realization("A2", 2)
    h = realize(e_b, table).exp_nilpotent()
    h_inv = realize(e_b.scale(-1), table).exp_nilpotent()
    conjugated = h @ realize(e_a, table) @ h_inv
    diagonal = [conjugated.entry(i, i).get(-1) for i in range(3)]
    print("\nramified SU(3): conjugated diagonal at u^-1 =", [
        str(c.a) if c else "0" for c in diagonal
    ])
    print("trace:", conjugated.trace() or 0)


def factorization() -> None:
    print("\nunipotent factorization through the nonnegative loop subgroup:")
    for k in (1, 2, 3):
        for x in (Fraction(1), Fraction(-2), Fraction(3, 2)):
            outcome = verify_sl2_factorization(k, x)
            print(f"  k={k}, x={x}: {'verified' if outcome else 'FAILED'}")


if __name__ == "__main__":
    graded_lines()
    sl2_expansion()
    su3_conjugation()
    factorization()
