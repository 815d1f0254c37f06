"""Catalog the folded root systems reachable from the simply-laced types.

For each admissible pair (absolute type, twisting order) the atlas prints
the relative type, the half-norm pattern of its simple roots, which relative
roots are multipliable, and the admissible level progressions over one root
of each kind.
"""

from affsch.twist import build_twisted, level_set

FOLDINGS = (
    ("A2", 2),
    ("A3", 2),
    ("A4", 2),
    ("A5", 2),
    ("A6", 2),
    ("A7", 2),
    ("D4", 2),
    ("D5", 2),
    ("E6", 2),
    ("D4", 3),
)


def main() -> None:
    print(f"{'input':>8} {'relative':>9} {'half-norms':>12}  multipliable roots")
    for absolute, order in FOLDINGS:
        datum = build_twisted(absolute, order)
        sigma = datum.echelonnage
        print(
            f"{order}x{absolute:>5} {sigma.label:>9} {str(sigma.half_norms):>12}"
            f"  {list(datum.multipliable_roots) or '-'}"
        )

    # Levels over a root come in arithmetic progressions; the step widens on
    # roots with short orbits and splits in two on multipliable ones.
    print("\nlevel progressions over the simple roots of the folded A4:")
    datum = build_twisted("A4", 2)
    sigma = datum.echelonnage
    for index in range(sigma.rank):
        root = tuple(1 if j == index else 0 for j in range(sigma.rank))
        for progression in level_set(datum, root):
            values = [progression.offset + k * progression.step for k in range(3)]
            shown = ", ".join(str(v) for v in values)
            print(f"  alpha_{index} {root} [{progression.case}]: {shown}, ...")

    print("\ntriality fold of D4, simple roots upstairs:")
    triality = build_twisted("D4", 3)
    for index, image in enumerate(triality.sigma_simple_images):
        print(f"  relative alpha_{index} lifts to absolute coefficients {image}")


if __name__ == "__main__":
    main()
