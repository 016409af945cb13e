"""A first walk through the algebra: brackets, grading, window checks.

Run with:  python3 demos/bracket_tour.py
"""

from fractions import Fraction

from svalgebra import (
    AlgebraConfig,
    Element,
    Window,
    bracket,
    gen,
    jacobi_defect,
    lie_axiom_defects,
    parse_element,
)


def main() -> None:
    cfg = AlgebraConfig(Fraction(0))

    print("Basis brackets")
    for left, right in (("L[2]", "L[3]"), ("L[4]", "Y[1]"), ("L[1]", "M[-2]"),
                        ("Y[1]", "Y[3]"), ("Y[2]", "M[5]"), ("L[7]", "M[0]")):
        x = parse_element(left, cfg)
        y = parse_element(right, cfg)
        print(f"  [{left}, {right}] = {bracket(x, y, cfg)}")

    print()
    print("Compound elements work the same way")
    x = parse_element("L[1] + 2*Y[0] - 1/3*M[2]", cfg)
    y = parse_element("L[-1] - Y[1]", cfg)
    print(f"  x = {x}")
    print(f"  y = {y}")
    print(f"  [x, y] = {bracket(x, y, cfg)}")

    print()
    print("L[0] measures the grade: [L[0], Z_i] = -i Z_i for every family")
    for name in ("L[3]", "Y[-2]", "M[5]"):
        z = parse_element(name, cfg)
        print(f"  [L[0], {name}] = {bracket(parse_element('L[0]', cfg), z, cfg)}")

    print()
    print("A random Jacobi instance, then the exhaustive window check")
    a = Element.monomial(gen("L", 2))
    b = Element.monomial(gen("Y", -1))
    c = Element.monomial(gen("Y", 3))
    print(f"  jacobi defect at (L[2], Y[-1], Y[3]): {jacobi_defect(a, b, c, cfg)}")
    rep = lie_axiom_defects(Window(5), cfg)
    print(f"  radius-5 window: {rep.summary()}")

    print()
    print("The other parity keeps the same structure constants")
    cfg_half = AlgebraConfig(Fraction(1, 2))
    print(f"  [L[2], Y[1/2]] at epsilon=1/2: "
          f"{bracket(parse_element('L[2]', cfg_half), parse_element('Y[1/2]', cfg_half), cfg_half)}")


if __name__ == "__main__":
    main()
