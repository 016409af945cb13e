"""Why no commutative product of the classified shape survives the axioms.

Every candidate product comes from a classified symmetric biderivation:
a multiple of the bracket plus central shifts.  The sweep realizes a grid
of such forms on a window, checks the three product axioms, and replays a
closed-form witness instance for each nontrivial form.  A brute-force
enclosure on a small window independently confirms that only the zero
product satisfies the windowed axiom system.

Run with:  python3 demos/product_triviality.py
"""

from fractions import Fraction

from svalgebra import (
    AlgebraConfig,
    BiderivationForm,
    Window,
    materialize_product,
    postlie_axiom_defects,
    triviality_witness,
    verify_triviality_theorem,
)


def main() -> None:
    cfg = AlgebraConfig(Fraction(0))

    print("One witness, by hand: the weighted product x.y = [x, y]")
    form = BiderivationForm(1, {})
    wit = triviality_witness(form, cfg)
    print(f"  {wit.describe()}")

    w = Window(6)
    rep = postlie_axiom_defects(materialize_product(form, w, cfg), w, cfg)
    print(f"  full checker on the radius-6 window: {rep.summary()}")
    print(f"  first recorded violation: {rep.violations[0].describe()}")

    print()
    print("The sweep: a grid of classified forms, each with its witness")
    report = verify_triviality_theorem(Window(5), cfg, brute=Window(3))
    for line in report.summary().splitlines():
        print(f"  {line}")

    print()
    print("Brute-force enclosure verdict:")
    print(f"  {report.brute.verdict()}")


if __name__ == "__main__":
    main()
