"""Rediscover the derivation classification on a finite window.

The solver writes every Leibniz constraint a window can faithfully see as
an exact rational linear system and computes its nullspace.  Comparing
that kernel with the classified span (inner derivations plus the three
outer directions) on interior coordinates confirms the classification on
this window.

Run with:  python3 demos/rediscover_derivations.py
"""

from fractions import Fraction

from svalgebra import (
    AlgebraConfig,
    Element,
    Window,
    builtin_derivation,
    classify_derivations,
    decompose_derivation,
    gen,
    inner_derivation,
)


def main() -> None:
    cfg = AlgebraConfig(Fraction(0))
    w = Window(3)

    print(f"Solving the Leibniz system on the radius-{w.radius} window ...")
    dc = classify_derivations(w, cfg)
    print(f"  kernel dimension:            {dc.kernel_dimension}")
    print(f"  interior kernel dimension:   {dc.interior_kernel_dimension}")
    print(f"  interior classified span:    {dc.interior_predicted_dimension}")
    print(f"  classified span in kernel:   {dc.predicted_in_kernel}")
    print(f"  interior spans match:        {dc.interior_match}")
    print(f"  mutual membership:           {dc.mutual_membership}")

    print()
    print("Decomposing a mixed operator back into its classified parts")
    op = inner_derivation(Element.monomial(gen("L", 1), Fraction(2)), w, cfg)
    op = op + builtin_derivation("D1", w, cfg)
    op = op + builtin_derivation("D3", w, cfg).scaled(Fraction(-1, 2))
    dec = decompose_derivation(op, w, cfg)
    print(f"  inner part:  ad {dec.inner_part}")
    print(f"  outer parts: a={dec.a} (D1), b={dec.b} (D2), c={dec.c} (D3)")


if __name__ == "__main__":
    main()
