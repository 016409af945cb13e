"""Window slicing and defect reports."""

from fractions import Fraction

import pytest

from svalgebra import AlgebraConfig, Element, Window, gen, lie_axiom_defects
from svalgebra.windows import DefectReport

CFG0 = AlgebraConfig(Fraction(0))
CFG_HALF = AlgebraConfig(Fraction(1, 2))


def test_generator_counts():
    assert len(Window(3).generators(CFG0)) == 21
    # half-integer middle family drops one slot per window
    assert len(Window(3).generators(CFG_HALF)) == 20
    assert len(Window(8).generators(CFG0)) == 51


def test_generator_order():
    gens = Window(1).generators(CFG0)
    names = [str(g) for g in gens]
    assert names == ["L[-1]", "L[0]", "L[1]", "Y[-1]", "Y[0]", "Y[1]", "M[-1]", "M[0]", "M[1]"]


def test_half_parity_indices():
    ys = [g for g in Window(2).generators(CFG_HALF) if g.family == "Y"]
    assert [g.index for g in ys] == [Fraction(-3, 2), Fraction(-1, 2), Fraction(1, 2), Fraction(3, 2)]


def test_interior():
    w = Window(5)
    assert w.interior_radius == 2
    assert w.is_interior(gen("L", -2))
    assert not w.is_interior(gen("L", 3))
    assert len(w.interior_generators(CFG0)) == 15


def test_contains_element():
    w = Window(2)
    inside = Element.monomial(gen("L", 2))
    outside = inside + Element.monomial(gen("M", 3))
    assert w.contains_element(inside)
    assert not w.contains_element(outside)


def test_radius_guard():
    with pytest.raises(ValueError):
        Window(0)


def test_report_cap():
    rep = DefectReport(max_recorded=2)
    for i in range(5):
        rep.record((gen("L", i),), Element.monomial(gen("L", 0)), "r")
    assert rep.total == 5
    assert len(rep.violations) == 2
    assert "first 2 recorded" in rep.summary()


def test_report_empty_summary():
    rep = DefectReport()
    rep.tick(7)
    assert rep.empty
    assert rep.summary() == "ok (7 instances checked)"


def test_violation_describe():
    rep = DefectReport()
    rep.record((gen("L", 1), gen("Y", 2)), Element.monomial(gen("M", 3), Fraction(1, 2)), "leibniz")
    assert rep.violations[0].describe() == "leibniz at (L[1], Y[2]): defect 1/2*M[3]"


@pytest.mark.parametrize("eps", [Fraction(0), Fraction(1, 2)])
def test_lie_axioms_small_window(eps):
    rep = lie_axiom_defects(Window(4), AlgebraConfig(eps))
    assert rep.empty
    assert rep.checked > 0
