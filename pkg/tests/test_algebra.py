"""Bracket table, element arithmetic and the Lie axioms."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from svalgebra import (
    AlgebraConfig,
    Element,
    ZERO,
    bracket,
    bracket_basis,
    format_element,
    gen,
    grade,
    jacobi_defect,
    validate_generator,
)

CFG0 = AlgebraConfig(Fraction(0))
CFG_HALF = AlgebraConfig(Fraction(1, 2))


def L(m):
    return gen("L", m)


def Y(m):
    return gen("Y", m)


def M(m):
    return gen("M", m)


class TestBracketTable:
    def test_ll(self):
        assert bracket_basis(L(2), L(3), CFG0) == Element.monomial(L(5), Fraction(-1))
        assert bracket_basis(L(3), L(2), CFG0) == Element.monomial(L(5), Fraction(1))
        assert bracket_basis(L(1), L(1), CFG0) == ZERO

    def test_ly(self):
        # coefficient m/2 - n
        assert bracket_basis(L(4), Y(1), CFG0) == Element.monomial(Y(5), Fraction(1))
        assert bracket_basis(L(2), Y(1), CFG0) == ZERO

    def test_ly_half(self):
        v = bracket_basis(L(1), Y(Fraction(1, 2)), CFG_HALF)
        assert v == ZERO  # 1/2 - 1/2
        v = bracket_basis(L(3), Y(Fraction(1, 2)), CFG_HALF)
        assert v == Element.monomial(Y(Fraction(7, 2)), Fraction(1))

    def test_lm(self):
        assert bracket_basis(L(1), M(2), CFG0) == Element.monomial(M(3), Fraction(-2))
        assert bracket_basis(L(5), M(0), CFG0) == ZERO

    def test_yy(self):
        assert bracket_basis(Y(1), Y(3), CFG0) == Element.monomial(M(4), Fraction(-2))
        assert bracket_basis(Y(2), Y(2), CFG0) == ZERO

    def test_abelian_part(self):
        assert bracket_basis(Y(1), M(2), CFG0) == ZERO
        assert bracket_basis(M(1), M(2), CFG0) == ZERO

    def test_m0_central(self):
        for g in (L(3), Y(-1), M(2), M(0)):
            assert bracket_basis(M(0), g, CFG0) == ZERO
            assert bracket_basis(g, M(0), CFG0) == ZERO

    def test_cache_is_parity_independent(self):
        # structure constants never mention the parity offset, so both
        # configurations share one cached table
        a = bracket_basis(L(2), L(3), CFG0)
        b = bracket_basis(L(2), L(3), CFG_HALF)
        assert a is b


class TestGenerators:
    def test_interning(self):
        assert gen("L", 2) is gen("L", Fraction(2))

    def test_ordering_key(self):
        fams = [L(0), Y(0), M(0)]
        assert sorted(fams, key=lambda g: g.sort_key()) == fams

    def test_grade(self):
        assert grade(L(-4)) == -4
        assert grade(Y(Fraction(1, 2))) == Fraction(1, 2)

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            gen("X", 0)

    def test_parity_validation(self):
        validate_generator(Y(1), CFG0)
        validate_generator(Y(Fraction(1, 2)), CFG_HALF)
        with pytest.raises(ValueError):
            validate_generator(Y(Fraction(1, 2)), CFG0)
        with pytest.raises(ValueError):
            validate_generator(Y(1), CFG_HALF)
        with pytest.raises(ValueError):
            validate_generator(L(Fraction(1, 2)), CFG0)


class TestElement:
    def test_cancellation(self):
        e = Element.monomial(L(2)) - Element.monomial(L(2))
        assert e == ZERO
        assert not e.terms

    def test_scaling(self):
        e = Element.monomial(L(1), Fraction(3))
        assert e.scaled(Fraction(0)) == ZERO
        assert (Fraction(2) * e).coefficient(L(1)) == 6

    def test_format_roundtrip_shape(self):
        e = Element({L(2): Fraction(3), Y(-1): Fraction(1, 2), M(0): Fraction(-1)})
        assert format_element(e) == "3*L[2] + 1/2*Y[-1] - 1*M[0]"

    def test_zero_format(self):
        assert format_element(ZERO) == "0"


_indices = st.integers(min_value=-4, max_value=4)
_coeffs = st.fractions(min_value=-5, max_value=5).filter(lambda q: q != 0)


@st.composite
def elements(draw):
    n = draw(st.integers(min_value=0, max_value=4))
    e = ZERO
    for _ in range(n):
        fam = draw(st.sampled_from("LYM"))
        e = e + Element.monomial(gen(fam, draw(_indices)), draw(_coeffs))
    return e


@given(elements(), elements())
@settings(max_examples=60, deadline=None)
def test_bracket_antisymmetric(x, y):
    assert bracket(x, y, CFG0) == -bracket(y, x, CFG0)


@given(elements(), elements(), elements())
@settings(max_examples=60, deadline=None)
def test_jacobi_identity(x, y, z):
    assert jacobi_defect(x, y, z, CFG0) == ZERO


@given(elements(), elements(), elements(), _coeffs)
@settings(max_examples=60, deadline=None)
def test_bracket_bilinear(x, y, z, c):
    left = bracket(x + y.scaled(c), z, CFG0)
    assert left == bracket(x, z, CFG0) + bracket(y, z, CFG0).scaled(c)


@given(elements())
@settings(max_examples=60, deadline=None)
def test_grading(x):
    """[L_0, x] collects -grade per term: checks the index bookkeeping."""
    e0 = Element.monomial(L(0))
    expected = Element({g: -grade(g) * c for g, c in x.terms.items() if grade(g) * c != 0})
    assert bracket(e0, x, CFG0) == expected
