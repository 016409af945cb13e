"""Shared fixtures and the seeded expression corpus.

The expensive window classifications are session-scoped so the unit tests
and the acceptance tests reuse one computation.
"""

import random
from fractions import Fraction

import pytest

from svalgebra import (
    AlgebraConfig,
    Element,
    Window,
    classify_biderivations,
    classify_derivations,
    gen,
)


def random_corpus_element(rng: random.Random, cfg: AlgebraConfig) -> Element:
    """One random window element for printer/parser round-trip corpora."""
    terms = {}
    for _ in range(rng.randint(1, 4)):
        fam = rng.choice("LYM")
        idx = Fraction(rng.randint(-6, 6))
        if fam == "Y":
            idx += cfg.epsilon
        coeff = Fraction(rng.choice([c for c in range(-9, 10) if c]), rng.randint(1, 9))
        g = gen(fam, idx)
        terms[g] = terms.get(g, Fraction(0)) + coeff
    return Element(terms)


@pytest.fixture(scope="session")
def cfg0():
    return AlgebraConfig(Fraction(0))


@pytest.fixture(scope="session")
def cfg_half():
    return AlgebraConfig(Fraction(1, 2))


@pytest.fixture(scope="session")
def derivations_n4(cfg0):
    return classify_derivations(Window(4), cfg0)


@pytest.fixture(scope="session")
def biderivations_n3(cfg0):
    # the big one: ~5s of exact elimination
    return classify_biderivations(Window(3), cfg0)
