from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfcat.scalar import (
    HALF,
    I,
    ONE,
    SQRT2,
    ZERO,
    ZETA8,
    ZETA16,
    CycScalar,
    LevelTooLow,
    embed_to_level,
    from_text,
    pretty,
    sqrt_int,
    to_text,
)

# independent oracle: complex floating point evaluation
def numeric(a: CycScalar) -> complex:
    n = 2**a.level
    return sum(float(c) * cmath.exp(2j * cmath.pi * k / n) for k, c in enumerate(a.coeffs))


fractions = st.fractions(min_value=-8, max_value=8, max_denominator=12)


@st.composite
def scalars(draw, max_level=4):
    level = draw(st.integers(1, max_level))
    width = 2 ** (level - 1)
    return CycScalar(draw(st.lists(fractions, min_size=width, max_size=width)), level)


def test_named_constants():
    assert I * I == -ONE
    assert ZETA8**2 == I
    assert ZETA16**2 == ZETA8
    assert ZETA8**8 == ONE and ZETA8**4 == -ONE
    assert SQRT2 * SQRT2 == CycScalar.rational(2)
    assert HALF + HALF == ONE


def test_sqrt_int():
    assert sqrt_int(8) == 2 * SQRT2
    assert sqrt_int(16) == CycScalar.rational(4)
    assert sqrt_int(3) is None


def test_roots_of_unity_match_numeric():
    for den in (2, 4, 8, 16):
        for k in range(den):
            z = CycScalar.root_of_unity(k, den)
            assert abs(numeric(z) - cmath.exp(2j * cmath.pi * k / den)) < 1e-12


def test_text_form_round_trip_and_pretty():
    a = CycScalar.rational(Fraction(3, 4)) + 2 * ZETA8
    assert from_text(to_text(a)) == a
    assert pretty(2 * SQRT2) == "2*sqrt2"
    assert pretty(SQRT2) == "sqrt2"
    assert pretty(-I) == "-i"
    assert pretty(CycScalar.rational(Fraction(-5, 3))) == "-5/3"


def test_embedding_levels():
    assert embed_to_level(I, 4) == I
    assert (I + ZETA16).level == 4
    with pytest.raises(LevelTooLow):
        embed_to_level(ZETA16, 2)
    assert ZETA16.minimal().level == 4 and (ZETA16**4).minimal().level == 2


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a
    assert a + (-a) == ZERO
    if a:
        assert a * (ONE / a) == ONE


@given(scalars(), scalars())
def test_arithmetic_agrees_with_numeric_oracle(a, b):
    assert abs(numeric(a + b) - (numeric(a) + numeric(b))) < 1e-9
    assert abs(numeric(a * b) - numeric(a) * numeric(b)) < 1e-8
    assert abs(numeric(a.conj()) - numeric(a).conjugate()) < 1e-9


@given(scalars())
def test_text_round_trip(a):
    assert from_text(to_text(a)) == a
    assert hash(a) == hash(a.minimal())
