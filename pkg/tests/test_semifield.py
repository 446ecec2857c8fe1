from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tropclust.exact import LaurentPoly
from tropclust.semifield import SubtractionFreeRational as SFR
from tropclust.semifield import TropicalMonomial, semifield_ops, trop_add, tropicalize

Y1, Y2 = SFR.gen(0, 2), SFR.gen(1, 2)
ONE = SFR.one(2)


def T(*a):
    return TropicalMonomial(a)


def test_trop_add_examples():
    assert trop_add(T(1, 0), T(0, 1)) == T(0, 0)
    assert trop_add(T(2, -1), T(1, 0)) == T(1, -1)
    assert trop_add(T(3, -2), T(3, -2)) == T(3, -2)


def test_tropicalize_examples():
    assert tropicalize(SFR.constant(Fraction(7, 3), 2)).is_one()
    assert tropicalize(Y1 ** -1 * (ONE + Y2 + Y1 * Y2)) == T(-1, 0)
    assert tropicalize(Y2 * (ONE + Y1)) == T(0, 1)


def test_semifield_ops_examples():
    assert semifield_ops(ONE, Y1, "add").to_rational() == (ONE + Y1).to_rational()
    assert semifield_ops(semifield_ops(ONE + Y1, op="inv"), ONE + Y1, "mul") == ONE
    assert semifield_ops(Y2, Y1 * Y2, "add") == Y2 * (ONE + Y1)


def test_rejects_non_subtraction_free_witness():
    with pytest.raises(ValueError):
        SFR(LaurentPoly.gen(0, 2) - LaurentPoly.one(2))


def test_division_keeps_witness_positive():
    r = (ONE + Y1 * Y1) / (ONE + Y1)
    assert r.num.has_positive_coefficients() and r.den.has_positive_coefficients()
    assert r * (ONE + Y1) == ONE + Y1 * Y1


def test_reduction_cancels_common_positive_factor():
    r = (Y2 + Y1 * Y2) / (ONE + Y1)
    assert r == Y2
    assert r.den.is_one()


# random subtraction-free expressions built from the generators

@st.composite
def sfr(draw, depth=3):
    if depth == 0 or draw(st.booleans()):
        e = draw(st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
        c = draw(st.integers(1, 4))
        return SFR(LaurentPoly(2, {e: c}))
    a, b = draw(sfr(depth=depth - 1)), draw(sfr(depth=depth - 1))
    op = draw(st.sampled_from(["add", "mul", "div"]))
    return a + b if op == "add" else a * b if op == "mul" else a / b


@given(sfr(), sfr())
def test_tropicalization_is_a_homomorphism(a, b):
    assert tropicalize(a + b) == trop_add(tropicalize(a), tropicalize(b))
    assert tropicalize(a * b) == tropicalize(a) * tropicalize(b)
    assert tropicalize(a / b) == tropicalize(a) * tropicalize(b).inverse()


@given(sfr(), sfr())
def test_tropicalization_is_well_defined(a, b):
    # two witnesses of the same function tropicalize identically
    w = SFR((a.num * b.num), (a.den * b.num), reduce=False)
    assert tropicalize(w) == tropicalize(a)


@given(sfr())
def test_evaluation_is_positive(a):
    assert a.evaluate((Fraction(2, 3), Fraction(5, 7))) > 0
