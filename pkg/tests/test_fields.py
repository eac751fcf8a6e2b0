from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from selfaffine.errors import DomainError, PreconditionError
from selfaffine.numbers import NumberField, NumberFieldSpec, Poly, embed, field_arith
from selfaffine.numbers.gauss import QQi

GOLDEN = NumberField(Poly([-1, -1, 1]))
CUBIC = NumberField(Poly([1, 1, 0, 1]))
FIG2 = NumberField(Poly([3, -4, -1, 1]))
SQRT2 = NumberField(Poly([-2, 0, 1]))

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def elems(field):
    return st.lists(fractions, min_size=field.degree, max_size=field.degree).map(field)


def test_field_examples():
    t = GOLDEN.gen
    assert t * t == t + 1
    c = CUBIC.gen
    assert field_arith(c, c * c, "mul") == -c - 1
    assert field_arith(SQRT2.gen, None, "inv") == SQRT2.gen / 2
    assert field_arith(1, 2, "add", GOLDEN) == GOLDEN(3)


def test_inverse_of_zero():
    with pytest.raises(DomainError):
        GOLDEN.zero().inverse()


def test_reducible_polynomial_rejected():
    with pytest.raises(PreconditionError):
        NumberField(Poly([-1, 0, 1]))
    with pytest.raises(PreconditionError):
        NumberField(Poly([1, 2]) * Poly([2, 1]))


@settings(max_examples=1000)
@given(st.data())
def test_ring_axioms(data):
    field = data.draw(st.sampled_from([GOLDEN, CUBIC, FIG2]))
    a, b, c = (data.draw(elems(field)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + field.zero() == a and a * field.one() == a
    assert a - a == field.zero()
    if not a.is_zero():
        assert a * a.inverse() == field.one()


@settings(max_examples=200)
@given(st.data())
def test_multiplication_against_sympy(data):
    field = data.draw(st.sampled_from([CUBIC, FIG2]))
    a, b = data.draw(elems(field)), data.draw(elems(field))
    x = sympy.Symbol("x")
    pa = sum(sympy.Rational(v.numerator, v.denominator) * x**i for i, v in enumerate(a.coeffs))
    pb = sum(sympy.Rational(v.numerator, v.denominator) * x**i for i, v in enumerate(b.coeffs))
    mp = sum(int(v) * x**i for i, v in enumerate(field.min_poly.coeffs))
    r = sympy.Poly(sympy.rem(sympy.expand(pa * pb), mp, x), x)
    expected = [Fraction(int(c.p), int(c.q)) for c in reversed(r.all_coeffs())]
    expected += [Fraction(0)] * (field.degree - len(expected))
    assert list((a * b).coeffs) == expected


def test_minimal_polynomial():
    t = FIG2.gen
    assert t.minimal_polynomial() == FIG2.min_poly
    assert (t * t - t).minimal_polynomial().degree == 3
    assert FIG2(7).minimal_polynomial() == Poly([-7, 1])
    assert (GOLDEN.gen * 2 - 1).minimal_polynomial() == Poly([-5, 0, 1])


def test_embed_examples():
    x1 = NumberFieldSpec.select_root(FIG2.min_poly, 2.19869)
    x2 = NumberFieldSpec.select_root(FIG2.min_poly, -1.91223)
    t = FIG2.gen
    assert embed(t, x1).to_complex().real == pytest.approx(2.19869, abs=5e-6)
    ball = embed(FIG2(7), x1)
    assert ball.contains_point(QQi(Fraction(7)))
    v = embed(t * t - t, x2, Fraction(1, 2**100))
    assert v.radius <= Fraction(1, 2**100)
    x2_float = -1.9122291784844
    assert v.to_complex().real == pytest.approx(x2_float**2 - x2_float, abs=1e-11)


def test_ambiguous_root_selection():
    with pytest.raises(DomainError):
        NumberFieldSpec.select_root(CUBIC.min_poly, complex(3, 0))


@settings(max_examples=200)
@given(st.data())
def test_embed_is_homomorphism(data):
    a, b = data.draw(elems(FIG2)), data.draw(elems(FIG2))
    idx = data.draw(st.integers(0, 2))
    ea, eb, eab = embed(a, idx), embed(b, idx), embed(a * b, idx)
    prod = ea * eb
    assert prod.intersects(eab)
    s = ea + eb
    assert s.intersects(embed(a + b, idx))
