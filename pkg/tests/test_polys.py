from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import strategies as st

from selfaffine.errors import DomainError, PreconditionError, ShapeError
from selfaffine.numbers import (
    Poly,
    char_poly,
    companion_matrix,
    composed_product,
    determinant,
    factor_rational,
    is_irreducible,
    is_squarefree,
    matrix_poly_eval,
    poly_gcd,
    squarefree_decomposition,
    squarefree_part,
)
from selfaffine.numbers.polys import resultant

X = sympy.Symbol("x")


def to_sympy(p: Poly):
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in p.coeffs])), X)


def from_sympy(e) -> Poly:
    coeffs = sympy.Poly(e, X).all_coeffs()[::-1]
    return Poly([Fraction(int(c.p), int(c.q)) for c in coeffs])


int_polys = st.lists(st.integers(-9, 9), min_size=1, max_size=6).map(Poly)
monic_polys = st.lists(st.integers(-6, 6), min_size=1, max_size=4).map(lambda c: Poly(c + [1]))


def test_canonical_coefficients():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly([0, 0]).is_zero()
    assert Poly([0]) == Poly([])


def test_json_round_trip():
    p = Poly([Fraction(1, 3), 0, -2, 1])
    assert p.to_json() == ["1/3", "0", "-2", "1"]
    assert Poly.from_json(p.to_json()) == p
    assert Poly.from_json(["1", "1", "0", "1"]) == Poly([1, 1, 0, 1])


def test_str():
    assert str(Poly([3, -4, -1, 1])) == "x^3 - x^2 - 4*x + 3"


@pytest.mark.parametrize(
    "matrix, expected",
    [
        ([[0, 1], [1, 1]], [-1, -1, 1]),
        ([[0, 1, 1], [0, 4, 1], [3, 0, 0]], [9, -3, -4, 1]),
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [-1, 3, -3, 1]),
    ],
)
def test_char_poly_examples(matrix, expected):
    assert char_poly(matrix) == Poly(expected)


def test_char_poly_rejects_non_square():
    with pytest.raises(ShapeError):
        char_poly([[1, 2, 3], [4, 5, 6]])


@settings(max_examples=200)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_char_poly_against_sympy(m):
    expected = from_sympy(sympy.Matrix(m).charpoly(X).as_expr())
    assert char_poly(m) == expected


@settings(max_examples=200)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_cayley_hamilton(m):
    zero = matrix_poly_eval(char_poly(m), m)
    assert all(v == 0 for row in zero for v in row)
    assert determinant(m) == sympy.Matrix(m).det()


@settings(max_examples=200)
@given(int_polys, int_polys)
def test_division_and_gcd(a, b):
    if b.is_zero():
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree
    g = poly_gcd(a, b)
    expected = sympy.gcd(to_sympy(a), to_sympy(b))
    if g.is_zero():
        assert expected.is_zero
    else:
        assert g.monic() == from_sympy(expected.as_expr()).monic()


@settings(max_examples=150)
@given(monic_polys, monic_polys)
def test_resultant_against_sympy(p, q):
    # determinant of sympy's Sylvester matrix; sympy.resultant itself may
    # differ by (-1)^(deg p deg q) when deg p < deg q
    expected = sylvester(to_sympy(p).as_expr(), to_sympy(q).as_expr(), X).det()
    if p.degree == 0 or q.degree == 0:
        expected = p.lc ** q.degree * q.lc ** p.degree
    assert resultant(p, q) == expected


def test_composed_product_examples():
    p = Poly([-2, 0, 1])
    assert composed_product(p, p) == Poly([-2, 1]) ** 2 * Poly([2, 1]) ** 2
    assert composed_product(Poly([-3, 1]), Poly([-3, 1])) == Poly([-9, 1])
    q = Poly([1, 1, 0, 1])
    c = composed_product(q, q)
    assert c.degree == 9
    # |lambda|^2 of the complex pair is a root
    import mpmath

    assert abs(c(Fraction(1.4655712318767682))) < Fraction(1, 10**9)
    assert mpmath.polyval([float(x) for x in reversed(c.coeffs)], 1.4655712318767682) == pytest.approx(0, abs=1e-9)


def test_composed_product_requires_monic():
    with pytest.raises(PreconditionError):
        composed_product(Poly([1, 2]), Poly([1, 1]))


@settings(max_examples=100)
@given(monic_polys)
def test_composed_product_with_one(p):
    assert composed_product(p, Poly([-1, 1])) == p


@settings(max_examples=100)
@given(monic_polys, monic_polys)
def test_composed_product_against_resultant_oracle(p, q):
    """Res_y(p(y), y^m q(x/y)) computed independently by sympy."""
    y = sympy.Symbol("y")
    m = q.degree
    qq = sum(sympy.Integer(int(c)) * X**k * y ** (m - k) for k, c in enumerate(q.coeffs))
    pp = sum(sympy.Integer(int(c)) * y**k for k, c in enumerate(p.coeffs))
    expected = from_sympy(sympy.resultant(pp, qq, y))
    assert composed_product(p, q) == expected.monic()


def test_companion_matrix():
    p = Poly([3, -4, -1, 1])
    c = companion_matrix(p)
    assert char_poly(c) == p
    with pytest.raises(PreconditionError):
        companion_matrix(Poly([1, 2]))


def test_squarefree():
    p = Poly([-1, -1, 1]) ** 2 * Poly([-2, 1])
    assert not is_squarefree(p)
    assert squarefree_part(p) == Poly([-1, -1, 1]) * Poly([-2, 1])
    assert dict((f, m) for f, m in squarefree_decomposition(p)) == {Poly([-2, 1]): 1, Poly([-1, -1, 1]): 2}


@pytest.mark.parametrize(
    "p, expected",
    [
        (Poly([-2, 0, 1]), [(Poly([-2, 0, 1]), 1)]),
        (Poly([-1, -1, 1]) ** 2, [(Poly([-1, -1, 1]), 2)]),
        (Poly([9, -3, -4, 1]), [(Poly([9, -3, -4, 1]), 1)]),
    ],
)
def test_factor_examples(p, expected):
    assert factor_rational(p) == expected


def test_factor_zero():
    with pytest.raises(DomainError):
        factor_rational(Poly([0]))


def test_factor_degree_cap():
    with pytest.raises(DomainError):
        is_irreducible(Poly([1] * 9 + [0, 1]))


def test_swinnerton_dyer_like():
    # x^4 - 10x^2 + 1 is irreducible but splits modulo every prime
    assert is_irreducible(Poly([1, 0, -10, 0, 1]))
    assert not is_irreducible(Poly([4, 0, 0, 0, 1]))  # (x^2+2x+2)(x^2-2x+2)


@settings(max_examples=300)
@given(st.lists(monic_polys, min_size=1, max_size=3))
def test_factor_against_sympy(parts):
    p = Poly([1])
    for q in parts:
        p = p * q
    if p.degree > 8:
        return
    ours = factor_rational(p)
    prod = Poly([1])
    for f, m in ours:
        assert is_irreducible(f)
        prod = prod * f**m
    assert prod == p.monic()
    _, theirs = sympy.factor_list(to_sympy(p))
    expected = sorted((from_sympy(f.as_expr()).monic().coeffs, m) for f, m in theirs)
    assert sorted((f.coeffs, m) for f, m in ours) == expected
