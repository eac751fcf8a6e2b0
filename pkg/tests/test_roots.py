from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from selfaffine.errors import PreconditionError
from selfaffine.numbers import Poly, isolate_roots, squarefree_part
from selfaffine.numbers.gauss import QQi


def numpy_roots(p: Poly) -> np.ndarray:
    return np.roots([float(c) for c in reversed(p.coeffs)])


def assert_isolating(p: Poly, boxes):
    assert len(boxes) == p.degree
    for i, a in enumerate(boxes):
        for b in boxes[i + 1:]:
            assert not a.intersects(b)


def test_figure2_polynomial():
    boxes = isolate_roots(Poly([3, -4, -1, 1]))
    values = sorted(b.to_complex().real for b in boxes)
    assert all(b.center.im == 0 for b in boxes)
    assert values[0] == pytest.approx(-1.91223, abs=5e-6)
    assert values[1] == pytest.approx(0.71354, abs=5e-6)
    assert values[2] == pytest.approx(2.19869, abs=5e-6)
    assert sum(values) == pytest.approx(1, abs=1e-12)


def test_complex_pair():
    boxes = isolate_roots(Poly([1, 1, 0, 1]))
    real = [b for b in boxes if b.center.im == 0]
    pair = [b for b in boxes if b.center.im != 0]
    assert len(real) == 1 and len(pair) == 2
    assert real[0].to_complex().real == pytest.approx(-0.6823278, abs=1e-7)
    # root product is -1, so |pair|^2 = 1/|real root|
    assert abs(pair[0].to_complex()) == pytest.approx((1 / 0.6823278038280193) ** 0.5, abs=1e-12)
    assert pair[0].conjugate() == pair[1] or pair[1].conjugate() == pair[0]


def test_linear():
    (b,) = isolate_roots(Poly([-5, 1]))
    assert b.contains_point(QQi(Fraction(5)))


def test_requires_squarefree():
    with pytest.raises(PreconditionError):
        isolate_roots(Poly([-1, 1]) ** 2)


def test_precision_and_stable_order():
    p = Poly([-1, -1, 0, 0, 1])
    coarse = isolate_roots(p)
    fine = isolate_roots(p, Fraction(1, 2**200))
    for a, b in zip(coarse, fine):
        assert b.radius <= Fraction(1, 2**200)
        assert a.intersects(b)
    mp = mpmath.mp.clone() if hasattr(mpmath.mp, "clone") else None
    with mpmath.workdps(80):
        ref = mpmath.polyroots([int(c) for c in reversed(p.coeffs)], maxsteps=200, extraprec=300)
        for b in fine:
            z = mpmath.mpc(mpmath.mpf(b.center.re.numerator) / b.center.re.denominator,
                           mpmath.mpf(b.center.im.numerator) / b.center.im.denominator)
            assert min(abs(z - r) for r in ref) < mpmath.mpf(2) ** -190
    del mp


@settings(max_examples=150)
@given(st.lists(st.integers(-20, 20), min_size=2, max_size=8))
def test_random_polynomials_against_numpy(coeffs):
    p = Poly(coeffs)
    if p.degree < 1:
        return
    p = squarefree_part(p)
    if p.degree < 1:
        return
    boxes = isolate_roots(p)
    assert_isolating(p, boxes)
    ref = numpy_roots(p)
    for b in boxes:
        z = b.to_complex()
        assert np.min(np.abs(ref - z)) < 1e-5 * max(1.0, abs(z))
    # conjugate symmetry
    for b in boxes:
        assert b.conjugate() in boxes


@settings(max_examples=60)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=5, unique=True))
def test_clustered_roots(rs):
    # roots r and r + 1/1000 are close but distinct
    p = Poly.from_roots([Fraction(r) for r in rs] + [Fraction(rs[0]) + Fraction(1, 1000)])
    boxes = isolate_roots(p)
    assert_isolating(p, boxes)
