from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from selfaffine.errors import DomainError, PreconditionError
from selfaffine.expansion import (
    PerronClass,
    RationalMatrix,
    SpectralSpec,
    Spectrum,
    build_companion_witness,
    check_growth_condition,
    check_theorem_condition,
    classify_perron,
    eigen_data,
    is_diagonalizable,
    spectrum_of,
    witness_for,
)
from selfaffine.numbers import Poly, determinant, roots_of

SQRT2 = Poly([-2, 0, 1])
FIG2 = Poly([3, -4, -1, 1])
GOLDEN = Poly([-1, -1, 1])
CUBIC = Poly([1, 1, 0, 1])

EXPECTED = {
    "diag-3pm-sqrt2": True,
    "sqrt2": False,
    "sqrt2-pm": True,
    "sqrt2-sqrt2-msqrt2": False,
    "figure1-expansion": True,
    "figure2": True,
}


def spec(*items):
    return SpectralSpec.from_roots(items)


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_bundled_verdicts(expansion_specs, name):
    verdict = check_theorem_condition(eigen_data(expansion_specs[name]))
    assert verdict.passed is EXPECTED[name]
    assert bool(verdict.failures) is not EXPECTED[name]


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_witness_agrees_on_bundled(expansion_specs, name):
    assert witness_for(expansion_specs[name]).strict_max is EXPECTED[name]


def test_sqrt2_failure_names_conjugate():
    v = check_theorem_condition(eigen_data(spec((SQRT2, 1.414, 1))))
    assert not v.passed
    (r,) = v.reports
    (c,) = r.conjugates
    assert c.comparison == 0 and c.multiplicity == 0 and not c.ok


def test_eigen_data_examples():
    s = eigen_data(spec((FIG2, 2.19869, 1), (FIG2, -1.91223, 1)))
    assert s.dimension == 2
    assert all(a.is_algebraic_integer for a in s)
    two = eigen_data(RationalMatrix([[2, 0], [0, 2]]))
    assert list(two.values()) == [2]
    rot = eigen_data(RationalMatrix([[0, -2], [2, 0]]))
    assert {a.min_poly for a in rot} == {Poly([4, 0, 1])}
    assert sorted(a.to_complex().imag for a in rot) == pytest.approx([-2, 2])


def test_eigen_data_rejects():
    with pytest.raises(PreconditionError, match="diagonalizable"):
        eigen_data(RationalMatrix([[3, 1], [0, 3]]))
    with pytest.raises(DomainError, match="expanding"):
        eigen_data(RationalMatrix([[2, 0], [0, Fraction(1, 2)]]))


def test_non_integral_eigenvalue_fails():
    v = check_theorem_condition(eigen_data(RationalMatrix([[Fraction(3, 2)]])))
    assert not v.passed
    assert "algebraic integer" in v.failures[0]


@pytest.mark.parametrize(
    "m, expected",
    [([[3, 1], [0, 3]], False), ([[0, 1], [1, 1]], True), ([[1, 0], [0, 1]], True), ([[2, 1, 0], [0, 2, 0], [0, 0, 5]], False)],
)
def test_is_diagonalizable(m, expected):
    assert is_diagonalizable(m) is expected


def test_companion_witness_examples():
    assert build_companion_witness(spec((FIG2, 2.19869, 1), (FIG2, -1.91223, 1))) == [[0, 0, -3], [1, 0, 4], [0, 1, 1]]
    assert build_companion_witness(spec((SQRT2, 1.414, 1), (SQRT2, -1.414, 1))) == [[0, 2], [1, 0]]
    m = build_companion_witness(spec((GOLDEN, 1.618, 2)))
    assert len(m) == 4
    assert determinant(m) == 1  # (-1)^2 from two blocks


def test_growth_condition_figure2():
    target = spectrum_of(spec((FIG2, 2.19869, 1), (FIG2, -1.91223, 1)))
    rep = check_growth_condition(build_companion_witness(target), target)
    assert rep.strict_max
    assert rep.growth == pytest.approx(3 / 0.7135378, rel=1e-6)
    others = sorted(c.growth for c in rep.competitors)
    x1, x2, x3 = 2.198691243516, -1.9122291784844, 0.713537934968399
    assert others == pytest.approx(sorted([abs(x2 * x3), abs(x1 * x3)]), rel=1e-9)


def test_growth_condition_tie():
    target = spectrum_of(spec((SQRT2, 1.414, 1)))
    rep = check_growth_condition(build_companion_witness(target), target)
    assert not rep.strict_max
    (tie,) = rep.ties
    (a,) = tie.elements()
    assert a.to_complex().real == pytest.approx(-2**0.5)


def test_growth_condition_target_must_be_in_spectrum():
    target = spectrum_of(spec((GOLDEN, 1.618, 1)))
    with pytest.raises(DomainError):
        check_growth_condition([[0, 2], [1, 0]], target)


def test_conjugate_invariance():
    s = spectrum_of(spec((CUBIC, complex(0.34, 1.16), 1)))
    assert s == s.conjugated()
    assert check_theorem_condition(s).passed


# properties ---------------------------------------------------------------------

SMALL_POLYS = [SQRT2, GOLDEN, FIG2, CUBIC, Poly([-3, 0, 1]), Poly([-1, 0, -1, 1]), Poly([-2, 0, 0, 1]),
               Poly([7, -6, 1]), Poly([5, 0, 1]), Poly([-1, -1, 0, 1])]


@st.composite
def spectra(draw):
    mults = {}
    for p in draw(st.lists(st.sampled_from(SMALL_POLYS), min_size=1, max_size=2, unique=True)):
        roots = [a for a in roots_of(p) if abs(a.to_complex()) > 1]
        for a in draw(st.lists(st.sampled_from(roots), min_size=1, max_size=2)):
            mults[a] = mults.get(a, 0) + 1
            if not a.is_real:
                mults[a.conjugate()] = mults.get(a.conjugate(), 0) + 1
    return Spectrum(mults)


@settings(max_examples=100)
@given(spectra())
def test_verdict_invariant_under_conjugation(s):
    assert check_theorem_condition(s).passed == check_theorem_condition(s.conjugated()).passed


@settings(max_examples=100)
@given(st.sampled_from(SMALL_POLYS).flatmap(lambda p: st.sampled_from([a for a in roots_of(p) if abs(a.to_complex()) > 1])))
def test_single_real_and_complex_pair(lam):
    s = Spectrum({lam: 1, lam.conjugate(): 1}) if not lam.is_real else Spectrum({lam: 1})
    cls = classify_perron(lam)
    expected = PerronClass.PERRON if lam.is_real else PerronClass.COMPLEX_PERRON
    assert check_theorem_condition(s).passed == (cls == expected)


@settings(max_examples=60)
@given(spectra())
def test_witness_cross_validation_report(s):
    """Randomized cross-validation is reported, not asserted."""
    rep = witness_for(s)
    verdict = check_theorem_condition(s)
    if rep.strict_max != verdict.passed:
        print(f"witness/verdict disagreement on {s!r}: strict_max={rep.strict_max}, verdict={verdict.passed}")


@settings(max_examples=60)
@given(spectra())
def test_witness_determinant(s):
    m = build_companion_witness(s)
    polys = {a.min_poly for a in s}
    expected = 1
    for p in polys:
        copies = max(k for a, k in s.items() if a.min_poly == p)
        expected *= abs(p.coeffs[0]) ** copies
    assert abs(determinant(m)) == expected
