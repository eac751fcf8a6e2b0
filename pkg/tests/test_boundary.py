import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from selfaffine import fieldlinalg as fl
from selfaffine import svg
from selfaffine.boundary import (
    Alphabet,
    Endomorphism,
    VectorAssignment,
    abelianization,
    apply_endo,
    boundary_curve,
    check_compatibility,
    commutator,
    compatibility_defects,
    inverse,
    reduce,
)
from selfaffine.errors import DomainError, InputError

ABC = Alphabet("abc")
letters = st.sampled_from([1, -1, 2, -2, 3, -3])
raw_words = st.lists(letters, max_size=30)


@st.composite
def endomorphisms(draw):
    images = {k: tuple(draw(st.lists(letters, max_size=4))) for k in (1, 2, 3)}
    return Endomorphism(ABC, images)


def test_reduce_examples():
    p = ABC.parse
    assert reduce((1, 2, -2, 3)) == (1, 3)
    assert reduce((1, -1)) == ()
    assert p("abBc") == p("ac")
    assert p("[a,c]") == (1, 3, -1, -3) == reduce((1, 3, -1, -3))
    assert ABC.format(p("[a,[b,c]]")) == "abcBCAcbCB"


def test_parse_errors():
    with pytest.raises(InputError):
        ABC.parse("abd")
    with pytest.raises(InputError):
        ABC.parse("[a,b")
    with pytest.raises(InputError):
        ABC.parse("a-b")
    with pytest.raises(InputError):
        reduce((1, 0))
    with pytest.raises(InputError):
        Alphabet("aA")


def test_figure1_identities(fig1_boundary):
    psi, p = fig1_boundary.endomorphism, ABC.parse
    assert apply_endo(psi, p("[a,c]")) == p("A[a,b]a")
    assert apply_endo(psi, p("[a,b]")) == p("[b,c]")
    assert apply_endo(psi, p("[b,c]")) == p("(A[a,c]a)(AB[b,c]ba)".replace("(", "").replace(")", ""))
    assert apply_endo(psi, p("[b,c]")) == p("[c,AB]")


def test_compatibility(fig1_boundary, fig3_boundary):
    for b in (fig1_boundary, fig3_boundary):
        assert check_compatibility(b.assignment, b.endomorphism)
        assert all(all(x.is_zero() for x in v) for v in compatibility_defects(b.assignment, b.endomorphism).values())


def test_compatibility_forces_defining_relation(fig1_boundary):
    """psi(c) = a^-1 b^-1 gives lambda * lambda^2 = -1 - lambda."""
    a = fig1_boundary.assignment
    lam = a.field_spec.field.gen
    assert lam**3 == -1 - lam
    assert a.field_spec.min_poly.coeffs == (1, 1, 0, 1)


def test_compatibility_can_fail(fig1_boundary):
    a = fig1_boundary.assignment
    psi = Endomorphism.from_strings(ABC, {"a": "b", "b": "c", "c": "AA"})
    assert not check_compatibility(a, psi)


def test_identity_endomorphism():
    from selfaffine.numbers import NumberField, NumberFieldSpec

    q = NumberField.rationals()
    spec = NumberFieldSpec(q, (0, 0))
    vecs = ((q(1), q(0)), (q(0), q(1)), (q(1), q(1)))
    assign = VectorAssignment(spec, ABC, vecs, fl.identity(spec))
    assert check_compatibility(assign, Endomorphism.from_strings(ABC, {"a": "a", "b": "b", "c": "c"}))


def test_parallelogram(fig1_boundary):
    c = boundary_curve(fig1_boundary.assignment, fig1_boundary.endomorphism, "[a,b]", 0)
    lam = complex(0.3411639019140096, 1.161541399997252)
    expected = [0, 1, 1 + lam, lam, 0]
    assert np.allclose(c.points, [[z.real, z.imag] for z in expected])
    assert c.closed


def test_non_closed_word(fig1_boundary):
    with pytest.raises(DomainError):
        boundary_curve(fig1_boundary.assignment, fig1_boundary.endomorphism, "ab", 3)


def test_budget(fig3_boundary):
    with pytest.raises(DomainError):
        boundary_curve(fig3_boundary.assignment, fig3_boundary.endomorphism, "[b,c]", 12, budget=10_000)


@pytest.mark.parametrize("word", ["[b,a]", "[b,c]", "[a,c]"])
def test_figure3_curves_close(fig3_boundary, word):
    c = boundary_curve(fig3_boundary.assignment, fig3_boundary.endomorphism, word, 6)
    assert c.closed
    assert np.allclose(c.points[0], c.points[-1], atol=1e-9)


def test_curve_scales_to_tile(fig1_boundary):
    """Successive approximants stay at a bounded size (phi^-n normalizes)."""
    sizes = []
    for n in (10, 20, 30):
        c = boundary_curve(fig1_boundary.assignment, fig1_boundary.endomorphism, "[a,c]", n)
        sizes.append(np.ptp(c.points, axis=0).max())
    assert max(sizes) / min(sizes) < 1.5


def test_svg_output(tmp_path, fig1_boundary):
    curves = [boundary_curve(fig1_boundary.assignment, fig1_boundary.endomorphism, w, 8) for w in ("[a,c]", "[a,b]")]
    out = tmp_path / "c.svg"
    svg.write(str(out), [(c.points, {"label": c.word}) for c in curves])
    root = ET.parse(out).getroot()
    paths = root.findall("{http://www.w3.org/2000/svg}path")
    assert len(paths) == 2
    vx, vy, vw, vh = map(float, root.get("viewBox").split())
    pts = np.vstack([c.points for c in curves])
    w, h = np.ptp(pts[:, 0]), np.ptp(pts[:, 1])
    assert vw == pytest.approx(1.1 * w, rel=1e-4)
    assert vh == pytest.approx(1.1 * h, rel=1e-4)
    assert float(paths[0].get("stroke-width")) == pytest.approx(0.002 * np.hypot(vw, vh), rel=1e-3)


# properties ---------------------------------------------------------------------


@settings(max_examples=1000)
@given(raw_words)
def test_reduce_idempotent(w):
    r = reduce(w)
    assert reduce(r) == r
    assert len(r) <= len(w)
    assert all(r[i] != -r[i + 1] for i in range(len(r) - 1))
    assert abelianization(r, 3) == abelianization(w, 3)


@settings(max_examples=1000)
@given(endomorphisms(), raw_words, raw_words)
def test_homomorphism(psi, u, v):
    assert apply_endo(psi, tuple(u) + tuple(v)) == reduce(apply_endo(psi, u) + apply_endo(psi, v))
    assert apply_endo(psi, inverse(u)) == inverse(apply_endo(psi, u))


@settings(max_examples=1000)
@given(endomorphisms(), raw_words)
def test_abelianization_equivariance(psi, w):
    a = np.array(psi.count_matrix())
    assert abelianization(apply_endo(psi, w), 3) == (a @ np.array(abelianization(w, 3))).tolist()


@settings(max_examples=300)
@given(endomorphisms(), raw_words, raw_words)
def test_closedness_preserved(psi, u, v):
    w = commutator(u, v)
    assert not any(abelianization(w, 3))
    assert not any(abelianization(apply_endo(psi, w), 3))


@settings(max_examples=100)
@given(raw_words, raw_words, st.integers(0, 6))
def test_closed_paths_end_at_zero(fig3_boundary, u, v, n):
    c = boundary_curve(fig3_boundary.assignment, fig3_boundary.endomorphism, commutator(u, v), n)
    assert c.closed
