"""Necessary conditions on the expansion map of a self-affine tiling.

An expansion map is given either as a rational matrix or as explicit spectral
data (minimal polynomials with selected roots). From its eigenvalues we

* decide the algebraic-integer and Galois-conjugate multiplicity condition
  (:func:`check_theorem_condition`),
* classify single eigenvalues as Perron / complex Perron numbers
  (:func:`classify_perron`),
* build the integer companion witness matrix ``M`` and check that the target
  eigenvalues span the unique invariant subspace of maximal growth
  (:func:`build_companion_witness`, :func:`check_growth_condition`).

All modulus comparisons are exact; see
:func:`selfaffine.numbers.compare_abs_products`.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import DomainError, InputError, PreconditionError
from .numbers import (
    AlgebraicNumber,
    NumberFieldSpec,
    Poly,
    abs_exceeds_one,
    char_poly,
    compare_abs,
    compare_abs_products,
    companion_matrix,
    factor_rational,
    is_irreducible,
    matrix_poly_eval,
    roots_of,
    sort_key,
    squarefree_part,
)
from .numbers.polys import as_fraction_matrix

JORDAN_MESSAGE = (
    "the matrix is not diagonalizable over C; the eigenvalue condition is only "
    "established for diagonalizable expansions (the non-diagonalizable case, e.g. "
    "a Jordan block for 3+sqrt(2), is conjectural and not handled)"
)


# expansion maps -------------------------------------------------------------


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    def __init__(self, rows):
        m = as_fraction_matrix(rows)
        object.__setattr__(self, "rows", tuple(tuple(r) for r in m))

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def to_json(self) -> dict:
        return {"matrix": [[str(v) for v in r] for r in self.rows]}


@dataclass(frozen=True)
class SpectralBlock:
    """Roots of one irreducible polynomial with their multiplicities."""

    min_poly: Poly
    roots: tuple[tuple[int, int], ...]  # (root index, multiplicity)

    def __post_init__(self):
        if not (self.min_poly.is_monic() and self.min_poly.degree >= 1):
            raise InputError(f"minimal polynomial {self.min_poly} must be monic and non-constant")
        if not is_irreducible(self.min_poly):
            raise InputError(f"{self.min_poly} is not irreducible over Q")
        for idx, mult in self.roots:
            if not 0 <= idx < self.min_poly.degree:
                raise InputError(f"root index {idx} out of range for {self.min_poly}")
            if mult < 1:
                raise InputError("multiplicities must be positive")


@dataclass(frozen=True)
class SpectralSpec:
    """Block-spectral description of a diagonalizable real map.

    Each selected non-real root implicitly brings its complex conjugate with
    the same multiplicity, so the described real matrix is the block diagonal
    real canonical form (1x1 blocks for real roots, 2x2 rotation-scaling
    blocks for conjugate pairs).
    """

    blocks: tuple[SpectralBlock, ...]

    @classmethod
    def from_roots(cls, items: Iterable[tuple[Poly, complex, int]]) -> SpectralSpec:
        """Build from ``(min_poly, approximate root, multiplicity)`` triples."""
        grouped: dict[Poly, list[tuple[int, int]]] = {}
        for poly, approx, mult in items:
            poly = poly.monic()
            idx = NumberFieldSpec.select_root(poly, complex(approx))
            grouped.setdefault(poly, []).append((idx, int(mult)))
        return cls(tuple(SpectralBlock(p, tuple(r)) for p, r in grouped.items()))

    @classmethod
    def from_json(cls, data: Mapping) -> SpectralSpec:
        try:
            items = []
            for block in data["blocks"]:
                poly = Poly.from_json(block["min_poly"])
                for root in block["roots"]:
                    re, im = (float(v) for v in root["approx"])
                    items.append((poly, complex(re, im), int(root.get("multiplicity", 1))))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed spectral spec: {exc}") from exc
        return cls.from_roots(items)

    def to_json(self) -> dict:
        blocks = []
        for b in self.blocks:
            roots = []
            for idx, mult in b.roots:
                z = AlgebraicNumber(b.min_poly, idx).to_complex()
                roots.append({"approx": [repr(z.real), repr(z.imag)], "multiplicity": mult})
            blocks.append({"min_poly": b.min_poly.to_json(), "roots": roots})
        return {"blocks": blocks}

    @property
    def dimension(self) -> int:
        return spectrum_of(self).dimension


ExpansionMap = Union[RationalMatrix, SpectralSpec]


class Spectrum(Mapping[AlgebraicNumber, int]):
    """Multiset of eigenvalues (complex conjugates counted separately)."""

    def __init__(self, mults: Mapping[AlgebraicNumber, int] | Iterable[AlgebraicNumber]):
        counts = Counter(mults)
        self._m = {a: counts[a] for a in sorted(counts, key=sort_key) if counts[a] > 0}

    def __getitem__(self, a: AlgebraicNumber) -> int:
        return self._m.get(a, 0)

    def __iter__(self):
        return iter(self._m)

    def __len__(self) -> int:
        return len(self._m)

    def __contains__(self, a) -> bool:
        return a in self._m

    def __eq__(self, other) -> bool:
        if isinstance(other, Spectrum):
            return self._m == other._m
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._m.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{a!r}: {m}" for a, m in self._m.items())
        return f"Spectrum({{{inner}}})"

    @property
    def dimension(self) -> int:
        return sum(self._m.values())

    def elements(self) -> list[AlgebraicNumber]:
        return [a for a, m in self._m.items() for _ in range(m)]

    def is_conjugation_closed(self) -> bool:
        return all(self[a.conjugate()] == m for a, m in self._m.items())

    def non_integral(self) -> list[AlgebraicNumber]:
        return [a for a in self._m if not a.is_algebraic_integer]

    def issubset(self, other: Spectrum) -> bool:
        return all(other[a] >= m for a, m in self._m.items())

    def conjugated(self) -> Spectrum:
        return Spectrum({a.conjugate(): m for a, m in self._m.items()})


def spectrum_of(spec: SpectralSpec) -> Spectrum:
    mults: Counter = Counter()
    explicit: dict[AlgebraicNumber, int] = {}
    for block in spec.blocks:
        for idx, mult in block.roots:
            a = AlgebraicNumber(block.min_poly, idx)
            if a in explicit:
                raise InputError(f"root {a!r} selected twice")
            explicit[a] = mult
    for a, mult in explicit.items():
        c = a.conjugate()
        if c != a and c in explicit and explicit[c] != mult:
            raise InputError(f"conjugate roots {a!r} and {c!r} selected with different multiplicities")
        mults[a] = mult
        mults[c] = mult
    return Spectrum(mults)


# diagonalizability and eigenvalues --------------------------------------------


def is_diagonalizable(a) -> bool:
    """True iff the minimal polynomial of the rational matrix is squarefree.

    The candidate ``m = chi / gcd(chi, chi')`` (product of the distinct
    irreducible factors of the characteristic polynomial) annihilates ``A``
    exactly when the true minimal polynomial has no repeated factor.
    """
    rows = as_fraction_matrix(a)
    if not rows:
        return True
    m = squarefree_part(char_poly(rows))
    return all(v == 0 for row in matrix_poly_eval(m, rows) for v in row)


def matrix_spectrum(a) -> Spectrum:
    """Eigenvalues of a rational matrix with algebraic multiplicities."""
    mults: dict[AlgebraicNumber, int] = {}
    for fac, mult in factor_rational(char_poly(a)):
        for root in roots_of(fac):
            mults[root] = mult
    return Spectrum(mults)


def eigen_data(phi: ExpansionMap) -> Spectrum:
    """Conjugation-closed eigenvalue multiset of an expanding map.

    Raises :class:`PreconditionError` for non-diagonalizable rational matrices
    and :class:`DomainError` if some eigenvalue has modulus <= 1.
    """
    if isinstance(phi, RationalMatrix):
        if not is_diagonalizable(phi.rows):
            raise PreconditionError(JORDAN_MESSAGE)
        spec = matrix_spectrum(phi.rows)
    elif isinstance(phi, SpectralSpec):
        spec = spectrum_of(phi)
    else:
        raise TypeError(f"unsupported expansion map {type(phi).__name__}")
    for a in spec:
        if not abs_exceeds_one(a):
            raise DomainError(f"map is not expanding: eigenvalue {a!r} has modulus "
                              f"{abs(a.to_complex()):.6g} <= 1")
    return spec


# Perron classification ------------------------------------------------------


class PerronClass(enum.Enum):
    PERRON = "Perron"
    COMPLEX_PERRON = "ComplexPerron"
    NEITHER = "Neither"


def classify_perron(lam: AlgebraicNumber) -> PerronClass:
    """Perron / complex Perron / neither, by exact modulus comparisons.

    A real ``lam`` is Perron when ``|lam|`` strictly exceeds the modulus of
    every other conjugate; a non-real ``lam`` is complex Perron when it does so
    for every conjugate except its complex conjugate.
    """
    if not lam.is_algebraic_integer:
        raise DomainError(f"{lam!r} is not an algebraic integer")
    if not abs_exceeds_one(lam):
        raise PreconditionError(f"{lam!r} must have modulus > 1")
    bar = lam.conjugate()
    others = [g for g in lam.galois_conjugates() if g != bar]
    dominant = all(compare_abs(g, lam) < 0 for g in others)
    if not dominant:
        return PerronClass.NEITHER
    return PerronClass.PERRON if lam.is_real else PerronClass.COMPLEX_PERRON


# the multiplicity condition ---------------------------------------------------


@dataclass(frozen=True)
class ConjugateReport:
    conjugate: AlgebraicNumber
    comparison: int  # sign of |conjugate| - |eigenvalue|
    multiplicity: int  # multiplicity of the conjugate among the eigenvalues
    ok: bool


@dataclass(frozen=True)
class EigenReport:
    eigenvalue: AlgebraicNumber
    multiplicity: int
    algebraic_integer: bool
    conjugates: tuple[ConjugateReport, ...]


@dataclass(frozen=True)
class Verdict:
    passed: bool
    reports: tuple[EigenReport, ...]
    failures: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "eigenvalues": [
                {
                    "eigenvalue": _num_json(r.eigenvalue),
                    "min_poly": r.eigenvalue.min_poly.to_json(),
                    "multiplicity": r.multiplicity,
                    "algebraic_integer": r.algebraic_integer,
                    "conjugates": [
                        {
                            "conjugate": _num_json(c.conjugate),
                            "modulus": ["smaller", "equal", "larger"][c.comparison + 1],
                            "multiplicity": c.multiplicity,
                            "ok": c.ok,
                        }
                        for c in r.conjugates
                    ],
                }
                for r in self.reports
            ],
            "failures": list(self.failures),
        }


def _num_json(a: AlgebraicNumber) -> list[str]:
    z = a.box().center
    return [f"{float(z.re):.12g}", f"{float(z.im):.12g}"]


def _describe(a: AlgebraicNumber) -> str:
    z = a.to_complex()
    if z.imag == 0:
        return f"{z.real:.6g}"
    return f"{z.real:.6g}{z.imag:+.6g}i"


def check_theorem_condition(spec: Spectrum) -> Verdict:
    """Check the eigenvalue condition for an expansion with spectrum ``spec``.

    Every eigenvalue must be an algebraic integer, and for an eigenvalue
    ``lam`` of multiplicity ``k`` each Galois conjugate ``g`` must satisfy
    ``|g| < |lam|`` or occur with multiplicity at least ``k``. Only Galois
    conjugates are constrained; equal-modulus roots of other factors are not.
    """
    bad = spec.non_integral()
    if bad:
        failures = tuple(f"eigenvalue {_describe(a)} (root of {a.min_poly}) is not an algebraic integer"
                         for a in bad)
        reports = tuple(EigenReport(a, m, a.is_algebraic_integer, ()) for a, m in spec.items())
        return Verdict(False, reports, failures)
    reports, failures = [], []
    for lam, k in spec.items():
        conj_reports = []
        for g in lam.galois_conjugates():
            cmp = compare_abs(g, lam)
            ok = cmp < 0 or spec[g] >= k
            conj_reports.append(ConjugateReport(g, cmp, spec[g], ok))
            if not ok:
                rel = "equal" if cmp == 0 else "larger"
                failures.append(
                    f"eigenvalue {_describe(lam)} has multiplicity {k} but its conjugate "
                    f"{_describe(g)} of {rel} modulus has multiplicity {spec[g]}"
                )
        reports.append(EigenReport(lam, k, True, tuple(conj_reports)))
    return Verdict(not failures, tuple(reports), tuple(failures))


# integer witness ---------------------------------------------------------------


def build_companion_witness(spec: SpectralSpec | Spectrum) -> list[list[int]]:
    """Direct sum of companion matrices containing the given eigenvalues.

    Each distinct minimal polynomial contributes as many companion blocks as
    the largest multiplicity among its selected roots.
    """
    if isinstance(spec, SpectralSpec):
        spec = spectrum_of(spec)
    copies: dict[Poly, int] = {}
    for a, m in spec.items():
        if not a.is_algebraic_integer:
            raise PreconditionError(f"{a.min_poly} is not an integer polynomial")
        copies[a.min_poly] = max(copies.get(a.min_poly, 0), m)
    blocks = []
    for poly in sorted(copies, key=lambda p: (p.degree, p.coeffs)):
        blocks += [companion_matrix(poly)] * copies[poly]
    return block_diag(blocks)


def block_diag(blocks: Sequence[Sequence[Sequence]]) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                out[off + i][off + j] = int(v)
        off += len(b)
    return out


@dataclass(frozen=True)
class Competitor:
    multiset: Spectrum
    growth: float
    comparison: int  # sign of growth(competitor) - growth(target)


@dataclass(frozen=True)
class WitnessReport:
    M: list[list[int]]
    target: Spectrum
    growth: float
    competitors: tuple[Competitor, ...]
    strict_max: bool
    ties: tuple[Spectrum, ...] = field(default=())

    def to_json(self) -> dict:
        def ms(s: Spectrum):
            return [{"eigenvalue": _num_json(a), "min_poly": a.min_poly.to_json(), "multiplicity": m}
                    for a, m in s.items()]

        return {
            "M": self.M,
            "target": ms(self.target),
            "growth": float(f"{self.growth:.12g}"),
            "competitors": [
                {"multiset": ms(c.multiset), "growth": float(f"{c.growth:.12g}"),
                 "vs_target": ["smaller", "equal", "larger"][c.comparison + 1]}
                for c in self.competitors
            ],
            "ties": [ms(t) for t in self.ties],
            "strict_max": self.strict_max,
        }


def _growth(s: Spectrum) -> float:
    return math.prod(abs(a.to_complex()) ** m for a, m in s.items())


def closed_submultisets(spec: Spectrum, n: int) -> list[Spectrum]:
    """All conjugation-closed sub-multisets of ``spec`` with ``n`` elements."""
    orbits = []
    seen = set()
    for a in spec:
        if a in seen:
            continue
        c = a.conjugate()
        seen.update((a, c))
        orbits.append((a, c))
    choices = []
    for a, c in orbits:
        size = 1 if a == c else 2
        choices.append([(k, size) for k in range(spec[a] + 1)])
    out = []
    for pick in itertools.product(*choices):
        if sum(k * size for k, size in pick) != n:
            continue
        mults = {}
        for (a, c), (k, _) in zip(orbits, pick):
            if k:
                mults[a] = k
                mults[c] = k
        out.append(Spectrum(mults))
    return out


def check_growth_condition(M, target: Spectrum) -> WitnessReport:
    """Compare the growth of ``target`` with every other closed n-subset of spec(M)."""
    rows = as_fraction_matrix(M)
    if not is_diagonalizable(rows):
        raise PreconditionError("witness matrix must be diagonalizable")
    if not target.is_conjugation_closed():
        raise DomainError("target eigenvalues must be closed under complex conjugation")
    spec_m = matrix_spectrum(rows)
    if not target.issubset(spec_m):
        raise DomainError("target eigenvalues are not contained in the spectrum of M")
    n = target.dimension
    competitors, ties = [], []
    for sub in closed_submultisets(spec_m, n):
        if sub == target:
            continue
        cmp = compare_abs_products(sub.elements(), target.elements())
        competitors.append(Competitor(sub, _growth(sub), cmp))
        if cmp == 0:
            ties.append(sub)
    strict = all(c.comparison < 0 for c in competitors)
    return WitnessReport(
        M=[[int(v) for v in r] for r in rows],
        target=target,
        growth=_growth(target),
        competitors=tuple(competitors),
        strict_max=strict,
        ties=tuple(ties),
    )


def witness_for(spec: SpectralSpec | Spectrum) -> WitnessReport:
    spectrum = spec if isinstance(spec, Spectrum) else spectrum_of(spec)
    return check_growth_condition(build_companion_witness(spectrum), spectrum)
