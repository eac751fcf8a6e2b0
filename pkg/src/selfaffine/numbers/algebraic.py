"""Algebraic numbers as (minimal polynomial, root index) and exact modulus comparison."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from ..errors import DomainError
from .gauss import ComplexBall, QQi
from .polys import MAX_DEGREE, Poly, composed_product, squarefree_part
from .roots import BASE_RADIUS, MAX_BITS, isolate_roots, locate_root


@dataclass(frozen=True)
class AlgebraicNumber:
    """One root of a monic irreducible rational polynomial.

    ``index`` refers to the canonical order of :func:`isolate_roots`, so two
    instances are equal exactly when they denote the same complex number.
    """

    min_poly: Poly
    index: int

    def box(self, precision=BASE_RADIUS) -> ComplexBall:
        return isolate_roots(self.min_poly, precision)[self.index]

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    @property
    def is_real(self) -> bool:
        # real-axis-centred disks isolate real roots (conjugate symmetry)
        return self.box().center.im == 0

    def conjugate(self) -> AlgebraicNumber:
        if self.is_real:
            return self
        target = self.box().conjugate()
        boxes = isolate_roots(self.min_poly)
        return AlgebraicNumber(self.min_poly, boxes.index(target))

    def galois_conjugates(self) -> list[AlgebraicNumber]:
        """All other roots of the minimal polynomial."""
        return [AlgebraicNumber(self.min_poly, i) for i in range(self.degree) if i != self.index]

    @property
    def is_algebraic_integer(self) -> bool:
        return self.min_poly.is_integral()

    def to_complex(self) -> complex:
        return self.box().to_complex()

    def __repr__(self) -> str:
        z = self.to_complex()
        num = f"{z.real:.6g}" if z.imag == 0 else f"{z.real:.6g}{z.imag:+.6g}i"
        return f"AlgebraicNumber({num}, root of {self.min_poly})"


def sort_key(a: AlgebraicNumber):
    return (a.degree, a.min_poly.coeffs, a.index)


def roots_of(p: Poly) -> list[AlgebraicNumber]:
    """All roots of a monic irreducible polynomial, in canonical order."""
    p = p.monic()
    return [AlgebraicNumber(p, i) for i in range(p.degree)]


# exact comparison of |product| values ------------------------------------------


@lru_cache(maxsize=None)
def _abs2_poly(p: Poly) -> Poly:
    """Squarefree polynomial vanishing at |z|^2 for every root z of p."""
    return squarefree_part(composed_product(p, p))


def _product_abs2_poly(items: tuple[AlgebraicNumber, ...]) -> Poly:
    acc = Poly([-1, 1])
    for a in items:
        q = _abs2_poly(a.min_poly)
        if acc.degree * q.degree > MAX_DEGREE:
            raise DomainError("exact modulus comparison exceeds the supported polynomial degree")
        acc = squarefree_part(composed_product(acc, q))
    return acc


def product_abs2_interval(items: Iterable[AlgebraicNumber], precision) -> tuple[Fraction, Fraction]:
    """Certified interval for ``prod |a|^2`` using root disks of the given radius."""
    lo, hi = Fraction(1), Fraction(1)
    for a in items:
        l, h = a.box(precision).abs2_bounds()
        lo, hi = lo * l, hi * h
    return lo, hi


def _value_ball(items, target):
    rr = target
    while True:
        lo, hi = product_abs2_interval(items, rr)
        if hi - lo <= 2 * target:
            return ComplexBall(QQi((lo + hi) / 2), (hi - lo) / 2)
        rr = rr / 2**32


def compare_abs_products(s: Iterable[AlgebraicNumber], t: Iterable[AlgebraicNumber]) -> int:
    """Sign of ``|prod s| - |prod t|``, decided exactly.

    Common elements are cancelled first. Certified intervals settle strict
    inequalities; when they overlap, both squared moduli are located among
    the isolated roots of one polynomial that vanishes at each of them, and
    they are equal iff they fall in the same root disk.
    """
    cs, ct = Counter(s), Counter(t)
    common = cs & ct
    cs, ct = _fold_orbits(cs - common), _fold_orbits(ct - common)
    common = cs & ct
    cs, ct = cs - common, ct - common
    s_items = tuple(sorted(cs.elements(), key=sort_key))
    t_items = tuple(sorted(ct.elements(), key=sort_key))
    if not s_items and not t_items:
        return 0
    r = BASE_RADIUS
    checked_equal = False
    while True:
        slo, shi = product_abs2_interval(s_items, r)
        tlo, thi = product_abs2_interval(t_items, r)
        if shi < tlo:
            return -1
        if thi < slo:
            return 1
        if not checked_equal:
            checked_equal = True
            if _equal_abs2(s_items, t_items):
                return 0
        if r < Fraction(1, 2 ** (MAX_BITS - 64)):
            raise ArithmeticError("modulus comparison failed to separate distinct values")
        r = r / 2**32


def _fold_orbits(c: Counter) -> Counter:
    """Replace each complete set of conjugates by the modulus of its norm."""
    out = Counter(c)
    norm = Fraction(1)
    for p in {a.min_poly for a in c}:
        if p.degree == 1:
            continue
        orbit = roots_of(p)
        k = min(out[a] for a in orbit)
        if k:
            for a in orbit:
                out[a] -= k
            norm *= abs(p.coeffs[0]) ** k
    out = +out
    if norm != 1:
        # rational values are kept as a single degree-one factor
        for a in [a for a in out if a.degree == 1]:
            norm *= abs(a.min_poly.coeffs[0]) ** out.pop(a)
        out[roots_of(Poly([-norm, 1]))[0]] += 1
    return out


def _equal_abs2(s_items, t_items) -> bool:
    ps = _product_abs2_poly(s_items)
    pt = _product_abs2_poly(t_items)
    joint = squarefree_part(ps * pt)
    i = locate_root(joint, lambda r: _value_ball(s_items, r))
    j = locate_root(joint, lambda r: _value_ball(t_items, r))
    if i is None or j is None:
        raise ArithmeticError("squared modulus not located among its polynomial's roots")
    return i == j


def compare_abs(a: AlgebraicNumber, b: AlgebraicNumber) -> int:
    """Sign of ``|a| - |b|``."""
    return compare_abs_products([a], [b])


def abs_exceeds_one(a: AlgebraicNumber) -> bool:
    return compare_abs_products([a], []) > 0
