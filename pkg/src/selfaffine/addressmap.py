"""The group J generated by control points, its address map, and the matrix M.

A vector with number-field coordinates is flattened to the rational vector of
its power-basis coefficients, axis after axis. J is then a lattice in that
rational space; its free generators come from a column Hermite normal form,
and ``M`` is read off from the addresses of ``phi v_j`` so that ``phi V = V M``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import fieldlinalg as fl
from .errors import DomainError, NotInvariantError, NotStabilizedError
from .expansion import Spectrum, is_diagonalizable
from .fieldlinalg import Vector
from .hnf import column_hnf, solve_in_lattice
from .numbers import NumberField, NumberFieldSpec, Poly, char_poly
from .substitution import (
    SubstitutionRule,
    control_point_of,
    control_points,
    expand_patch,
    seed_patch,
)

DEFAULT_K_MAX = 8
MAX_LIPSCHITZ_PAIRS = 20000


def flatten(v: Vector) -> tuple[Fraction, ...]:
    return tuple(c for x in v for c in x.coeffs)


def unflatten(q: Sequence[Fraction], field: NumberField) -> Vector:
    d = field.degree
    return tuple(field(list(q[i:i + d])) for i in range(0, len(q), d))


def _canonical_sign(v: Vector) -> Vector:
    for c in flatten(v):
        if c:
            return v if c > 0 else fl.vneg(v)
    return v


def _sort_key(v: Vector):
    return flatten(v)


def _patch_points(rule: SubstitutionRule, k: int, points=None) -> list[list[Vector]]:
    points = points or control_points(rule)
    return [
        [control_point_of(points, t) for t in expand_patch(rule, seed_patch(rule, name), k).tiles]
        for name in rule.type_names
    ]


def collect_differences(rule: SubstitutionRule, k: int) -> list[Vector]:
    """Nonzero control-point differences inside the level-k patches, one per sign pair."""
    if k < 1:
        raise DomainError("k must be at least 1")
    out = set()
    for pts in _patch_points(rule, k):
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                d = fl.vsub(pts[j], pts[i])
                if any(not x.is_zero() for x in d):
                    out.add(_canonical_sign(d))
    return sorted(out, key=_sort_key)


def _module_generators(rule: SubstitutionRule, k: int, points) -> list[Vector]:
    # differences to one base point per patch span the same group as all
    # pairwise differences, and keep the input linear in the patch size
    out = {points[rule.type_names[0]]}
    for pts in _patch_points(rule, k, points):
        base = pts[0]
        for p in pts[1:]:
            out.add(fl.vsub(p, base))
    return sorted(out, key=_sort_key)


@dataclass(frozen=True)
class ZModuleBasis:
    """Free generators (columns of V) of the group spanned by some vectors.

    ``hnf`` and ``pivots`` describe the lattice ``denominator * J`` in
    flattened coordinates; ``transform[i]`` holds the integer coordinates of
    the i-th input vector.
    """

    field: NumberField | None
    axes: int
    hnf: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]
    denominator: int
    transform: tuple[tuple[int, ...], ...] = ()

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def generators(self) -> list[Vector]:
        if self.field is None:
            return []
        cols = []
        for j in range(self.rank):
            q = [Fraction(row[j], self.denominator) for row in self.hnf]
            cols.append(unflatten(q, self.field))
        return cols

    def normal_form(self) -> tuple:
        """Canonical data identifying the lattice (generators as rationals)."""
        return tuple(tuple(Fraction(x, self.denominator) for x in row) for row in self.hnf)

    def coordinates(self, v: Vector) -> list[int] | None:
        """Integer coordinates of ``v`` in the generators, or ``None`` if ``v`` is outside."""
        q = [c * self.denominator for c in flatten(v)]
        if any(c.denominator != 1 for c in q):
            return None
        return solve_in_lattice(self.hnf, self.pivots, [int(c) for c in q])

    def combine(self, coords: Sequence[int]) -> Vector:
        gens = self.generators
        acc = tuple(self.field.zero() for _ in range(self.axes))
        for c, g in zip(coords, gens):
            if c:
                acc = fl.vadd(acc, fl.vscale(self.field(c), g))
        return acc


def zmodule_basis(vectors: Iterable[Vector], with_transform: bool = True) -> ZModuleBasis:
    vectors = list(vectors)
    if not vectors:
        return ZModuleBasis(None, 0, (), (), 1, ())
    field = vectors[0][0].field
    axes = len(vectors[0])
    flat = [flatten(v) for v in vectors]
    den = 1
    for q in flat:
        for c in q:
            den = den * c.denominator // math.gcd(den, c.denominator)
    columns = [[int(c * den) for c in q] for q in flat]
    rows = [list(r) for r in zip(*columns)]
    h, pivots = column_hnf(rows)
    # a common factor of all entries can be folded into the denominator
    g = 0
    for row in h:
        for x in row:
            g = math.gcd(g, x)
    g = math.gcd(g, den) if g else 1
    h = [[x // g for x in row] for row in h]
    basis = ZModuleBasis(field, axes, tuple(tuple(r) for r in h), tuple(pivots), den // g)
    if not with_transform:
        return basis
    transform = []
    for v in vectors:
        c = basis.coordinates(v)
        if c is None:
            raise ArithmeticError("input vector not reproduced by its own normal form")
        transform.append(tuple(c))
    return ZModuleBasis(field, axes, basis.hnf, basis.pivots, basis.denominator, tuple(transform))


@dataclass(frozen=True)
class AddressMap:
    basis: ZModuleBasis
    rule: SubstitutionRule
    level: int
    points: dict

    @property
    def rank(self) -> int:
        return self.basis.rank

    def address(self, xi: Vector) -> list[int]:
        a = self.basis.coordinates(xi)
        if a is None:
            raise DomainError("vector is not in the module J")
        return a

    def control_point_set(self, k: int | None = None) -> list[Vector]:
        k = self.level if k is None else k
        pts = {p for group in _patch_points(self.rule, k, self.points) for p in group}
        return sorted(pts, key=_sort_key)


def stabilized_address_map(rule: SubstitutionRule, k_max: int = DEFAULT_K_MAX) -> AddressMap:
    """Grow J level by level from ``k = 2`` until its normal form repeats."""
    if k_max < 2:
        raise DomainError("k_max must be at least 2")
    points = control_points(rule)
    prev = None
    forms = []
    for k in range(2, k_max + 1):
        basis = zmodule_basis(_module_generators(rule, k, points), with_transform=False)
        forms.append(basis.normal_form())
        if prev is not None and basis.normal_form() == prev.normal_form():
            return AddressMap(basis, rule, k, points)
        prev = basis
    raise NotStabilizedError(f"module not stabilized by level {k_max}", forms[-2:])


@dataclass(frozen=True)
class ExpansionOnJ:
    M: tuple[tuple[int, ...], ...]
    address_map: AddressMap
    integral: bool
    phi_v_equals_v_m: bool
    address_equivariant: bool


def expansion_on_J(amap: AddressMap, phi=None) -> ExpansionOnJ:
    phi = amap.rule.expansion if phi is None else phi
    basis = amap.basis
    gens = basis.generators
    cols = []
    for j, v in enumerate(gens):
        c = basis.coordinates(fl.matvec(phi, v))
        if c is None:
            raise NotInvariantError(f"module not forward-invariant at level {amap.level}: phi v_{j} lies outside J")
        cols.append(c)
    n = basis.rank
    m = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    exact = all(basis.combine(cols[j]) == fl.matvec(phi, gens[j]) for j in range(n))
    equivariant = True
    for xi in amap.control_point_set():
        a = amap.address(xi)
        b = basis.coordinates(fl.matvec(phi, xi))
        if b is None or b != [sum(m[i][j] * a[j] for j in range(n)) for i in range(n)]:
            equivariant = False
            break
    return ExpansionOnJ(m, amap, True, exact, equivariant)


# verification report -----------------------------------------------------------


def _numeric_points(spec: NumberFieldSpec, vectors: Sequence[Vector]) -> np.ndarray:
    if not vectors:
        return np.zeros((0, spec.real_dimension))
    d = spec.field.degree
    cols = []
    for i in range(len(spec.embeddings)):
        z = spec.axis_root(i).to_complex()
        powers = np.array([z ** e for e in range(d)])
        coeffs = np.array([[float(c) for c in v[i].coeffs] for v in vectors])
        vals = coeffs @ powers
        cols.append(vals.real)
        if not spec.axis_is_real(i):
            cols.append(vals.imag)
    return np.stack(cols, axis=1)


def lipschitz_diagnostic(amap: AddressMap, k: int, seed: int = 0, max_pairs: int = MAX_LIPSCHITZ_PAIRS) -> float:
    """max ||a(x) - a(y)|| / ||x - y|| (max-norms) over control points of level k."""
    pts = amap.control_point_set(k)
    if len(pts) < 2:
        return 0.0
    addr = np.array([amap.address(p) for p in pts], dtype=float)
    num = _numeric_points(amap.rule.field_spec, pts)
    total = len(pts) * (len(pts) - 1) // 2
    if total <= max_pairs:
        ii, jj = np.triu_indices(len(pts), 1)
    else:
        rng = random.Random(seed)
        pairs = set()
        while len(pairs) < max_pairs:
            i, j = rng.randrange(len(pts)), rng.randrange(len(pts))
            if i != j:
                pairs.add((min(i, j), max(i, j)))
        ii, jj = (np.array(x) for x in zip(*sorted(pairs)))
    da = np.abs(addr[ii] - addr[jj]).max(axis=1)
    dx = np.abs(num[ii] - num[jj]).max(axis=1)
    return float((da / dx).max())


@dataclass(frozen=True)
class MReport:
    M: tuple[tuple[int, ...], ...]
    char_poly: Poly
    integral: bool
    diagonalizable: bool
    divisibility: dict
    lipschitz: dict

    @property
    def passed(self) -> bool:
        return self.integral and self.diagonalizable and all(self.divisibility.values())


def verify_M_properties(e: ExpansionOnJ, phi_spectrum: Spectrum | None = None) -> MReport:
    amap = e.address_map
    spectrum = phi_spectrum if phi_spectrum is not None else amap.rule.spectrum()
    m = [list(r) for r in e.M]
    cp = char_poly(m)
    div = {}
    for a in spectrum:
        key = str(a.min_poly)
        div[key] = (cp % a.min_poly).is_zero()
    lip = {str(k): lipschitz_diagnostic(amap, k) for k in (amap.level, amap.level + 1)}
    return MReport(e.M, cp, all(isinstance(x, int) for r in e.M for x in r), is_diagonalizable(m), div, lip)


def address_report(e: ExpansionOnJ, r: MReport) -> dict:
    amap = e.address_map
    return {
        "stabilized_level": amap.level,
        "rank": amap.rank,
        "generators": [fl.vector_json(v) for v in amap.basis.generators],
        "M": [list(row) for row in e.M],
        "char_poly": r.char_poly.to_json(),
        "checks": {
            "integral": r.integral,
            "diagonalizable": r.diagonalizable,
            "divisibility": r.divisibility,
            "phi_V_equals_V_M": e.phi_v_equals_v_m,
            "address_equivariant": e.address_equivariant,
        },
        "lipschitz_diagnostic": {k: float(f"{v:.6g}") for k, v in r.lipschitz.items()},
    }
