"""Tile substitution rules with exact algebraic offsets.

A rule lists, for each tile type, the children of the expanded tile:
``phi(T_i) = union_j (T_{i_j} + d_{i_j})``. Translations and offsets are
vectors with coordinates in a number field (see :mod:`selfaffine.fieldlinalg`),
so patches, control points and every identity between them are exact.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import fieldlinalg as fl
from .errors import DomainError, InputError, PreconditionError
from .expansion import Spectrum, matrix_spectrum
from .fieldlinalg import Matrix, Vector
from .numbers import AlgebraicNumber, NumberField, NumberFieldSpec, Poly, compare_abs
from .numbers.algebraic import product_abs2_interval
from .numbers.gauss import sqrt_bounds

VOLUME_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Child:
    type: str
    offset: Vector


@dataclass(frozen=True)
class TileType:
    name: str
    children: tuple[Child, ...]
    control_child: int = 0
    seed_polygon: tuple[tuple[float, float], ...] | None = None


@dataclass(frozen=True)
class SubstitutionRule:
    field_spec: NumberFieldSpec
    expansion: Matrix
    tiles: tuple[TileType, ...]
    name: str = ""

    def __post_init__(self):
        fl.check_coupling(self.expansion, self.field_spec)
        names = [t.name for t in self.tiles]
        if len(set(names)) != len(names):
            raise InputError("tile type names must be unique")
        n = self.dimension
        for t in self.tiles:
            if not t.children:
                raise InputError(f"tile type {t.name!r} has no children")
            if not 0 <= t.control_child < len(t.children):
                raise InputError(f"control_child of {t.name!r} is out of range")
            for c in t.children:
                if c.type not in names:
                    raise InputError(f"tile type {t.name!r} has a child of unknown type {c.type!r}")
                if len(c.offset) != n:
                    raise InputError(f"offset of a child of {t.name!r} has the wrong dimension")

    @property
    def dimension(self) -> int:
        """Number of coordinate axes (a complex axis counts once)."""
        return len(self.field_spec.embeddings)

    @property
    def real_dimension(self) -> int:
        return self.field_spec.real_dimension

    @property
    def type_names(self) -> list[str]:
        return [t.name for t in self.tiles]

    def tile(self, name: str) -> TileType:
        for t in self.tiles:
            if t.name == name:
                return t
        raise KeyError(name)

    def apply(self, v: Vector) -> Vector:
        return fl.matvec(self.expansion, v)

    def zero(self) -> Vector:
        return fl.zero_vector(self.field_spec)

    def spectrum(self) -> Spectrum:
        return fl.field_matrix_spectrum(self.expansion, self.field_spec)

    def numeric(self, v: Vector) -> list[float]:
        return fl.real_coords(self.field_spec, v)


# subdivision matrix ---------------------------------------------------------


@dataclass(frozen=True)
class SubdivisionMatrix:
    types: tuple[str, ...]
    m: tuple[tuple[int, ...], ...]

    def as_list(self) -> list[list[int]]:
        return [list(r) for r in self.m]


def subdivision_matrix(rule: SubstitutionRule) -> SubdivisionMatrix:
    """``m[i][j]`` = number of type-j children of a type-i tile."""
    names = rule.type_names
    idx = {n: k for k, n in enumerate(names)}
    rows = []
    for t in rule.tiles:
        row = [0] * len(names)
        for c in t.children:
            row[idx[c.type]] += 1
        rows.append(tuple(row))
    return SubdivisionMatrix(tuple(names), tuple(rows))


def _as_int_rows(m) -> list[list[int]]:
    if isinstance(m, SubdivisionMatrix):
        return m.as_list()
    return [[int(v) for v in r] for r in m]


def is_primitive(m) -> bool:
    """True iff some power of the nonnegative matrix is strictly positive.

    Checks boolean powers up to ``n^2`` (Wielandt's bound is ``(n-1)^2 + 1``).
    """
    rows = _as_int_rows(m)
    n = len(rows)
    if any(v < 0 for r in rows for v in r):
        raise DomainError("subdivision matrix must be nonnegative")
    shadow = [[v > 0 for v in r] for r in rows]
    power = shadow
    for _ in range(max(1, n * n)):
        if all(all(r) for r in power):
            return True
        power = [[any(power[i][k] and shadow[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return False


def perron_frobenius_eigenvalue(m) -> AlgebraicNumber:
    """The dominant real eigenvalue of a primitive matrix, as an algebraic number."""
    rows = _as_int_rows(m)
    if not is_primitive(rows):
        raise PreconditionError("subdivision matrix is not primitive")
    spec = matrix_spectrum(rows)
    best = None
    for a in spec:
        if a.is_real and a.to_complex().real > 0 and (best is None or compare_abs(a, best) > 0):
            best = a
    return best


@dataclass(frozen=True)
class VolumeReport:
    pf_eigenvalue: float
    abs_det: float
    difference: float
    consistent: bool
    pf_min_poly: Poly

    def to_json(self) -> dict:
        return {
            "pf_eigenvalue": float(f"{self.pf_eigenvalue:.15g}"),
            "pf_min_poly": self.pf_min_poly.to_json(),
            "abs_det": float(f"{self.abs_det:.15g}"),
            "difference": float(f"{self.difference:.3g}"),
            "consistent": self.consistent,
        }


def abs_det_interval(rule: SubstitutionRule, precision=Fraction(1, 2**80)) -> tuple[Fraction, Fraction]:
    """Certified interval for ``|det phi|`` (product of eigenvalue moduli)."""
    lo2, hi2 = product_abs2_interval(rule.spectrum().elements(), precision)
    lo, _ = sqrt_bounds(lo2, 100)
    _, hi = sqrt_bounds(hi2, 100)
    return lo, hi


def volume_consistency(rule: SubstitutionRule, tolerance: float = VOLUME_TOLERANCE) -> VolumeReport:
    """Compare the Perron-Frobenius eigenvalue of ``m`` with ``|det phi|``."""
    sm = subdivision_matrix(rule)
    pf = perron_frobenius_eigenvalue(sm)
    box = pf.box(Fraction(1, 2**80))
    pf_val = box.center.re
    lo, hi = abs_det_interval(rule)
    det_val = (lo + hi) / 2
    # both sides are certified; the tolerance only has to absorb interval widths
    diff = abs(pf_val - det_val) + box.radius + (hi - lo) / 2
    return VolumeReport(float(pf_val), float(det_val), float(diff), diff <= Fraction(tolerance), pf.min_poly)


# patches -----------------------------------------------------------------------


@dataclass(frozen=True)
class Patch:
    tiles: tuple[tuple[str, Vector], ...]
    level: int = 0

    def counts(self) -> Counter:
        return Counter(t for t, _ in self.tiles)

    def __len__(self) -> int:
        return len(self.tiles)

    def as_multiset(self) -> Counter:
        return Counter(self.tiles)


def seed_patch(rule: SubstitutionRule, tile_type: str) -> Patch:
    rule.tile(tile_type)
    return Patch(((tile_type, rule.zero()),), 0)


def _expand_once(rule: SubstitutionRule, patch: Patch) -> Patch:
    out = []
    children = {t.name: t.children for t in rule.tiles}
    for name, v in patch.tiles:
        base = rule.apply(v)
        for c in children[name]:
            out.append((c.type, fl.vadd(base, c.offset)))
    if len(set(out)) != len(out):
        raise InputError("expanded patch contains a repeated tile; the rule's children overlap")
    return Patch(tuple(out), patch.level + 1)


def expand_patch(rule: SubstitutionRule, patch: Patch, k: int) -> Patch:
    """Apply ``k`` rounds of inflate-and-subdivide: ``(t, v) -> {(t_j, phi v + d_j)}``."""
    if k < 0:
        raise DomainError("number of levels must be nonnegative")
    for _ in range(k):
        patch = _expand_once(rule, patch)
    return patch


def tile_count_matrix(rule: SubstitutionRule, k: int) -> list[list[int]]:
    """Type counts of level-``k`` patches by direct expansion (row = seed type)."""
    names = rule.type_names
    out = []
    for t in names:
        counts = expand_patch(rule, seed_patch(rule, t), k).counts()
        out.append([counts[n] for n in names])
    return out


# control points ------------------------------------------------------------------


def control_points(rule: SubstitutionRule) -> dict[str, Vector]:
    """Exact control point of each tile type (at the origin-translated tile).

    With ``s(i)`` the control child's type and ``d_i`` its offset, the points
    satisfy ``phi c_i = c_{s(i)} + d_i``. On a cycle ``i_0 -> ... -> i_{L-1}``
    this gives ``(phi^L - I) c_{i_0} = sum_j phi^(L-1-j) d_{i_j}``; types off
    the cycle follow from ``c_i = phi^{-1}(c_{s(i)} + d_i)``.
    """
    sigma = {}
    offset = {}
    for t in rule.tiles:
        c = t.children[t.control_child]
        sigma[t.name] = c.type
        offset[t.name] = c.offset
    phi = rule.expansion
    spec = rule.field_spec
    points: dict[str, Vector] = {}
    for start in rule.type_names:
        if start in points:
            continue
        path = [start]
        while sigma[path[-1]] not in path and sigma[path[-1]] not in points:
            path.append(sigma[path[-1]])
        nxt = sigma[path[-1]]
        if nxt not in points:
            cycle = path[path.index(nxt):]
            length = len(cycle)
            rhs = rule.zero()
            for j, name in enumerate(cycle):
                rhs = fl.vadd(rhs, fl.matvec(fl.matpow(phi, length - 1 - j, spec), offset[name]))
            lhs = fl.matsub(fl.matpow(phi, length, spec), fl.identity(spec))
            try:
                c0 = fl.solve(lhs, rhs)
            except ArithmeticError as exc:
                raise ArithmeticError("phi^k - I is singular; the expansion cannot be expanding") from exc
            points[cycle[0]] = c0
            for j in range(length - 1):
                points[cycle[j + 1]] = fl.vsub(rule.apply(points[cycle[j]]), offset[cycle[j]])
            path = path[: path.index(nxt)]
        for name in reversed(path):
            points[name] = fl.solve(phi, fl.vadd(points[sigma[name]], offset[name]))
    return {n: points[n] for n in rule.type_names}


def control_point_of(points: Mapping[str, Vector], tile: tuple[str, Vector]) -> Vector:
    name, v = tile
    return fl.vadd(points[name], v)


def check_control_identity(rule: SubstitutionRule, points: Mapping[str, Vector]) -> bool:
    for t in rule.tiles:
        c = t.children[t.control_child]
        if rule.apply(points[t.name]) != fl.vadd(points[c.type], c.offset):
            return False
    return True


def verify_control_invariance(rule: SubstitutionRule, k: int) -> bool:
    """``phi`` maps control points of level-k patches into those of level k+1."""
    if k < 1:
        raise DomainError("k must be at least 1")
    points = control_points(rule)
    for name in rule.type_names:
        pk = expand_patch(rule, seed_patch(rule, name), k)
        pk1 = _expand_once(rule, pk)
        targets = {control_point_of(points, t) for t in pk1.tiles}
        for t in pk.tiles:
            if rule.apply(control_point_of(points, t)) not in targets:
                return False
    return True


# serialization ----------------------------------------------------------------


def field_spec_from_json(data: Mapping) -> NumberFieldSpec:
    poly = Poly.from_json(data["min_poly"])
    fld = NumberField(poly, check=poly.degree > 1)
    embeddings = []
    for approx in data["embeddings"]:
        re, im = (float(v) for v in approx)
        embeddings.append(NumberFieldSpec.select_root(poly, complex(re, im)))
    return NumberFieldSpec(fld, tuple(embeddings))


def field_spec_to_json(spec: NumberFieldSpec) -> dict:
    emb = []
    for i in range(len(spec.embeddings)):
        z = spec.axis_root(i).to_complex()
        emb.append([repr(z.real), repr(z.imag)])
    return {"min_poly": spec.min_poly.to_json(), "embeddings": emb}


def rule_from_json(data: Mapping) -> SubstitutionRule:
    try:
        spec = field_spec_from_json(data["field"])
        phi = tuple(tuple(fl.parse_elem(spec, x) for x in row) for row in data["expansion"])
        tiles = []
        for t in data["tiles"]:
            children = tuple(Child(str(c["type"]), fl.parse_vector(spec, c["offset"])) for c in t["children"])
            poly = t.get("seed_polygon")
            poly = tuple((float(p[0]), float(p[1])) for p in poly) if poly else None
            tiles.append(TileType(str(t["name"]), children, int(t.get("control_child", 0)), poly))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InputError(f"malformed substitution rule: {exc!r}") from exc
    return SubstitutionRule(spec, phi, tuple(tiles), str(data.get("name", "")))


def rule_to_json(rule: SubstitutionRule) -> dict:
    return {
        "schema_version": 1,
        "kind": "substitution",
        "name": rule.name,
        "field": field_spec_to_json(rule.field_spec),
        "expansion": [[x.to_json() for x in row] for row in rule.expansion],
        "tiles": [
            {
                "name": t.name,
                "children": [{"type": c.type, "offset": fl.vector_json(c.offset)} for c in t.children],
                "control_child": t.control_child,
                **({"seed_polygon": [list(p) for p in t.seed_polygon]} if t.seed_polygon else {}),
            }
            for t in rule.tiles
        ],
    }


def patch_to_json(rule: SubstitutionRule, patch: Patch) -> list[dict]:
    return [
        {
            "type": name,
            "translation_exact": fl.vector_json(v),
            "translation_numeric": [float(f"{x:.15g}") for x in rule.numeric(v)],
            "level": patch.level,
        }
        for name, v in patch.tiles
    ]


def patch_polygons(rule: SubstitutionRule, patch: Patch) -> list[tuple[str, list[tuple[float, float]]]]:
    """Seed polygons placed at each tile's translation (2D rendering only)."""
    out = []
    for name, v in patch.tiles:
        poly = rule.tile(name).seed_polygon
        if not poly:
            continue
        xy = rule.numeric(v)
        dx = xy[0]
        dy = xy[1] if len(xy) > 1 else 0.0
        out.append((name, [(x + dx, y + dy) for x, y in poly]))
    return out
