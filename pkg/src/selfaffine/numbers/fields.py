"""Number fields Q(theta) = Q[x]/(p) with exact arithmetic and numeric embeddings."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from ..errors import DomainError, PreconditionError
from .algebraic import AlgebraicNumber
from .gauss import ComplexBall, sqrt_upper
from .factor import is_irreducible
from .polys import Poly, char_poly, poly_xgcd, squarefree_part
from .roots import BASE_RADIUS, isolate_roots


class NumberField:
    """The field Q[x]/(p) for a monic irreducible ``p``.

    Elements are :class:`FieldElem` coefficient vectors of length ``deg p`` in
    the power basis ``1, theta, ..., theta^(d-1)``.
    """

    def __init__(self, min_poly: Poly, check: bool = True):
        if not min_poly.is_monic():
            raise PreconditionError(f"defining polynomial must be monic, got {min_poly}")
        if check and not is_irreducible(min_poly):
            raise PreconditionError(f"defining polynomial {min_poly} is reducible over Q")
        self.min_poly = min_poly

    @classmethod
    def rationals(cls) -> NumberField:
        return cls(Poly([0, 1]), check=False)

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self) -> int:
        return hash(("NumberField", self.min_poly))

    def __repr__(self) -> str:
        return f"NumberField({self.min_poly})"

    def __call__(self, value) -> FieldElem:
        """Coerce an int, Fraction, Poly or coefficient sequence into the field."""
        if isinstance(value, FieldElem):
            if value.field != self:
                raise DomainError("element belongs to a different field")
            return value
        if isinstance(value, Poly):
            return FieldElem.from_poly(value, self)
        if isinstance(value, (int, Fraction, str)):
            return FieldElem.from_poly(Poly([value]), self)
        return FieldElem.from_poly(Poly(value), self)

    def zero(self) -> FieldElem:
        return self(0)

    def one(self) -> FieldElem:
        return self(1)

    @cached_property
    def gen(self) -> FieldElem:
        return self(Poly.x())


class FieldElem:
    __slots__ = ("coeffs", "field", "_hash")

    def __init__(self, coeffs: Sequence[Fraction], field: NumberField):
        if len(coeffs) != field.degree:
            raise DomainError("coefficient vector length must equal the field degree")
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        self.field = field
        self._hash = None

    @classmethod
    def from_poly(cls, p: Poly, field: NumberField) -> FieldElem:
        r = p % field.min_poly
        return cls([r[i] for i in range(field.degree)], field)

    def as_poly(self) -> Poly:
        return Poly(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def _other(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise DomainError("elements of different fields")
            return other
        return self.field(other)

    def __add__(self, other) -> FieldElem:
        o = self._other(other)
        return FieldElem([a + b for a, b in zip(self.coeffs, o.coeffs)], self.field)

    __radd__ = __add__

    def __neg__(self) -> FieldElem:
        return FieldElem([-a for a in self.coeffs], self.field)

    def __sub__(self, other) -> FieldElem:
        return self + (-self._other(other))

    def __rsub__(self, other) -> FieldElem:
        return self._other(other) - self

    def __mul__(self, other) -> FieldElem:
        o = self._other(other)
        return FieldElem.from_poly(self.as_poly() * o.as_poly(), self.field)

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        if self.is_zero():
            raise DomainError("inverse of zero in a number field")
        g, s, _ = poly_xgcd(self.as_poly(), self.field.min_poly)
        if g.degree != 0:
            raise DomainError("element is a zero divisor; defining polynomial is reducible")
        return FieldElem.from_poly(s, self.field)

    def __truediv__(self, other) -> FieldElem:
        return self * self._other(other).inverse()

    def __rtruediv__(self, other) -> FieldElem:
        return self._other(other) * self.inverse()

    def __pow__(self, k: int) -> FieldElem:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == self.field(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.coeffs, self.field))
        return self._hash

    def __repr__(self) -> str:
        return f"FieldElem({self.to_json()})"

    def __str__(self) -> str:
        return str(self.as_poly()).replace("x", "t")

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def multiplication_matrix(self) -> list[list[Fraction]]:
        """Matrix of ``y -> self*y`` on the power basis (columns are images)."""
        d = self.field.degree
        cols = [(self * self.field(Poly([0] * j + [1]))).coeffs for j in range(d)]
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def minimal_polynomial(self) -> Poly:
        # the characteristic polynomial is a power of the minimal polynomial
        return squarefree_part(char_poly(self.multiplication_matrix()))

    def is_algebraic_integer(self) -> bool:
        return self.minimal_polynomial().is_integral()


def field_arith(a: FieldElem, b: FieldElem | None, op: str, field: NumberField | None = None) -> FieldElem:
    """Functional front end: ``op`` is one of add, sub, mul, inv."""
    if field is not None:
        a = field(a)
        b = field(b) if b is not None else None
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown field operation {op!r}")


def eval_ball(q: Poly, theta: ComplexBall) -> ComplexBall:
    """Certified disk for ``q(t)`` over all ``t`` in ``theta``."""
    z = theta.center
    center = q(z)
    if theta.radius == 0 or q.degree < 1:
        return ComplexBall(center, Fraction(0))
    big_r = sqrt_upper(z.abs2()) + theta.radius
    lip = sum(k * abs(c) * big_r ** (k - 1) for k, c in enumerate(q.coeffs) if k > 0)
    return ComplexBall(center, theta.radius * lip)


@dataclass(frozen=True)
class NumberFieldSpec:
    """A number field together with one chosen complex embedding per axis.

    ``embeddings[i]`` is the index (in :func:`isolate_roots` order) of the root
    of the defining polynomial that theta is sent to on axis ``i``.
    """

    field: NumberField
    embeddings: tuple[int, ...]

    def __post_init__(self):
        n_roots = self.field.degree
        for e in self.embeddings:
            if not 0 <= e < n_roots:
                raise DomainError(f"embedding index {e} out of range for {self.field}")

    @property
    def min_poly(self) -> Poly:
        return self.field.min_poly

    def axis_root(self, axis: int) -> AlgebraicNumber:
        return AlgebraicNumber(self.field.min_poly, self.embeddings[axis])

    def axis_is_real(self, axis: int) -> bool:
        return self.axis_root(axis).is_real

    @property
    def real_dimension(self) -> int:
        return sum(1 if self.axis_is_real(i) else 2 for i in range(len(self.embeddings)))

    @staticmethod
    def select_root(min_poly: Poly, approx: complex) -> int:
        """Index of the root of ``min_poly`` nearest to ``approx``."""
        boxes = isolate_roots(min_poly)
        dists = [abs(b.to_complex() - approx) for b in boxes]
        best = min(range(len(boxes)), key=dists.__getitem__)
        ranked = sorted(dists)
        if len(ranked) > 1 and ranked[1] - ranked[0] < 1e-9:
            raise DomainError(f"approximation {approx} does not select a unique root of {min_poly}")
        return best


def embed(a: FieldElem, root: AlgebraicNumber | ComplexBall | int, precision=BASE_RADIUS) -> ComplexBall:
    """Certified numeric value of ``a`` with theta sent to the given root.

    ``root`` is an :class:`AlgebraicNumber` (or a root index) of the field's
    defining polynomial. The returned disk has radius at most ``precision``.
    """
    if isinstance(root, int):
        root = AlgebraicNumber(a.field.min_poly, root)
    if isinstance(root, ComplexBall):
        return eval_ball(a.as_poly(), root)
    if root.min_poly != a.field.min_poly:
        raise PreconditionError("embedding root is not a root of the field polynomial")
    q = a.as_poly()
    r = Fraction(precision)
    rr = r
    while True:
        ball = eval_ball(q, root.box(rr))
        if ball.radius <= r:
            return ball
        rr = rr / 2**32


def embed_many(elems: Iterable[FieldElem], root: AlgebraicNumber, precision=BASE_RADIUS) -> list[ComplexBall]:
    return [embed(e, root, precision) for e in elems]
