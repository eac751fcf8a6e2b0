"""Dense univariate polynomials over the rationals.

Coefficients are stored constant term first, e.g. ``x^3 + x + 1`` is
``Poly([1, 1, 0, 1])``. Instances are immutable and hashable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd as _igcd
from math import lcm as _ilcm
from typing import Iterable, Sequence

from ..errors import DomainError, PreconditionError, ShapeError

MAX_DEGREE = 64


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c.strip())
    if isinstance(c, float):
        raise TypeError("float coefficients are not exact; pass int, Fraction or str")
    return Fraction(c)


class Poly:
    """Polynomial with :class:`~fractions.Fraction` coefficients.

    ``Poly([c0, c1, ..., cn])`` represents ``c0 + c1*x + ... + cn*x^n``.
    Trailing zeros are stripped so the representation is canonical; the zero
    polynomial has an empty coefficient tuple and degree ``-1``.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> Poly:
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> Poly:
        return reduce(lambda acc, r: acc * cls([-_frac(r), 1]), roots, cls([1]))

    @classmethod
    def from_json(cls, data: Sequence[str]) -> Poly:
        return cls(_frac(c) for c in data)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    # basic properties ------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("Poly", self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return NotImplemented

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power")
        result, base = Poly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv_lc = 1 / other.lc
        if len(rem) - 1 < dq:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv_lc
            if c == 0:
                continue
            quot[k - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= c * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = divmod(self, other)
        if not r.is_zero():
            raise DomainError(f"{other} does not divide {self}")
        return q

    def divides(self, other: Poly) -> bool:
        """True if ``self`` divides ``other``."""
        return (other % self).is_zero()

    def __call__(self, x):
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Poly:
        return Poly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def monic(self) -> Poly:
        if self.is_zero():
            raise DomainError("zero polynomial has no monic form")
        return self * (1 / self.lc)

    def primitive(self) -> Poly:
        """Integer polynomial with coprime coefficients and positive leading term."""
        if self.is_zero():
            return self
        den = _ilcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(_igcd, ints)
        if ints[-1] < 0:
            g = -g
        return Poly(Fraction(c // g) for c in ints)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise DomainError(f"{self} does not have integer coefficients")
        return [int(c) for c in self.coeffs]

    def compose(self, other: Poly) -> Poly:
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def reverse(self, degree: int | None = None) -> Poly:
        d = self.degree if degree is None else degree
        return Poly(self[d - k] for k in range(d + 1))

    def scale_var(self, s) -> Poly:
        """Return ``p(s*x)``."""
        s = _frac(s)
        return Poly(c * s**k for k, c in enumerate(self.coeffs))

    def cauchy_bound(self) -> Fraction:
        """Every root has modulus strictly below this bound."""
        if self.degree < 1:
            return Fraction(1)
        lc = abs(self.lc)
        return 1 + max(abs(c) / lc for c in self.coeffs[:-1])


X = Poly.x()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a if a.is_zero() else a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = Poly([1]), Poly()
    t0, t1 = Poly(), Poly([1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def is_squarefree(p: Poly) -> bool:
    return poly_gcd(p, p.derivative()).degree == 0


def squarefree_part(p: Poly) -> Poly:
    """Monic product of the distinct irreducible factors of ``p``."""
    if p.is_zero():
        raise DomainError("zero polynomial")
    if p.degree == 0:
        return Poly([1])
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic squarefree ``a_i`` with ``p ~ prod a_i**i``."""
    if p.is_zero():
        raise DomainError("zero polynomial")
    p = p.monic()
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        if a.degree > 0:
            out.append((a, i))
        d = c - b.derivative()
        i += 1
    return out


# matrices ---------------------------------------------------------------


def as_fraction_matrix(a) -> list[list[Fraction]]:
    rows = [[_frac(v) for v in row] for row in a]
    if any(len(r) != len(rows) for r in rows):
        raise ShapeError("matrix must be square")
    return rows


def char_poly(a) -> Poly:
    """Characteristic polynomial ``det(xI - A)`` of a square rational matrix.

    Faddeev-LeVerrier recurrence; the only divisions are by the step index.
    """
    m = as_fraction_matrix(a)
    n = len(m)
    if n == 0:
        return Poly([1])
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    # M_k = A @ M_{k-1} + c_{n-k+1} I, starting from M_0 = 0.
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        prod = _matmul(m, mk)
        for i in range(n):
            prod[i][i] += c_prev
        mk = prod
        am = _matmul(m, mk)
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return Poly(coeffs)


def _matmul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x == 0:
                continue
            bt = b[t]
            for j in range(m):
                oi[j] += x * bt[j]
    return out


def matrix_poly_eval(p: Poly, a) -> list[list[Fraction]]:
    """Evaluate ``p(A)`` exactly by Horner's scheme."""
    m = as_fraction_matrix(a)
    n = len(m)
    acc = [[Fraction(0)] * n for _ in range(n)]
    for c in reversed(p.coeffs):
        acc = _matmul(acc, m)
        for i in range(n):
            acc[i][i] += c
    return acc


def companion_matrix(p: Poly) -> list[list[Fraction]]:
    """Companion matrix of a monic polynomial (ones on the subdiagonal)."""
    if not p.is_monic():
        raise PreconditionError(f"companion matrix needs a monic polynomial, got {p}")
    n = p.degree
    c = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n):
        c[i][i - 1] = Fraction(1)
    for i in range(n):
        c[i][n - 1] = -p.coeffs[i]
    return c


def determinant(a) -> Fraction:
    """Exact determinant by Gaussian elimination over Q."""
    m = [row[:] for row in as_fraction_matrix(a)]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        pv = m[col][col]
        det *= pv
        for r in range(col + 1, n):
            f = m[r][col] / pv
            if f:
                for j in range(col, n):
                    m[r][j] -= f * m[col][j]
    return det


def resultant(p: Poly, q: Poly) -> Fraction:
    """Resultant of two rational polynomials via the Sylvester determinant."""
    if p.is_zero() or q.is_zero():
        return Fraction(0)
    m, n = p.degree, q.degree
    if m == 0 and n == 0:
        return Fraction(1)
    if m == 0:
        return p.lc**n
    if n == 0:
        return q.lc**m
    size = m + n
    syl = [[Fraction(0)] * size for _ in range(size)]
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        syl[i][i : i + m + 1] = pc
    for i in range(m):
        syl[n + i][i : i + n + 1] = qc
    return determinant(syl)


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Poly:
    """Newton divided-difference interpolation through the given points."""
    n = len(xs)
    dd = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    acc = Poly([dd[-1]])
    for i in range(n - 2, -1, -1):
        acc = acc * Poly([-xs[i], 1]) + dd[i]
    return acc


def composed_product(p: Poly, q: Poly) -> Poly:
    """Monic polynomial whose roots are all products ``a*b`` of roots of p and q.

    Computed as ``Res_y(p(y), y^m q(x/y))`` with ``m = deg q``, by evaluating
    the resultant at ``deg p * deg q + 1`` integer points and interpolating.
    """
    if not (p.is_monic() and q.is_monic()):
        raise PreconditionError("composed_product needs monic inputs")
    dp, dq = p.degree, q.degree
    if dp * dq > MAX_DEGREE * MAX_DEGREE:
        raise DomainError("composed product degree too large")
    rev = q.coeffs  # y^m q(x/y) = sum_k q_k x^k y^(m-k)
    xs, ys = [], []
    for t in range(dp * dq + 1):
        x0 = Fraction(t)
        g = Poly(rev[dq - j] * x0 ** (dq - j) for j in range(dq + 1))
        xs.append(x0)
        ys.append(resultant(p, g))
    r = interpolate(xs, ys)
    if r.degree != dp * dq or r.lc != 1:
        # lc(p) = 1 makes the resultant monic in x; anything else is a bug.
        raise ArithmeticError("composed product interpolation failed")
    return r
