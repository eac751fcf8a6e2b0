"""Certified isolation of complex polynomial roots.

Approximations come from Aberth-Ehrlich simultaneous iteration in mpmath.
Each approximation ``z`` is then certified in exact rational arithmetic: the
disk of radius ``n |p(z)/p'(z)|`` around ``z`` contains a root of ``p`` (since
``|p'/p| <= n / dist(z, roots)``), so ``n`` pairwise-disjoint such disks each
hold exactly one root. Failed certification doubles the working precision up
to :data:`MAX_BITS`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath

from ..errors import PrecisionError, PreconditionError
from .gauss import ComplexBall, QQi, sqrt_upper
from .polys import Poly, is_squarefree

MAX_BITS = 1024
BASE_RADIUS = Fraction(1, 2**40)


def _aberth(p: Poly, bits: int, start=None):
    n = p.degree
    with mpmath.workprec(bits + 20):
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in p.coeffs]
        lc = cs[-1]
        cs = [c / lc for c in cs]
        dcs = [k * cs[k] for k in range(1, n + 1)]

        def ev(coeffs, z):
            acc = mpmath.mpc(0)
            for c in reversed(coeffs):
                acc = acc * z + c
            return acc

        if start is None:
            rad = max((abs(cs[k]) ** (mpmath.mpf(1) / (n - k)) for k in range(n)), default=1)
            rad = max(rad, mpmath.mpf(1) / 2)
            zs = [rad * mpmath.expj(2 * mpmath.pi * k / n + 0.4) for k in range(n)]
        else:
            zs = [mpmath.mpc(z) for z in start]
        tol = mpmath.mpf(2) ** (-bits)
        for _ in range(60 + 4 * bits):
            worst = mpmath.mpf(0)
            new = list(zs)
            for i, z in enumerate(zs):
                pz = ev(cs, z)
                if pz == 0:
                    continue
                dpz = ev(dcs, z)
                ratio = pz / dpz if dpz != 0 else mpmath.mpc(tol, tol)
                s = mpmath.fsum(1 / (z - w) for j, w in enumerate(new) if j != i and z != w)
                denom = 1 - ratio * s
                step = ratio / denom if denom != 0 else ratio
                new[i] = z - step
                worst = max(worst, abs(step) / max(1, abs(z)))
            zs = new
            if worst < tol:
                break
        return zs


def _snap_conjugates(p: Poly, zs, bits: int) -> list[QQi] | None:
    """Round approximations to rationals, enforcing conjugate symmetry."""
    n = p.degree
    eps = mpmath.mpf(2) ** (-(bits // 2))
    reals, uppers = [], []
    for z in zs:
        if abs(z.imag) <= eps * max(1, abs(z)):
            reals.append(z.real)
        elif z.imag > 0:
            uppers.append(z)
    if len(reals) + 2 * len(uppers) != n:
        return None
    out = [QQi(QQi.from_mpc(r).re) for r in reals]
    for z in uppers:
        q = QQi.from_mpc(z)
        out += [q, q.conjugate()]
    return out


def _round_center(q: QQi, bits: int) -> QQi:
    scale = 1 << (bits + 8)

    def rnd(x: Fraction) -> Fraction:
        return Fraction(round(x * scale), scale)

    return QQi(rnd(q.re), rnd(q.im))


def _certify(p: Poly, centers: list[QQi]) -> list[ComplexBall] | None:
    n = p.degree
    dp = p.derivative()
    balls = []
    for z in centers:
        pz = p(z)
        if pz.abs2() == 0:
            balls.append(ComplexBall(z, Fraction(0)))
            continue
        dpz = dp(z)
        d2 = dpz.abs2()
        if d2 == 0:
            return None
        r = n * sqrt_upper(pz.abs2() / d2, 64 + _bitlen(pz.abs2() / d2))
        balls.append(ComplexBall(z, r))
    for i in range(n):
        for j in range(i + 1, n):
            if balls[i].intersects(balls[j]):
                return None
    return balls


def _bitlen(q: Fraction) -> int:
    if q == 0:
        return 0
    return max(0, q.denominator.bit_length() - q.numerator.bit_length()) + 8


def _canonical_key(b: ComplexBall):
    return (b.center.re, b.center.im)


@lru_cache(maxsize=None)
def _isolate(p: Poly, radius: Fraction) -> tuple[ComplexBall, ...]:
    n = p.degree
    if n == 1:
        root = QQi(-p.coeffs[0] / p.coeffs[1])
        return (ComplexBall(root, Fraction(0)),)
    bits = max(64, _bitlen(radius) + 16)
    zs = None
    while bits <= MAX_BITS:
        zs = _aberth(p, bits, start=zs)
        centers = _snap_conjugates(p, zs, bits)
        if centers is not None:
            centers = [_round_center(c, bits) for c in centers]
            balls = _certify(p, centers)
            if balls is not None and all(b.radius <= radius for b in balls):
                return tuple(sorted(balls, key=_canonical_key))
        bits *= 2
    raise PrecisionError(f"could not certify roots of {p} to radius {float(radius):.3g} "
                         f"within {MAX_BITS} bits")


def isolate_roots(p: Poly, precision: Fraction | float = BASE_RADIUS) -> list[ComplexBall]:
    """Certified, pairwise-disjoint disks, one around each root of ``p``.

    ``p`` must be squarefree. The order is canonical: it is fixed once at a
    base precision (sorted by real part, then imaginary part) and finer
    isolations are matched back to it, so the ``i``-th disk always encloses the
    same root regardless of ``precision``.
    """
    if p.degree < 1:
        return []
    if not is_squarefree(p):
        raise PreconditionError(f"{p} is not squarefree; take its squarefree part first")
    p = p.monic()
    radius = Fraction(precision)
    base = _isolate(p, BASE_RADIUS)
    if radius >= BASE_RADIUS:
        return list(base)
    fine = _isolate(p, _quantize(radius))
    return _match(base, fine)


def _quantize(radius: Fraction) -> Fraction:
    # round the target down to a power of two so the cache stays small
    k = 0
    while Fraction(1, 2**k) > radius:
        k += 1
    return Fraction(1, 2**k)


def _match(base, fine) -> list[ComplexBall]:
    out: list[ComplexBall | None] = [None] * len(base)
    for f in fine:
        hits = [i for i, b in enumerate(base) if b.intersects(f)]
        if len(hits) != 1 or out[hits[0]] is not None:
            raise PrecisionError("refined root disks do not match the base isolation")
        out[hits[0]] = f
    return out  # type: ignore[return-value]


def locate_root(p: Poly, value_at) -> int | None:
    """Index of the isolated root of squarefree ``p`` equal to a given value.

    ``value_at(radius)`` must return a certified disk of at most that radius
    around a number known to be a root of ``p``. The answer is the unique root
    disk meeting the value disk; both sides are refined until only one meets.
    Returns None when the value disk meets no root disk, which certifies the
    value is not a root of ``p`` after all.
    """
    r = BASE_RADIUS
    while True:
        boxes = isolate_roots(p, r)
        value = value_at(r)
        hits = [i for i, b in enumerate(boxes) if b.intersects(value)]
        if not hits:
            return None
        if len(hits) == 1:
            return hits[0]
        if r < Fraction(1, 2 ** (MAX_BITS - 64)):
            raise PrecisionError("value disk too wide to identify a root")
        r = r / 2**32
