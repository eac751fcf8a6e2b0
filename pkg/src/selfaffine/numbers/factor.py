"""Factorization of rational polynomials into irreducibles over Q.

Degree <= 3 pieces are certified by the rational-root test. Degrees 4..8 are
factored modulo a prime larger than twice a coefficient bound for any integer
factor, after which every subset of the modular factors is tried as a true
factor (no Hensel lifting is needed with such a prime).
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import comb, gcd, isqrt

from ..errors import DomainError
from .polys import Poly, squarefree_decomposition

MAX_FACTOR_DEGREE = 8


# integer helpers ----------------------------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24; beyond that a strong probable-prime test,
    # which is all the modular factorization needs (a composite would only
    # make it fail loudly, never return a wrong factorization)
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _next_prime(n: int) -> int:
    n = max(n, 3) | 1
    while not _is_probable_prime(n):
        n += 2
    return n


# polynomials mod p: lists of ints, constant first -------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, p):
    return _trim([c % p for c in a])


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _psub(a, b, p):
    return _padd(a, [-c for c in b], p)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, p)


def _pdivmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _trim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv % p
        if c == 0:
            continue
        q[k - db] = c
        for j, y in enumerate(b):
            a[k - db + j] = (a[k - db + j] - c * y) % p
    return _trim(q), _trim(a[:db])


def _prem(a, b, p):
    return _pdivmod(a, b, p)[1]


def _pmonic(a, p):
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _pgcd(a, b, p):
    while b:
        a, b = b, _prem(a, b, p)
    return _pmonic(a, p) if a else a


def _ppowmod(base, e, f, p):
    result = [1]
    base = _prem(base, f, p)
    while e:
        if e & 1:
            result = _prem(_pmul(result, base, p), f, p)
        base = _prem(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _pderiv(a, p):
    return _pmod([k * a[k] for k in range(1, len(a))], p)


def _distinct_degree(f, p):
    """Split monic squarefree ``f`` into (product of degree-d factors, d) pairs."""
    out = []
    h = [0, 1]
    d = 0
    x = [0, 1]
    g = list(f)
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        h = _ppowmod(h, p, g, p)
        fac = _pgcd(g, _psub(h, x, p), p)
        if len(fac) > 1:
            out.append((fac, d))
            g = _pdivmod(g, fac, p)[0]
            h = _prem(h, g, p)
    if len(g) > 1:
        out.append((_pmonic(g, p), len(g) - 1))
    return out


def _equal_degree(f, d, p, rng):
    """Cantor-Zassenhaus splitting of a product of degree-``d`` factors."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = _trim(a)
        if len(a) < 2:
            continue
        g = _pgcd(a, f, p)
        if 1 < len(g) < len(f):
            break
        t = _ppowmod(a, (p**d - 1) // 2, f, p)
        g = _pgcd(_psub(t, [1], p), f, p)
        if 1 < len(g) < len(f):
            break
    other = _pdivmod(f, g, p)[0]
    return _equal_degree(_pmonic(g, p), d, p, rng) + _equal_degree(_pmonic(other, p), d, p, rng)


def factor_mod_p(f: list[int], p: int, seed: int = 0) -> list[list[int]]:
    """Monic irreducible factors of a monic squarefree polynomial mod odd prime p."""
    rng = random.Random(seed)
    out = []
    for g, d in _distinct_degree(f, p):
        out.extend(_equal_degree(g, d, p, rng))
    return sorted(out, key=lambda q: (len(q), q))


# over the integers ----------------------------------------------------------


def _int_divide(a: list[int], b: list[int]) -> list[int] | None:
    q, r = divmod(Poly(a), Poly(b))
    if not r.is_zero() or not q.is_integral():
        return None
    return q.int_coeffs()


def _rational_roots(f: list[int]) -> list[Fraction]:
    """Distinct rational roots of an integer polynomial."""
    roots = []
    if f[0] == 0:
        roots.append(Fraction(0))
        k = next(i for i, c in enumerate(f) if c != 0)
        f = f[k:]
    if len(f) < 2:
        return roots
    poly = Poly(f)
    for num in _divisors(f[0]):
        for den in _divisors(f[-1]):
            if gcd(num, den) != 1:
                continue
            for r in (Fraction(num, den), Fraction(-num, den)):
                if r not in roots and poly(r) == 0:
                    roots.append(r)
    return roots


def _coeff_bound(f: list[int]) -> int:
    """Bound on |coefficients| of any integer factor of ``f`` (Mignotte)."""
    n = len(f) - 1
    norm2 = sum(c * c for c in f)
    norm = isqrt(norm2) + 1
    return max(comb(n, k) for k in range(n + 1)) * norm


def _zassenhaus(f: list[int]) -> list[list[int]]:
    """Irreducible factors of a primitive squarefree integer polynomial."""
    n = len(f) - 1
    lc = f[-1]
    bound = 2 * abs(lc) * _coeff_bound(f) + 1
    p = _next_prime(bound)
    fp = _pmod(f, p)
    while len(fp) - 1 != n or len(_pgcd(fp, _pderiv(fp, p), p)) > 1:
        p = _next_prime(p + 2)
        fp = _pmod(f, p)
    mods = factor_mod_p(_pmonic(fp, p), p)
    factors = []
    g = list(f)
    k = 1
    while 2 * k <= len(mods):
        found = False
        for subset in combinations(range(len(mods)), k):
            prod = [lc % p]
            for i in subset:
                prod = _pmul(prod, mods[i], p)
            cand = [c - p if c > p // 2 else c for c in prod]
            cand = Poly(cand).primitive().int_coeffs()
            quotient = _int_divide(g, cand)
            if quotient is not None:
                factors.append(cand)
                g = quotient
                lc = g[-1]
                mods = [m for i, m in enumerate(mods) if i not in subset]
                found = True
                break
        if not found:
            k += 1
    factors.append(Poly(g).primitive().int_coeffs())
    return factors


def _factor_squarefree(f: Poly) -> list[Poly]:
    """Monic irreducible factors of a squarefree rational polynomial."""
    ints = f.primitive().int_coeffs()
    out = []
    for r in _rational_roots(ints):
        out.append(Poly([-r, 1]))
        ints = _int_divide(ints, Poly([-r.numerator, r.denominator]).int_coeffs())
    rest = Poly(ints)
    if rest.degree < 1:
        return out
    if rest.degree <= 3:
        # no rational roots left, so no linear factor, so irreducible
        return out + [rest.monic()]
    if rest.degree > MAX_FACTOR_DEGREE:
        raise DomainError(f"factorization of degree {rest.degree} > {MAX_FACTOR_DEGREE} is not supported")
    return out + [Poly(g).monic() for g in _zassenhaus(rest.int_coeffs())]


def factor_rational(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities.

    The product of ``factor**multiplicity`` equals ``p`` up to its leading
    coefficient. Output is sorted by (degree, coefficients) for determinism.

    >>> factor_rational(Poly([1, 2, -1, -2, 1]))  # (x^2 - x - 1)^2
    [(Poly(['-1', '-1', '1']), 2)]
    """
    if p.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    out = []
    for part, mult in squarefree_decomposition(p):
        for fac in _factor_squarefree(part):
            out.append((fac, mult))
    return sorted(out, key=lambda fm: (fm[0].degree, fm[0].coeffs, fm[1]))


def is_irreducible(p: Poly) -> bool:
    fs = factor_rational(p)
    return len(fs) == 1 and fs[0][1] == 1
