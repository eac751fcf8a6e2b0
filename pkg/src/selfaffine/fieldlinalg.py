"""Vectors and matrices with number-field coordinates, one embedding per axis.

A vector is a tuple of :class:`FieldElem`, coordinate ``i`` being read through
the embedding ``field_spec.embeddings[i]``. A matrix entry ``A[i][j]`` may be
nonzero only when axes ``i`` and ``j`` share an embedding; otherwise the exact
product would not describe the embedded real map.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InputError, PreconditionError, ShapeError
from .expansion import JORDAN_MESSAGE, Spectrum, is_diagonalizable, matrix_spectrum
from .numbers import AlgebraicNumber, FieldElem, NumberFieldSpec, Poly, embed, locate_root, roots_of

Vector = tuple[FieldElem, ...]
Matrix = tuple[tuple[FieldElem, ...], ...]


def zero_vector(spec: NumberFieldSpec) -> Vector:
    return tuple(spec.field.zero() for _ in spec.embeddings)


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def vscale(c, u: Vector) -> Vector:
    return tuple(c * a for a in u)


def matvec(a: Matrix, v: Vector) -> Vector:
    out = []
    for row in a:
        acc = v[0].field.zero()
        for x, y in zip(row, v):
            if not x.is_zero():
                acc = acc + x * y
        out.append(acc)
    return tuple(out)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, m = len(a), len(b[0])
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(len(b))), a[0][0].field.zero()) for j in range(m))
        for i in range(n)
    )


def identity(spec: NumberFieldSpec) -> Matrix:
    n = len(spec.embeddings)
    f = spec.field
    return tuple(tuple(f.one() if i == j else f.zero() for j in range(n)) for i in range(n))


def matpow(a: Matrix, k: int, spec: NumberFieldSpec) -> Matrix:
    if k < 0:
        return matpow(inverse(a), -k, spec)
    result, base = identity(spec), a
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def matsub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def solve(a: Matrix, b: Vector) -> Vector:
    """Solve ``a x = b`` exactly; raises ArithmeticError if ``a`` is singular."""
    n = len(a)
    m = [list(row) + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if piv is None:
            raise ArithmeticError("singular matrix in exact solve")
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col].inverse()
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and not m[r][col].is_zero():
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(m[i][n] for i in range(n))


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    f = a[0][0].field
    cols = [solve(a, tuple(f.one() if i == j else f.zero() for i in range(n))) for j in range(n)]
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def is_diagonal(a: Matrix) -> bool:
    return all(a[i][j].is_zero() for i in range(len(a)) for j in range(len(a)) if i != j)


def check_coupling(a: Matrix, spec: NumberFieldSpec) -> None:
    n = len(spec.embeddings)
    if len(a) != n or any(len(r) != n for r in a):
        raise ShapeError(f"expansion must be {n}x{n} to match the number of axes")
    for i in range(n):
        for j in range(n):
            if spec.embeddings[i] != spec.embeddings[j] and not a[i][j].is_zero():
                raise InputError(f"entry ({i},{j}) couples axes with different embeddings")


# numeric views ---------------------------------------------------------------


def real_coords(spec: NumberFieldSpec, v: Vector, precision=Fraction(1, 2**60)) -> list[float]:
    """Embedded real coordinates: one per real axis, (re, im) per complex axis."""
    out = []
    for i, x in enumerate(v):
        z = embed(x, spec.axis_root(i), precision).to_complex()
        if spec.axis_is_real(i):
            out.append(z.real)
        else:
            out += [z.real, z.imag]
    return out


def real_matrix(spec: NumberFieldSpec, a: Matrix) -> np.ndarray:
    """The embedded real matrix of ``a`` in the coordinates of :func:`real_coords`."""
    offsets, sizes = [], []
    pos = 0
    for i in range(len(spec.embeddings)):
        s = 1 if spec.axis_is_real(i) else 2
        offsets.append(pos)
        sizes.append(s)
        pos += s
    out = np.zeros((pos, pos))
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if x.is_zero():
                continue
            z = embed(x, spec.axis_root(i), Fraction(1, 2**60)).to_complex()
            oi, oj = offsets[i], offsets[j]
            if sizes[i] == 1:
                out[oi, oj] = z.real
            else:
                out[oi:oi + 2, oj:oj + 2] = [[z.real, -z.imag], [z.imag, z.real]]
    return out


# eigenvalues of an embedded field matrix ---------------------------------------


def _embedded_value(x: FieldElem, root: AlgebraicNumber) -> AlgebraicNumber:
    mp = x.minimal_polynomial()
    idx = locate_root(mp, lambda r: embed(x, root, r))
    if idx is None:
        raise ArithmeticError("embedded element not found among its minimal polynomial's roots")
    return roots_of(mp)[idx]


def field_matrix_spectrum(a: Matrix, spec: NumberFieldSpec) -> Spectrum:
    """Eigenvalues of the real map described by ``a``.

    Supported per group of axes sharing an embedding: diagonal blocks with
    arbitrary field entries, or blocks with rational entries. Complex axes
    contribute each eigenvalue together with its complex conjugate.
    """
    check_coupling(a, spec)
    groups: dict[int, list[int]] = {}
    for i, e in enumerate(spec.embeddings):
        groups.setdefault(e, []).append(i)
    mults: Counter = Counter()
    for emb, axes in groups.items():
        root = AlgebraicNumber(spec.min_poly, emb)
        block = [[a[i][j] for j in axes] for i in axes]
        complex_axis = not root.is_real
        if all(block[i][j].is_zero() for i in range(len(axes)) for j in range(len(axes)) if i != j):
            values = [_embedded_value(block[i][i], root) for i in range(len(axes))]
            found = Counter(values)
        elif all(x.is_rational() for row in block for x in row):
            rows = [[x.coeffs[0] for x in row] for row in block]
            if not is_diagonalizable(rows):
                raise PreconditionError(JORDAN_MESSAGE)
            found = Counter(matrix_spectrum(rows))
        else:
            raise InputError("non-diagonal expansion blocks must have rational entries")
        for val, m in found.items():
            mults[val] += m
            if complex_axis:
                mults[val.conjugate()] += m
    return Spectrum(mults)


def parse_elem(spec: NumberFieldSpec, data) -> FieldElem:
    """A field element from JSON: a coefficient list or a single rational string."""
    if isinstance(data, (str, int)):
        return spec.field(Fraction(str(data)))
    if not isinstance(data, Sequence):
        raise InputError(f"cannot read field element from {data!r}")
    # longer coefficient lists are reduced modulo the defining polynomial
    return spec.field(Poly([Fraction(str(c)) for c in data]))


def parse_vector(spec: NumberFieldSpec, data) -> Vector:
    if len(data) != len(spec.embeddings):
        raise InputError(f"vector {data!r} must have {len(spec.embeddings)} coordinates")
    return tuple(parse_elem(spec, x) for x in data)


def vector_json(v: Vector) -> list[list[str]]:
    return [x.to_json() for x in v]
