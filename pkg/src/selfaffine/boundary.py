"""Free-group words, endomorphisms and the boundary curves ``phi^-n psi^n(w)``.

Letters are single lowercase characters; a word is a tuple of nonzero ints,
``+k`` for the k-th letter (1-based) and ``-k`` for its inverse. Text syntax:
``a`` is a generator, ``A`` its inverse, and ``[u,v]`` the commutator
``u v u^-1 v^-1`` (nesting allowed).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import fieldlinalg as fl
from .errors import DomainError, InputError
from .fieldlinalg import Matrix, Vector
from .numbers import NumberFieldSpec

Word = tuple[int, ...]
LETTER_BUDGET = 10**7


class Alphabet:
    def __init__(self, letters: Sequence[str]):
        letters = list(letters)
        for ch in letters:
            if len(ch) != 1 or not ch.islower():
                raise InputError(f"letters must be single lowercase characters, got {ch!r}")
        if len(set(letters)) != len(letters):
            raise InputError("letters must be distinct")
        self.letters = tuple(letters)
        self._index = {ch: i + 1 for i, ch in enumerate(letters)}

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def code(self, ch: str) -> int:
        if ch.lower() not in self._index:
            raise InputError(f"unknown letter {ch!r}")
        k = self._index[ch.lower()]
        return k if ch.islower() else -k

    def check(self, w: Iterable[int]) -> None:
        n = len(self.letters)
        for x in w:
            if x == 0 or abs(x) > n:
                raise InputError(f"unknown letter code {x}")

    def format(self, w: Word) -> str:
        return "".join(self.letters[x - 1] if x > 0 else self.letters[-x - 1].upper() for x in w)

    def parse(self, text: str) -> Word:
        """Parse ``acAC``, ``[a,c]``, ``A[a,b]a`` and the like into a reduced word."""
        s = "".join(text.split())
        w, pos = self._parse_seq(s, 0)
        if pos != len(s):
            raise InputError(f"unexpected {s[pos]!r} at position {pos} in word {text!r}")
        return reduce(w)

    def _parse_seq(self, s: str, pos: int) -> tuple[list[int], int]:
        out: list[int] = []
        while pos < len(s) and s[pos] not in ",]":
            if s[pos] == "[":
                u, pos = self._parse_seq(s, pos + 1)
                if pos >= len(s) or s[pos] != ",":
                    raise InputError(f"expected ',' at position {pos} in commutator")
                v, pos = self._parse_seq(s, pos + 1)
                if pos >= len(s) or s[pos] != "]":
                    raise InputError(f"expected ']' at position {pos} in commutator")
                pos += 1
                out += commutator(u, v)
            elif s[pos].isalpha():
                out.append(self.code(s[pos]))
                pos += 1
            else:
                raise InputError(f"unexpected {s[pos]!r} at position {pos}")
        return out, pos


def reduce(w: Iterable[int]) -> Word:
    """Free reduction: cancel adjacent ``x x^-1`` pairs until none remain."""
    stack: list[int] = []
    for x in w:
        if x == 0:
            raise InputError("0 is not a letter code")
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    """``[u,v] = u v u^-1 v^-1``."""
    return tuple(u) + tuple(v) + inverse(u) + inverse(v)


def conjugate(g: Sequence[int], w: Sequence[int]) -> Word:
    """``g w g^-1``, reduced."""
    return reduce(tuple(g) + tuple(w) + inverse(g))


class Endomorphism:
    """Free-group endomorphism given by the images of the generators."""

    def __init__(self, alphabet: Alphabet, images: Mapping[int, Sequence[int]]):
        self.alphabet = alphabet
        imgs = {}
        for k in range(1, len(alphabet) + 1):
            if k not in images:
                raise InputError(f"no image for letter {alphabet.letters[k - 1]!r}")
            img = reduce(images[k])
            alphabet.check(img)
            imgs[k] = img
            imgs[-k] = inverse(img)
        self._images = imgs

    @classmethod
    def from_strings(cls, alphabet: Alphabet, images: Mapping[str, str]) -> Endomorphism:
        return cls(alphabet, {alphabet.code(k): alphabet.parse(v) for k, v in images.items()})

    def image(self, x: int) -> Word:
        return self._images[x]

    def image_length(self, w: Sequence[int]) -> int:
        return sum(len(self._images[x]) for x in w)

    def apply(self, w: Sequence[int], budget: int = LETTER_BUDGET) -> Word:
        if self.image_length(w) > budget:
            raise DomainError(f"word image exceeds the budget of {budget} letters")
        out: list[int] = []
        imgs = self._images
        for x in w:
            for y in imgs[x]:
                if out and out[-1] == -y:
                    out.pop()
                else:
                    out.append(y)
        return tuple(out)

    def iterate(self, w: Sequence[int], n: int, budget: int = LETTER_BUDGET) -> Word:
        w = reduce(w)
        for _ in range(n):
            w = self.apply(w, budget)
        return w

    def count_matrix(self) -> list[list[int]]:
        """``A[i][j]`` = signed count of letter i in the image of letter j."""
        k = len(self.alphabet)
        cols = [abelianization(self._images[j], k) for j in range(1, k + 1)]
        return [[cols[j][i] for j in range(k)] for i in range(k)]


def apply_endo(psi: Endomorphism, w: Sequence[int]) -> Word:
    return psi.apply(w)


def abelianization(w: Iterable[int], k: int) -> list[int]:
    counts = [0] * k
    for x in w:
        counts[abs(x) - 1] += 1 if x > 0 else -1
    return counts


# vectors and curves ----------------------------------------------------------


@dataclass(frozen=True)
class VectorAssignment:
    field_spec: NumberFieldSpec
    alphabet: Alphabet
    vectors: tuple[Vector, ...]
    expansion: Matrix

    def __post_init__(self):
        if len(self.vectors) != len(self.alphabet):
            raise InputError("one vector per letter is required")
        fl.check_coupling(self.expansion, self.field_spec)

    def vector(self, code: int) -> Vector:
        v = self.vectors[abs(code) - 1]
        return v if code > 0 else fl.vneg(v)

    def sum_counts(self, counts: Sequence[int]) -> Vector:
        acc = fl.zero_vector(self.field_spec)
        for c, v in zip(counts, self.vectors):
            if c:
                acc = fl.vadd(acc, fl.vscale(self.field_spec.field(c), v))
        return acc

    def word_vector(self, w: Sequence[int]) -> Vector:
        return self.sum_counts(abelianization(w, len(self.alphabet)))

    def numeric_vectors(self) -> np.ndarray:
        return np.array([fl.real_coords(self.field_spec, v) for v in self.vectors])


def check_compatibility(assign: VectorAssignment, psi: Endomorphism) -> bool:
    """Exact check that the vector sum of ``psi(x)`` equals ``phi vec(x)`` for every letter."""
    if psi.alphabet != assign.alphabet:
        raise InputError("endomorphism and vectors use different alphabets")
    for k in range(1, len(assign.alphabet) + 1):
        if assign.word_vector(psi.image(k)) != fl.matvec(assign.expansion, assign.vector(k)):
            return False
    return True


def compatibility_defects(assign: VectorAssignment, psi: Endomorphism) -> dict[str, Vector]:
    """Per letter, ``sum vec(psi(x)) - phi vec(x)`` (all zero when compatible)."""
    return {
        assign.alphabet.letters[k - 1]: fl.vsub(
            assign.word_vector(psi.image(k)), fl.matvec(assign.expansion, assign.vector(k))
        )
        for k in range(1, len(assign.alphabet) + 1)
    }


@dataclass(frozen=True)
class BoundaryCurve:
    word: str
    iterations: int
    letters: int
    closed: bool
    points: np.ndarray

    def to_json(self) -> dict:
        return {
            "word": self.word,
            "iterations": self.iterations,
            "letters": self.letters,
            "closed_exact": self.closed,
            "points": [[float(f"{x:.9g}") for x in p] for p in self.points],
        }


def boundary_curve(
    assign: VectorAssignment,
    psi: Endomorphism,
    w: Sequence[int] | str,
    iters: int,
    budget: int = LETTER_BUDGET,
) -> BoundaryCurve:
    """Vertices of ``phi^-n`` applied to the path traced by ``psi^n(w)``.

    The path starts at the origin; its endpoint is checked to vanish exactly
    in field arithmetic.
    """
    k = len(assign.alphabet)
    if isinstance(w, str):
        label, w = w, assign.alphabet.parse(w)
    else:
        label = assign.alphabet.format(reduce(w))
    if iters < 0:
        raise DomainError("iteration count must be nonnegative")
    if any(abelianization(w, k)):
        raise DomainError(f"word {label!r} is not closed: its letter counts do not cancel")
    word = psi.iterate(w, iters, budget)
    closed = all(x.is_zero() for x in assign.word_vector(word))
    # integer prefix counts keep the numeric path free of summation drift
    arr = np.array(word, dtype=np.int64)
    steps = np.zeros((len(arr) + 1, k), dtype=np.int64)
    if len(arr):
        steps[np.arange(1, len(arr) + 1), np.abs(arr) - 1] = np.sign(arr)
    prefix = np.cumsum(steps, axis=0)
    pts = prefix.astype(float) @ assign.numeric_vectors()
    phi = fl.real_matrix(assign.field_spec, assign.expansion)
    scale = np.linalg.matrix_power(np.linalg.inv(phi), iters)
    pts = pts @ scale.T
    return BoundaryCurve(label, iters, len(word), closed, pts)
