"""Binary constant-length substitutions and their Fourier matrices."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._pykernels import fourier_entries
from .polynomial import IntPolynomial


class SubstitutionError(ValueError):
    pass


@dataclass(frozen=True)
class BinarySubstitution:
    """0 -> w0, 1 -> w1 with |w0| = |w1| = L >= 2 over the alphabet {0, 1}."""

    w0: str
    w1: str

    def __post_init__(self):
        for name, w in (("w0", self.w0), ("w1", self.w1)):
            if not isinstance(w, str) or set(w) - {"0", "1"}:
                raise SubstitutionError(f"{name}={w!r} is not a word over {{0,1}}")
        if len(self.w0) != len(self.w1):
            raise SubstitutionError(
                f"words must have equal length (|w0|={len(self.w0)}, |w1|={len(self.w1)})"
            )
        if len(self.w0) < 2:
            raise SubstitutionError(f"word length L={len(self.w0)} violates L >= 2")

    @property
    def length(self) -> int:
        return len(self.w0)

    def column(self, m: int) -> tuple[int, int]:
        return int(self.w0[m]), int(self.w1[m])

    @property
    def is_bijective(self) -> bool:
        return all(a != b for a, b in zip(self.w0, self.w1))

    def swapped(self) -> BinarySubstitution:
        """Exchange w0 and w1 (the substitution for -(Q-R))."""
        return BinarySubstitution(self.w1, self.w0)

    def to_text(self) -> str:
        return f"{self.w0},{self.w1}"

    def __str__(self) -> str:
        return self.to_text()


def parse_substitution(text: str) -> BinarySubstitution:
    parts = [t.strip() for t in text.split(",")]
    if len(parts) != 2:
        raise SubstitutionError(f"expected 'w0,w1', got {text!r}")
    return BinarySubstitution(*parts)


@dataclass(frozen=True)
class ColumnDecomposition:
    """Positions of the column types (0,0), (1,1), (0,1) and (1,0)."""

    P0: frozenset[int]
    P1: frozenset[int]
    Pa: frozenset[int]
    Pb: frozenset[int]


def decompose(s: BinarySubstitution) -> ColumnDecomposition:
    groups: dict[tuple[int, int], set[int]] = {(0, 0): set(), (1, 1): set(), (0, 1): set(), (1, 0): set()}
    for m in range(s.length):
        groups[s.column(m)].add(m)
    return ColumnDecomposition(
        P0=frozenset(groups[0, 0]),
        P1=frozenset(groups[1, 1]),
        Pa=frozenset(groups[0, 1]),
        Pb=frozenset(groups[1, 0]),
    )


def substitution_matrix(s: BinarySubstitution) -> np.ndarray:
    """Entry (i, j) counts letter i in w_j."""
    words = (s.w0, s.w1)
    return np.array([[words[j].count(str(i)) for j in range(2)] for i in range(2)], dtype=np.int64)


def matrix_is_primitive(m: np.ndarray) -> bool:
    # 2x2 nonnegative: primitive iff M^2 > 0
    m = np.asarray(m, dtype=np.int64)
    return bool((m @ m > 0).all())


def is_primitive(s: BinarySubstitution) -> bool:
    return matrix_is_primitive(substitution_matrix(s))


class PeriodicClass(str, enum.Enum):
    EQUAL_WORDS = "equal-words"
    ALTERNATING = "alternating"
    NONE = "none"


def _alternating(first: str, second: str, n: int) -> str:
    return "".join(first if i % 2 == 0 else second for i in range(n))


def periodic_class(s: BinarySubstitution) -> PeriodicClass:
    """Classify the hull of a primitive substitution as periodic or not.

    Periodic hulls come in exactly two shapes: equal words, or the
    alternating pair ((ab)^m a, (ba)^m b) in either order.
    """
    if not is_primitive(s):
        raise SubstitutionError("classification requires primitivity")
    if s.w0 == s.w1:
        return PeriodicClass.EQUAL_WORDS
    L = s.length
    if L % 2 == 1 and L >= 3:
        for a, b in (("0", "1"), ("1", "0")):
            u, v = _alternating(a, b, L), _alternating(b, a, L)
            if (s.w0, s.w1) in ((u, v), (v, u)):
                return PeriodicClass.ALTERNATING
    return PeriodicClass.NONE


@dataclass(frozen=True)
class FourierMatrix:
    """2x2 matrix of exponent sets; entry (i, j) holds the positions of letter i in image j.

    ``dim`` is the number of torus variables and ``expansion`` the side
    lengths of the images, which also define the expanding map k -> expansion*k.
    """

    dim: int
    expansion: tuple[int, ...]
    entries: tuple[tuple[frozenset, frozenset], tuple[frozenset, frozenset]]

    def exponents(self, i: int, j: int) -> list[tuple[int, ...]]:
        return sorted(self.entries[i][j])

    @cached_property
    def grid(self) -> np.ndarray:
        """Dense 0/1 coefficients, shape (2, 2, L1, L2) with L2 = 1 in one dimension."""
        L1 = self.expansion[0]
        L2 = self.expansion[1] if self.dim == 2 else 1
        g = np.zeros((2, 2, L1, L2))
        for i in range(2):
            for j in range(2):
                for e in self.entries[i][j]:
                    g[i, j, e[0], e[1] if self.dim == 2 else 0] += 1
        return g

    def entry_polynomial(self, i: int, j: int) -> IntPolynomial:
        if self.dim != 1:
            raise ValueError("entry_polynomial is one-dimensional only")
        return IntPolynomial(self.grid[i, j, :, 0].astype(int).tolist())

    @cached_property
    def determinant_grid(self) -> np.ndarray:
        """Exact coefficients of det B as a (2L1-1, 2L2-1) integer array."""
        g = self.grid.astype(np.int64)
        return _conv2(g[0, 0], g[1, 1]) - _conv2(g[0, 1], g[1, 0])

    @property
    def determinant_vanishes(self) -> bool:
        return not self.determinant_grid.any()

    @property
    def count_matrix(self) -> np.ndarray:
        return self.grid.sum(axis=(2, 3)).astype(np.int64)


def _conv2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1), dtype=np.int64)
    for i, j in zip(*np.nonzero(a)):
        out[i:i + b.shape[0], j:j + b.shape[1]] += a[i, j] * b
    return out


def fourier_matrix(s: BinarySubstitution) -> FourierMatrix:
    words = (s.w0, s.w1)
    entries = tuple(
        tuple(frozenset((m,) for m, c in enumerate(words[j]) if c == str(i)) for j in range(2))
        for i in range(2)
    )
    return FourierMatrix(dim=1, expansion=(s.length,), entries=entries)


def evaluate(F: FourierMatrix, k) -> np.ndarray:
    """B(k) with entry (i, j) = sum over exponents m of exp(2 pi i k.m).

    ``k`` is a scalar (one dimension), a vector of length ``dim``, or an
    array of such points with the torus coordinate last; the result has
    shape ``(..., 2, 2)``.
    """
    k = np.asarray(k, dtype=float)
    if F.dim == 1 and (k.ndim == 0 or k.shape[-1] != 1):
        k = k[..., None]
    if k.shape[-1] != F.dim:
        raise ValueError(f"point has {k.shape[-1]} coordinates, Fourier matrix has dim {F.dim}")
    z = np.ones(k.shape[:-1] + (2,), dtype=complex)
    z[..., : F.dim] = np.exp(2j * np.pi * k)
    return fourier_entries(z, F.grid)


def qr_polynomial(s: BinarySubstitution) -> IntPolynomial:
    """Q - R: +1 at columns (0,1), -1 at columns (1,0)."""
    c = [0] * s.length
    for m in range(s.length):
        col = s.column(m)
        if col == (0, 1):
            c[m] = 1
        elif col == (1, 0):
            c[m] = -1
    return IntPolynomial(c)


def borwein_polynomial(s: BinarySubstitution) -> IntPolynomial:
    """Q - R divided by its lowest power of z; a Borwein polynomial unless w0 == w1."""
    return qr_polynomial(s).strip_monomial()


def coincidence_polynomials(s: BinarySubstitution) -> tuple[IntPolynomial, IntPolynomial]:
    """(S0, S1): exponential sums over the coincidence columns (0,0) and (1,1)."""
    c0 = [1 if s.column(m) == (0, 0) else 0 for m in range(s.length)]
    c1 = [1 if s.column(m) == (1, 1) else 0 for m in range(s.length)]
    return IntPolynomial(c0), IntPolynomial(c1)


def q_and_r(s: BinarySubstitution) -> tuple[IntPolynomial, IntPolynomial]:
    q = [1 if s.column(m) == (0, 1) else 0 for m in range(s.length)]
    r = [1 if s.column(m) == (1, 0) else 0 for m in range(s.length)]
    return IntPolynomial(q), IntPolynomial(r)


def all_substitutions(length: int):
    """Every pair of words of the given length, in lexicographic order."""
    n = 1 << length
    words = [format(i, f"0{length}b") for i in range(n)]
    for w0 in words:
        for w1 in words:
            yield BinarySubstitution(w0, w1)
