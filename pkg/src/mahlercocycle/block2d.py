"""Two-dimensional binary block substitutions.

Cell (m1, m2) of a block sits m1 steps to the right of and m2 steps above
the lower-left cell, and carries the monomial x^m1 y^m2.  Blocks are kept
bottom row first; the text format lists rows top first, as they are drawn.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mahler import LaurentPoly
from .substitution import FourierMatrix, SubstitutionError, matrix_is_primitive

_LETTERS = {"a": 0, "b": 1, "0": 0, "1": 1}

NAMED_BLOCKS = {
    "tm2d": "ba/ab;ab/ba",
    "squiral": "bab/aaa/bab;aba/bbb/aba",
    "ex62": "ba/bb;aa/aa",
}


@dataclass(frozen=True)
class BlockSubstitution2D:
    """Images of letters 0 and 1; ``block[m2][m1]`` with m2 = 0 the bottom row."""

    block0: tuple[tuple[int, ...], ...]
    block1: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        b0 = tuple(tuple(int(v) for v in row) for row in self.block0)
        b1 = tuple(tuple(int(v) for v in row) for row in self.block1)
        for name, b in (("block0", b0), ("block1", b1)):
            if not b or len({len(r) for r in b}) != 1:
                raise SubstitutionError(f"{name} is not a rectangular array")
            if any(v not in (0, 1) for r in b for v in r):
                raise SubstitutionError(f"{name} has entries outside {{0,1}}")
        if (len(b0), len(b0[0])) != (len(b1), len(b1[0])):
            raise SubstitutionError("blocks must have the same shape")
        if len(b0) < 2 or len(b0[0]) < 2:
            raise SubstitutionError(f"block shape {len(b0[0])}x{len(b0)} violates side length >= 2")
        object.__setattr__(self, "block0", b0)
        object.__setattr__(self, "block1", b1)

    @property
    def shape(self) -> tuple[int, int]:
        """(L1, L2): width along x, height along y."""
        return len(self.block0[0]), len(self.block0)

    def cells(self):
        """Yield ((m1, m2), letter in block0, letter in block1)."""
        L1, L2 = self.shape
        for m2 in range(L2):
            for m1 in range(L1):
                yield (m1, m2), self.block0[m2][m1], self.block1[m2][m1]

    def to_text(self) -> str:
        def fmt(b):
            return "/".join("".join("ab"[v] for v in row) for row in reversed(b))
        return f"{fmt(self.block0)};{fmt(self.block1)}"

    def __str__(self) -> str:
        return self.to_text()


def parse_blocks(text: str) -> BlockSubstitution2D:
    """Parse "ba/ab;ab/ba": two blocks split by ';', rows split by '/', top row first.

    Letters may be written a/b or 0/1.
    """
    text = NAMED_BLOCKS.get(text.strip(), text)
    parts = text.split(";")
    if len(parts) != 2:
        raise SubstitutionError(f"expected two blocks separated by ';', got {text!r}")
    blocks = []
    for part in parts:
        rows = [r.strip() for r in part.strip().split("/")]
        try:
            grid = [[_LETTERS[ch] for ch in r] for r in rows]
        except KeyError as exc:
            raise SubstitutionError(f"unknown letter {exc.args[0]!r} in {part!r}") from None
        blocks.append(tuple(tuple(r) for r in reversed(grid)))
    return BlockSubstitution2D(*blocks)


def named_block(name: str) -> BlockSubstitution2D:
    if name not in NAMED_BLOCKS:
        raise KeyError(f"unknown example {name!r}; have {sorted(NAMED_BLOCKS)}")
    return parse_blocks(NAMED_BLOCKS[name])


def fourier_matrix_2d(b: BlockSubstitution2D) -> FourierMatrix:
    sets = [[set(), set()], [set(), set()]]
    for pos, a0, a1 in b.cells():
        sets[a0][0].add(pos)
        sets[a1][1].add(pos)
    entries = tuple(tuple(frozenset(sets[i][j]) for j in range(2)) for i in range(2))
    return FourierMatrix(dim=2, expansion=b.shape, entries=entries)


def substitution_matrix_2d(b: BlockSubstitution2D) -> np.ndarray:
    return fourier_matrix_2d(b).count_matrix


def is_primitive(b: BlockSubstitution2D) -> bool:
    return matrix_is_primitive(substitution_matrix_2d(b))


def has_coincidence(b: BlockSubstitution2D) -> bool:
    return any(a0 == a1 for _, a0, a1 in b.cells())


def is_bijective(b: BlockSubstitution2D) -> bool:
    return not has_coincidence(b)


def qr_polynomial_2d(b: BlockSubstitution2D) -> LaurentPoly:
    """Q - R in x, y: +1 at cells (0,1), -1 at cells (1,0)."""
    terms = {}
    for pos, a0, a1 in b.cells():
        if a0 != a1:
            terms[pos] = 1 if a0 == 0 else -1
    return LaurentPoly(terms)


def q_plus_r_2d(b: BlockSubstitution2D) -> LaurentPoly:
    return LaurentPoly({pos: 1 for pos, a0, a1 in b.cells() if a0 != a1})


def column_sum_2d(b: BlockSubstitution2D) -> LaurentPoly:
    """Eigenvalue of the row vector (1,1): the sum over every cell of the block."""
    return LaurentPoly({pos: 1 for pos, _, _ in b.cells()})
