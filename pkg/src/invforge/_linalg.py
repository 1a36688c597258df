"""Linear algebra over F2 with Python ints as bit vectors."""

from __future__ import annotations

from typing import Iterable


class GF2Basis:
    """Echelon basis keyed by leading bit, with optional provenance tags.

    Each stored row carries a tag recording which inserted rows were XORed
    together to produce it, which lets callers recover combinations.
    """

    __slots__ = ("pivots",)

    def __init__(self) -> None:
        self.pivots: dict[int, tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: int, tag: int = 0) -> tuple[int, int]:
        pivots = self.pivots
        while vec:
            entry = pivots.get(vec.bit_length() - 1)
            if entry is None:
                break
            vec ^= entry[0]
            tag ^= entry[1]
        return vec, tag

    def add(self, vec: int, tag: int = 0) -> tuple[bool, int]:
        """Insert a row; returns (independent, reduced tag)."""
        vec, tag = self.reduce(vec, tag)
        if vec:
            self.pivots[vec.bit_length() - 1] = (vec, tag)
            return True, tag
        return False, tag


def rank(rows: Iterable[int]) -> int:
    basis = GF2Basis()
    for row in rows:
        basis.add(row)
    return len(basis)


class NoSolution(ArithmeticError):
    pass


class NotUnique(ArithmeticError):
    pass


def solve_combination(columns: list[int], target: int) -> int:
    """Find the unique subset of columns XORing to target, as a bitmask.

    Raises NoSolution when target lies outside the span and NotUnique when a
    solution exists but the columns are dependent.
    """
    basis = GF2Basis()
    dependent = False
    for index, col in enumerate(columns):
        independent, _ = basis.add(col, 1 << index)
        dependent |= not independent
    residue, tag = basis.reduce(target)
    if residue:
        raise NoSolution("target is not in the span")
    if dependent:
        raise NotUnique("columns are linearly dependent")
    return tag
