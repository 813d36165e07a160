"""Euler characteristics of rank-r sheaves on curves from local Swan data."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ShapeMismatch


@dataclass(frozen=True)
class CurveShape:
    """Smooth curve of genus ``g`` with ``s`` punctures."""

    g: int
    s: int

    def __post_init__(self):
        if self.g < 0 or self.s < 0:
            raise ValueError("genus and puncture count are nonnegative")

    @property
    def chi_c(self) -> int:
        return 2 - 2 * self.g - self.s

    @property
    def chi_complete(self) -> int:
        return 2 - 2 * self.g


@dataclass(frozen=True)
class SheafShape:
    rank: int
    swans: tuple[int, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if any(s < 0 for s in self.swans):
            raise ValueError("Swan conductors are nonnegative")

    @classmethod
    def of(cls, rank: int, swans: Sequence[int]) -> "SheafShape":
        return cls(rank, tuple(swans))

    def dimtot(self, i: int) -> int:
        return self.rank + self.swans[i]


def chi_pair(curve: CurveShape, sheaf: SheafShape) -> tuple[int, int]:
    """(chi_c, chi): compactly supported and ordinary Euler characteristics.

    chi_c = rank*(2 - 2g - s) - sum Swan_x and chi = rank*(2 - 2g) - sum dimtot_x.
    """
    if len(sheaf.swans) != curve.s:
        raise ShapeMismatch(f"{len(sheaf.swans)} Swan values for {curve.s} punctures")
    chi_c = sheaf.rank * curve.chi_c - sum(sheaf.swans)
    chi = sheaf.rank * curve.chi_complete - sum(sheaf.dimtot(i) for i in range(curve.s))
    assert chi == chi_c, (chi, chi_c)
    return chi_c, chi


def affine_line_chi_c(swan: int, rank: int = 1) -> int:
    return chi_pair(CurveShape(0, 1), SheafShape(rank, (swan,)))[0]
