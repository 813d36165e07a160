from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wildramify.errors import ShapeMismatch
from wildramify.euler import CurveShape, SheafShape, affine_line_chi_c, chi_pair


def test_examples():
    assert chi_pair(CurveShape(0, 1), SheafShape.of(1, [3])) == (-2, -2)
    assert chi_pair(CurveShape(0, 1), SheafShape.of(1, [0])) == (1, 1)
    assert chi_pair(CurveShape(1, 2), SheafShape.of(2, [0, 3])) == (-7, -7)


@pytest.mark.parametrize("m", range(1, 11))
def test_affine_line_family(m):
    assert affine_line_chi_c(m) == 1 - m


def test_validation():
    with pytest.raises(ShapeMismatch):
        chi_pair(CurveShape(0, 2), SheafShape.of(1, [1]))
    with pytest.raises(ValueError):
        CurveShape(-1, 0)
    with pytest.raises(ValueError):
        SheafShape.of(0, [])
    with pytest.raises(ValueError):
        SheafShape.of(1, [-1])


@given(g=st.integers(0, 6), rank=st.integers(1, 5), swans=st.lists(st.integers(0, 40), max_size=6))
def test_both_formulas_agree(g, rank, swans):
    curve = CurveShape(g, len(swans))
    chi_c, chi = chi_pair(curve, SheafShape.of(rank, swans))
    assert chi_c == chi
    assert chi_c == rank * (2 - 2 * g - len(swans)) - sum(swans)
