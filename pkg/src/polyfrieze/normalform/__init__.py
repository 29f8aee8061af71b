"""Determinants, complementing maps and diagonal forms of weight matrices."""

from .complement import (CapError, ComplementContext, check_complementary_symmetry,
                         complement_phi, complement_psi)
from .determinant import (arithmetic_det, det_expand, det_formula, geometric_sum,
                          piece_factor, toeplitz_det_formula, toeplitz_matrix,
                          toeplitz_via_polygon)
from .diagonal import (DiagonalForm, Elimination, Op, diagonalize, diagonalize_trivial,
                       expected_diagonal, reduce_unit_block, replay, unit_block_matrix)
from .smith import (SmithResult, int_det, int_matmul, same_multiset, smith_normal_form,
                    theorem_display)

__all__ = [
    "CapError", "ComplementContext", "check_complementary_symmetry", "complement_phi",
    "complement_psi", "arithmetic_det", "det_expand", "det_formula", "geometric_sum",
    "piece_factor", "toeplitz_det_formula", "toeplitz_matrix", "toeplitz_via_polygon",
    "DiagonalForm", "Elimination", "Op", "diagonalize", "diagonalize_trivial",
    "expected_diagonal", "reduce_unit_block", "replay", "unit_block_matrix", "SmithResult",
    "int_det", "int_matmul", "same_multiset", "smith_normal_form", "theorem_display",
]
