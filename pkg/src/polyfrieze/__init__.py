"""Exact computations on dissected polygons: walk matrices, their
determinants and diagonal forms over Laurent polynomial rings, and
generalised frieze patterns with their zig-zag minors."""

from .dissection import (Dissection, DissectionError, build, enumerate_dissections, from_json,
                         random_dissection)
from .frieze import (FriezePattern, ZigZag, build_frieze, diagonal_minor, find_zigzag, minor,
                     minor_formula, zig_pieces)
from .polyring import LaurentPoly, VarSet, parse, q, x
from .walks import (Walk, WeightMatrix, enumerate_walks, matrix_from_walks, specialize,
                    walk_weight, weight_matrix)

__version__ = "0.1.0"

__all__ = [
    "Dissection", "DissectionError", "build", "enumerate_dissections", "from_json",
    "random_dissection", "FriezePattern", "ZigZag", "build_frieze", "diagonal_minor",
    "find_zigzag", "minor", "minor_formula", "zig_pieces", "LaurentPoly", "VarSet", "parse",
    "q", "x", "Walk", "WeightMatrix", "enumerate_walks", "matrix_from_walks", "specialize",
    "walk_weight", "weight_matrix",
]
