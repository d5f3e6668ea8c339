"""Exact computation of regularity for edge ideals of cubic circulant
graphs, with a verification harness comparing engine output to closed-form
expected values.
"""

__version__ = "0.1.0"

from .betti import BettiTable, betti_table, regularity
from .edge_ideals import (EdgeTuple, disjoint_union, edge_ideal,
                          even_connection_graph, intermediate_ideal,
                          symbolic_membership, symbolic_only_generators,
                          symbolic_power, verify_banerjee)
from .errors import (CapacityExceeded, CircregError, DimensionMismatch,
                     InternalVerificationError)
from .formulas import (ExpectedValue, expected_im, expected_reg_base,
                       expected_reg_general, expected_reg_power)
from .graphs import (Graph, circulant, cubic_circulant, decompose_cubic,
                     induced_matching_number, minimal_vertex_covers,
                     odd_cycles)
from .monomials import Monomial, MonomialIdeal, minimalize

__all__ = [
    "__version__",
    "BettiTable", "betti_table", "regularity",
    "EdgeTuple", "disjoint_union", "edge_ideal", "even_connection_graph",
    "intermediate_ideal", "symbolic_membership", "symbolic_only_generators",
    "symbolic_power", "verify_banerjee",
    "CapacityExceeded", "CircregError", "DimensionMismatch",
    "InternalVerificationError",
    "ExpectedValue", "expected_im", "expected_reg_base",
    "expected_reg_general", "expected_reg_power",
    "Graph", "circulant", "cubic_circulant", "decompose_cubic",
    "induced_matching_number", "minimal_vertex_covers", "odd_cycles",
    "Monomial", "MonomialIdeal", "minimalize",
]
