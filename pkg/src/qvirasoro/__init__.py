"""Schur Q-functions and the reduced Fock representation of the Virasoro algebra."""
from .partitions import StrictPartition, shift_part, straighten, strict_partitions_of
from .polyring import DiffOperator, DiffTerm, OddPolynomial, apply_diff, differentiate, inner_product, t
from .qcalc import Q, Q_of_sequence, QExpansion, expand_in_Q, q, q_pair
from .virasoro import act_closed, act_closed_lower, act_closed_raise, act_diff, build_L, matrix_of_L

__all__ = [
    "StrictPartition", "shift_part", "straighten", "strict_partitions_of",
    "DiffOperator", "DiffTerm", "OddPolynomial", "apply_diff", "differentiate", "inner_product", "t",
    "Q", "Q_of_sequence", "QExpansion", "expand_in_Q", "q", "q_pair",
    "act_closed", "act_closed_lower", "act_closed_raise", "act_diff", "build_L", "matrix_of_L",
]
