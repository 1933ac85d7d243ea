"""Sum-networks: codes, exhaustive search, duality and capacity bounds."""

from .algebra import Alphabet, FMatrix, alphabet_make, mat_mul, mat_solve_right
from .capacity import CapacityReport, cut_counting_bound, lower_bound, report, upper_bound
from .codec import LinearCode, TableCode, linearize, rate, verify_linear, verify_table
from .duality import dual_code, linear_capacity_transfer_check
from .netgraph import SumNetwork, min_cut, min_cut_bound, reverse_network, topo_order, validate
from .schemes import (
    SlotPlan,
    scheme_multicast,
    scheme_one_terminal,
    scheme_pairing,
    scheme_three_terminal,
    scheme_two_source_halfmincut,
    scheme_two_terminal,
)
from .search import SearchOutcome, search_linear, search_random_linear, search_table

__all__ = [
    "Alphabet",
    "FMatrix",
    "alphabet_make",
    "mat_mul",
    "mat_solve_right",
    "CapacityReport",
    "cut_counting_bound",
    "lower_bound",
    "report",
    "upper_bound",
    "LinearCode",
    "TableCode",
    "linearize",
    "rate",
    "verify_linear",
    "verify_table",
    "dual_code",
    "linear_capacity_transfer_check",
    "SumNetwork",
    "min_cut",
    "min_cut_bound",
    "reverse_network",
    "topo_order",
    "validate",
    "SlotPlan",
    "scheme_multicast",
    "scheme_one_terminal",
    "scheme_pairing",
    "scheme_three_terminal",
    "scheme_two_source_halfmincut",
    "scheme_two_terminal",
    "SearchOutcome",
    "search_linear",
    "search_random_linear",
    "search_table",
]

__version__ = "0.1.0"
