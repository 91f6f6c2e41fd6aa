"""Exact multidimensional Zeckendorf-style representations over linear recurrences."""

from .analytics import (GaussianReport, MinimalityResult, SummandStats,
                        check_minimality, gaussian_diagnostics,
                        summand_distribution)
from .bridge import (DEFAULT_ENUMERATION_CAP, RegionSet, ball_coverage,
                     enumerate_representations, export_regions_csv,
                     export_regions_svg, iter_representations,
                     legal_decompose, scalar_bridge, summand_count,
                     support_region, support_shell)
from .errors import (BorrowBlockedError, BridgeDomainError, CapExceededError,
                     CarryBlockedError, InvalidRecurrenceError,
                     NonTerminationError, NotEndCompleteError,
                     NotNearlySatisfyingError, NotSatisfyingError,
                     OracleExhaustedError, ZeckvecError)
from .normalize import (DEFAULT_BUDGET, NormalizationTrace, ProbeReport,
                        SpanningReport, borrow, carry, decompose, increment,
                        normalize_nsr, probe_termination,
                        resolve_end_complete, spanning_probe)
from .recurrence import (RecurrenceVector, ScalarSequence, VectorSequence,
                         scalar_term, vector_term)
from .representation import (ChunkDecomposition, SrClassification, canonical,
                             chunk_decomposition, classify, coefficient_sum,
                             evaluate, format_coefficients, format_vector,
                             is_satisfying, parse_coefficients, parse_vector,
                             prefix_sum, scan)

__version__ = "0.1.0"

__all__ = [
    "RecurrenceVector", "ScalarSequence", "VectorSequence",
    "scalar_term", "vector_term",
    "canonical", "evaluate", "is_satisfying", "scan", "chunk_decomposition",
    "classify", "coefficient_sum", "prefix_sum",
    "ChunkDecomposition", "SrClassification",
    "format_coefficients", "parse_coefficients", "format_vector", "parse_vector",
    "carry", "borrow", "resolve_end_complete", "normalize_nsr", "increment",
    "decompose", "probe_termination", "spanning_probe",
    "NormalizationTrace", "ProbeReport", "SpanningReport", "DEFAULT_BUDGET",
    "scalar_bridge", "legal_decompose", "summand_count",
    "iter_representations", "enumerate_representations",
    "support_region", "support_shell", "ball_coverage", "RegionSet",
    "export_regions_csv", "export_regions_svg", "DEFAULT_ENUMERATION_CAP",
    "summand_distribution", "gaussian_diagnostics", "check_minimality",
    "SummandStats", "GaussianReport", "MinimalityResult",
    "ZeckvecError", "InvalidRecurrenceError", "NotSatisfyingError",
    "NotNearlySatisfyingError", "NotEndCompleteError", "CarryBlockedError",
    "BorrowBlockedError", "CapExceededError", "BridgeDomainError",
    "OracleExhaustedError", "NonTerminationError",
]
