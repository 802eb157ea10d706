"""Counting isolated zeros of averaged functions and bounding them."""
from .generic import generic_order2_bkk, solve_linear, vanishing_instance
from .mixed_volume import mixed_volume, mixed_volume_of_supports, support, volume
from .oracle import OracleResult, oracle_count, subdivision_count
from .roots import (BifurcationReport, CertificationError, NonIsolatedRoots, RootBox, UnboundParameters,
                    coordinate_eliminants, count_positive_roots, krawczyk)
from .scan import (Atom, Condition, ScanRow, report_to_dict, report_to_text, scan_conditions,
                   scan_to_dict, scan_to_text)
from .semialg import (NO_ISOLATED, DegenerateSystem, SemiAlgebraicSystem, build_semialgebraic,
                      jacobian_determinant, jacobian_matrix, strip_numerator, substitute_rho)

__all__ = [
    "generic_order2_bkk", "solve_linear", "vanishing_instance", "mixed_volume", "mixed_volume_of_supports",
    "support", "volume", "OracleResult", "oracle_count", "subdivision_count", "BifurcationReport",
    "CertificationError", "NonIsolatedRoots", "RootBox", "UnboundParameters", "coordinate_eliminants",
    "count_positive_roots", "krawczyk", "Atom", "Condition", "ScanRow", "report_to_dict", "report_to_text",
    "scan_conditions", "scan_to_dict", "scan_to_text", "NO_ISOLATED", "DegenerateSystem",
    "SemiAlgebraicSystem", "build_semialgebraic", "jacobian_determinant", "jacobian_matrix",
    "strip_numerator", "substitute_rho",
]
