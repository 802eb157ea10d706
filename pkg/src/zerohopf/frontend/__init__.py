"""Parsing, validation and standard-form construction for perturbed systems."""
from .system import (RawSystem, SpecError, SystemSpec, apply_linear_change, format_system,
                     matrix_inverse, validate)
from .dsl import ParseError, parse_raw_system, parse_system
from .general import coefficient_name, general_system
from .standard import StandardForm, eta_symbols, psi, to_standard_form

__all__ = [
    "RawSystem", "SpecError", "SystemSpec", "apply_linear_change", "format_system",
    "matrix_inverse", "validate", "ParseError", "parse_raw_system", "parse_system",
    "coefficient_name", "general_system", "StandardForm", "eta_symbols", "psi", "to_standard_form",
]
