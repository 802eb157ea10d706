"""Averaged functions of arbitrary order via the partial Bell polynomial recurrence."""
from .bell import (BellTerm, composition_tuples, frechet_apply, frechet_apply_naive,
                   multiset_contractions, partial_bell)
from .engine import (AveragedFunction, AveragingSession, VanishingError, averaged_function,
                     impose_vanishing, periodic_solution_approx, yk_recurrence)
from .template import TemplateTerm, formula_text, template_terms

__all__ = [
    "BellTerm", "composition_tuples", "frechet_apply", "frechet_apply_naive", "multiset_contractions",
    "partial_bell", "AveragedFunction", "AveragingSession", "VanishingError", "averaged_function",
    "impose_vanishing", "periodic_solution_approx", "yk_recurrence", "TemplateTerm", "formula_text",
    "template_terms",
]
