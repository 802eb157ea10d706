"""Rational functions whose denominator is a single monomial."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

from .poly import MultiPoly


@dataclass(frozen=True)
class RationalFn:
    numerator: MultiPoly
    denominator: MultiPoly

    @classmethod
    def from_laurent(cls, p: MultiPoly) -> "RationalFn":
        """Split a Laurent polynomial into polynomial numerator over monomial."""
        neg = {s: -e for s, e in p.monomial_content().items() if e < 0}
        den = MultiPoly.monomial(neg, laurent=p.laurent)
        return cls(p.clear_monomial({s: -e for s, e in neg.items()}), den)

    def as_laurent(self) -> MultiPoly:
        return self.numerator * self.denominator.inverse_monomial()

    def denominator_exponents(self) -> Dict[str, int]:
        return self.denominator.monomial_exponents() if not self.denominator.is_constant() else {}

    def __eq__(self, other):
        if isinstance(other, RationalFn):
            return self.as_laurent() == other.as_laurent()
        if isinstance(other, MultiPoly):
            return self.as_laurent() == other
        return NotImplemented

    def __hash__(self):
        return hash(self.as_laurent())

    def __str__(self):
        if self.denominator == 1:
            return str(self.numerator)
        return f"({self.numerator})/({self.denominator})"
