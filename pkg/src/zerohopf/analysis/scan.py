"""Batch counting over sample points, condition cells and report serialization."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..algebra.expr import parse_poly
from ..algebra.poly import MultiPoly, format_poly
from .roots import BifurcationReport, CertificationError, NonIsolatedRoots, count_positive_roots
from .semialg import SemiAlgebraicSystem

_OPS = {
    "<": lambda v: v < 0,
    ">": lambda v: v > 0,
    "<=": lambda v: v <= 0,
    ">=": lambda v: v >= 0,
    "!=": lambda v: v != 0,
    "=": lambda v: v == 0,
}
_ATOM = re.compile(r"^(.*?)(<=|>=|!=|<|>|=)(.*)$")


@dataclass(frozen=True)
class Atom:
    """Sign condition ``lhs - rhs  op  0``."""
    poly: MultiPoly
    op: str

    @classmethod
    def parse(cls, text: str) -> "Atom":
        m = _ATOM.match(text.strip())
        if not m:
            raise ValueError(f"not a sign condition: {text!r}")
        lhs, op, rhs = m.groups()
        return cls(parse_poly(lhs) - parse_poly(rhs), op)

    def holds(self, point: Mapping[str, object]) -> bool:
        v = self.poly.subs({k: Fraction(x) for k, x in point.items()})
        if not v.is_constant():
            raise ValueError(f"condition {self} has unbound symbols {sorted(v.free_symbols)}")
        return _OPS[self.op](v.constant_value())

    def __str__(self):
        return f"{format_poly(self.poly)} {self.op} 0"


@dataclass(frozen=True)
class Condition:
    name: str
    atoms: Tuple[Atom, ...]

    @classmethod
    def parse(cls, name: str, text: str) -> "Condition":
        """``text`` is a comma separated list of atoms, optionally in brackets."""
        body = text.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        return cls(name, tuple(Atom.parse(a) for a in body.split(",") if a.strip()))

    def holds(self, point: Mapping[str, object]) -> bool:
        return all(a.holds(point) for a in self.atoms)


@dataclass
class ScanRow:
    point: Dict[str, Fraction]
    cells: Tuple[str, ...]
    report: Optional[BifurcationReport] = None
    error: Optional[str] = None

    @property
    def count(self) -> Optional[int]:
        return None if self.report is None else self.report.count


def scan_conditions(s: SemiAlgebraicSystem, conditions: Sequence[Condition],
                    points: Sequence[Mapping[str, object]], **opts) -> List[ScanRow]:
    """Count at every point and record which condition cells it falls in.

    Certification failures and non-isolated solution sets are flagged in the
    row instead of aborting the scan.
    """
    rows = []
    for p in points:
        pt = {k: Fraction(v) for k, v in p.items()}
        cells = tuple(c.name for c in conditions if c.holds(pt))
        try:
            rows.append(ScanRow(pt, cells, count_positive_roots(s, pt, **opts)))
        except (CertificationError, NonIsolatedRoots) as exc:
            rows.append(ScanRow(pt, cells, error=str(exc)))
    return rows


# -- serialization ------------------------------------------------------------------

def _q(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def report_to_dict(r: BifurcationReport) -> dict:
    return {
        "order": r.order,
        "point": {k: _q(v) for k, v in r.point},
        "unknowns": list(r.unknowns),
        "count": r.count,
        "boxes": [
            {"intervals": {u: [_q(lo), _q(hi)] for u, (lo, hi) in zip(r.unknowns, b.intervals)},
             "jacobian_sign": b.jacobian_sign}
            for b in r.boxes
        ],
        "bkk": r.bkk,
        "notes": list(r.notes),
    }


def report_to_text(r: BifurcationReport) -> str:
    lines = [f"order = {r.order}",
             "point = " + ", ".join(f"{k}={_q(v)}" for k, v in r.point),
             f"count = {r.count}"]
    for i, b in enumerate(r.boxes, 1):
        ivs = " x ".join(f"{u} in ({_q(lo)}, {_q(hi)})" for u, (lo, hi) in zip(r.unknowns, b.intervals))
        lines.append(f"box[{i}] = {ivs}; sign(D) = {'+' if b.jacobian_sign > 0 else '-'}")
    if r.bkk is not None:
        lines.append(f"bkk = {r.bkk}")
    for n in r.notes:
        lines.append(f"note: {n}")
    return "\n".join(lines) + "\n"


def scan_to_dict(rows: Sequence[ScanRow]) -> List[dict]:
    out = []
    for row in rows:
        d = {"point": {k: _q(v) for k, v in row.point.items()}, "cells": list(row.cells),
             "count": row.count}
        if row.error:
            d["error"] = row.error
        out.append(d)
    return out


def scan_to_text(rows: Sequence[ScanRow]) -> str:
    lines = []
    for row in rows:
        pt = ", ".join(f"{k}={_q(v)}" for k, v in row.point.items())
        cells = ",".join(row.cells) or "-"
        res = f"count={row.count}" if row.error is None else f"FAILED ({row.error})"
        lines.append(f"{pt} | cells={cells} | {res}")
    return "\n".join(lines) + ("\n" if lines else "")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
