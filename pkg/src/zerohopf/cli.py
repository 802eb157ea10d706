"""Command line front end: parse, average, analyze, print recurrence templates.

Exit codes: 0 success, 1 bad input, 2 degenerate or non-isolated case,
3 certification failure, 4 replay mismatch.  ``analyze --count-exit``
instead exits with 10 + the largest count found.
"""
from __future__ import annotations

import argparse
import hashlib
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Optional, Tuple

from .algebra.expr import ParseError, parse_poly
from .algebra.poly import format_poly
from .analysis.mixed_volume import mixed_volume
from .analysis.roots import CertificationError, NonIsolatedRoots, UnboundParameters, count_positive_roots
from .analysis.scan import Condition, ScanRow, report_to_dict, report_to_text
from .analysis.semialg import SemiAlgebraicSystem, build_semialgebraic
from .averaging.engine import AveragingSession, VanishingError, impose_vanishing
from .averaging.template import formula_text
from .frontend.dsl import parse_system
from .frontend.standard import to_standard_form
from .frontend.system import SpecError, SystemSpec
from .trig import format_trig

EXIT_OK, EXIT_INPUT, EXIT_DEGENERATE, EXIT_CERT, EXIT_REPLAY = 0, 1, 2, 3, 4
MANIFEST_VERSION = 1


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    # exit code 2 is reserved for degenerate systems
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# -- inputs ---------------------------------------------------------------------------

def catalog_names() -> List[str]:
    root = resources.files("zerohopf") / "catalog"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".sys"))


def read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    if path.startswith("catalog:"):
        name = path.split(":", 1)[1]
        res = resources.files("zerohopf") / "catalog" / f"{name}.sys"
        if not res.is_file():
            raise CliError(f"unknown catalog system {name!r}; available: {', '.join(catalog_names())}")
        return res.read_text(encoding="utf-8")
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}")


def _entries(text: str) -> List[str]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        out.extend(p.strip() for p in line.replace(";", ",").split(",") if p.strip())
    return out


def parse_bindings(items: List[str], exact: bool) -> Dict[str, object]:
    """``name = value`` entries; values are rationals, or polynomials when not ``exact``."""
    out: Dict[str, object] = {}
    for item in items:
        if "=" not in item:
            raise CliError(f"expected name=value, got {item!r}")
        name, val = (s.strip() for s in item.split("=", 1))
        try:
            if exact:
                out[name] = Fraction(val)
            else:
                p = parse_poly(val)
                out[name] = p.constant_value() if p.is_constant() else p
        except (ValueError, ZeroDivisionError, ParseError):
            raise CliError(f"bad value for {name}: {val!r}")
    return out


def parse_points(text: str) -> List[Dict[str, Fraction]]:
    """One point per line (``beta=2, a2=1``), or a JSON list of objects."""
    stripped = text.strip()
    if stripped.startswith("[") or stripped.startswith("{"):
        data = json.loads(stripped)
        if isinstance(data, dict):
            data = [data]
        return [{k: Fraction(str(v)) for k, v in d.items()} for d in data]
    pts = []
    for line in text.splitlines():
        items = _entries(line)
        if items:
            pts.append(parse_bindings(items, exact=True))
    return pts


def parse_conditions(text: str) -> List[Condition]:
    """Lines ``NAME: [atom, atom, ...]``."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise CliError(f"expected 'NAME: [conditions]', got {line!r}")
        name, body = line.split(":", 1)
        try:
            out.append(Condition.parse(name.strip(), body))
        except (ValueError, ParseError) as exc:
            raise CliError(f"bad condition {name.strip()}: {exc}")
    return out


def sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _resolve(path: Optional[str]) -> Optional[str]:
    if path is None or path == "-" or path.startswith("catalog:"):
        return path
    return os.path.abspath(path)


# -- pipeline pieces --------------------------------------------------------------------

def load_spec(ns) -> Tuple[SystemSpec, str]:
    text = read_input(ns.input)
    try:
        spec = parse_system(text)
    except (ParseError, SpecError) as exc:
        raise CliError(f"{ns.input}: {exc}")
    return spec, text


def constraints_of(ns) -> Dict[str, object]:
    items = list(ns.define or [])
    if ns.constraints:
        items = _entries(read_input(ns.constraints)) + items
    return parse_bindings(items, exact=False)


def prepared_spec(ns, spec: SystemSpec, order: int) -> SystemSpec:
    cons = constraints_of(ns)
    unknown = sorted(set(cons) - set(spec.params))
    if unknown:
        raise CliError(f"constraint on undeclared parameter(s): {', '.join(unknown)}")
    if order < spec.k:
        spec = spec.truncate(order)
    try:
        return impose_vanishing(spec, cons, order=order, literal_psi=ns.literal_psi)
    except VanishingError as exc:
        lines = [f"lower-order averaged function does not vanish; supply constraints ({len(exc.survivors)} survivor(s)):"]
        for (i, lab), p in sorted(exc.survivors.items()):
            lines.append(f"  f[{i}][{lab}] = {format_poly(p)}")
        raise CliError("\n".join(lines), EXIT_DEGENERATE)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- commands ---------------------------------------------------------------------------

def cmd_standard(ns, out) -> int:
    spec, _ = load_spec(ns)
    order = ns.order or spec.k
    sf = to_standard_form(spec, order, literal_psi=ns.literal_psi)
    if ns.format == "json":
        labels = [1] + list(range(3, spec.n + 1))
        out.write(_dump_json({"order": order, "eta": list(sf.eta),
                              "F": {str(j): {str(lab): format_trig(sf.component(j, lab)) for lab in labels}
                                    for j in range(1, order + 1)}}))
    else:
        out.write(sf.to_text())
    return EXIT_OK


def cmd_average(ns, out) -> int:
    spec, _ = load_spec(ns)
    order = ns.order or spec.k
    spec = prepared_spec(ns, spec, order)
    session = AveragingSession(to_standard_form(spec, order, literal_psi=ns.literal_psi), route=ns.route)
    fs = [session.averaged(i) for i in range(1, order + 1)]
    if ns.format == "json":
        out.write(_dump_json({"order": order, "eta": list(fs[0].eta),
                              "f": {str(f.order): {str(lab): format_poly(p) for lab, p in zip(f.labels(), f.laurent())}
                                    for f in fs}}))
    else:
        for f in fs:
            out.write(f.to_text())
    return EXIT_OK


def _count_row(args) -> ScanRow:
    s, pt, conds, depth = args
    cells = tuple(c.name for c in conds if c.holds(pt))
    try:
        return ScanRow(pt, cells, count_positive_roots(s, pt, max_depth=depth))
    except CertificationError as exc:
        return ScanRow(pt, cells, error=f"certification: {exc}")
    except NonIsolatedRoots as exc:
        return ScanRow(pt, cells, error=f"non-isolated: {exc}")
    except UnboundParameters as exc:
        return ScanRow(pt, cells, error=f"unbound: {exc}")
    except ValueError as exc:
        return ScanRow(pt, cells, error=f"input: {exc}")


def _system_dict(s: SemiAlgebraicSystem) -> dict:
    return {"order": s.order, "unknowns": list(s.unknowns), "positive": list(s.positive),
            "equations": [format_poly(e) for e in s.equations], "jacobian": format_poly(s.jacobian),
            "nonzero": [format_poly(q) for q in s.nonzero], "flags": list(s.flags)}


def cmd_analyze(ns, out) -> int:
    spec, _ = load_spec(ns)
    order = ns.order or spec.k
    if ns.subst not in (None, "rho=R^2"):
        raise CliError(f"unsupported substitution {ns.subst!r}; only rho=R^2 is available")
    spec = prepared_spec(ns, spec, order)
    f = AveragingSession(to_standard_form(spec, order, literal_psi=ns.literal_psi)).averaged(order)
    extra = []
    for text in ns.nonzero or []:
        try:
            extra.append(parse_poly(text))
        except ParseError as exc:
            raise CliError(f"bad --nonzero expression {text!r}: {exc}")
    s = build_semialgebraic(f, extra_nonzero=extra, b=spec.b, rho=ns.subst is not None)
    if s.degenerate:
        if ns.format == "json":
            out.write(_dump_json({"system": _system_dict(s), "degenerate": True}))
        else:
            out.write(s.to_text())
        return EXIT_DEGENERATE
    bkk = mixed_volume(s.equations, s.unknowns) if ns.bkk else None
    points: List[Dict[str, Fraction]] = []
    if ns.point:
        points.extend(parse_points(read_input(ns.point)))
    for at in ns.at or []:
        points.append(parse_bindings(_entries(at), exact=True))
    conds = parse_conditions(read_input(ns.conditions)) if ns.conditions else []
    jobs = [(s, pt, conds, ns.max_depth) for pt in points]
    if ns.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            rows = list(pool.map(_count_row, jobs))
    else:
        rows = [_count_row(j) for j in jobs]
    unbound = [r.error for r in rows if r.error and r.error.startswith(("unbound", "input"))]
    if unbound:
        raise CliError(unbound[0].split(": ", 1)[1])
    if ns.format == "json":
        reps = []
        for r in rows:
            d = report_to_dict(r.report.with_bkk(bkk)) if r.report else {"point": {k: str(v) for k, v in r.point.items()}}
            d["cells"] = list(r.cells)
            if r.error:
                d["error"] = r.error
            reps.append(d)
        out.write(_dump_json({"system": _system_dict(s), "bkk": bkk, "reports": reps}))
    else:
        out.write(s.to_text())
        if bkk is not None:
            out.write(f"bkk = {bkk}\n")
        for i, r in enumerate(rows, 1):
            out.write(f"\n# point {i}\n")
            if conds:
                out.write(f"cells = {', '.join(r.cells) or '-'}\n")
            if r.report is not None:
                out.write(report_to_text(r.report))
            else:
                pt = ", ".join(f"{k}={v}" for k, v in r.point.items())
                out.write(f"point = {pt}\nerror = {r.error}\n")
    if any(r.error and r.error.startswith("certification") for r in rows):
        return EXIT_CERT
    if any(r.error for r in rows):
        return EXIT_DEGENERATE
    if ns.count_exit:
        return 10 + max((r.count for r in rows), default=0)
    return EXIT_OK


def cmd_formula(ns, out) -> int:
    if ns.order < 1 or ns.dim < 2:
        raise CliError("need --order >= 1 and --dim >= 2")
    t0 = time.perf_counter()
    text, counts = formula_text(ns.order, ns.dim)
    elapsed = time.perf_counter() - t0
    per_order = {i: counts[(i, ns.dim)] for i in range(1, ns.order + 1)}
    if ns.format == "json":
        out.write(_dump_json({"order": ns.order, "dim": ns.dim, "template": text.splitlines(),
                              "terms": {str(i): c for i, c in per_order.items()}}))
    else:
        out.write(text)
        for i, c in per_order.items():
            out.write(f"# terms y[{i}]: {c} ({c // ns.dim} per component)\n")
    # timing varies from run to run, so it stays out of the reproducible output
    print(f"# formula k={ns.order} n={ns.dim}: {elapsed:.3f} s", file=sys.stderr)
    return EXIT_OK


COMMANDS = {"standard": cmd_standard, "average": cmd_average, "analyze": cmd_analyze, "formula": cmd_formula}
_FILE_ARGS = ("input", "constraints", "point", "conditions")
_NOT_RECORDED = ("output", "manifest", "func", "jobs")


def _manifest(ns, output: str, code: int) -> dict:
    args = {k: v for k, v in vars(ns).items() if k not in _NOT_RECORDED}
    digests = {}
    for key in _FILE_ARGS:
        path = args.get(key)
        if path:
            if path == "-":
                raise CliError("manifests need file inputs, not stdin")
            args[key] = _resolve(path)
            digests[key] = sha256(read_input(args[key]))
    return {"version": MANIFEST_VERSION, "command": ns.command, "args": args, "sha256": digests,
            "exit_code": code, "output": output}


def cmd_replay(ns, out) -> int:
    try:
        with open(ns.manifest_file, encoding="utf-8") as fh:
            man = json.load(fh)
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot load manifest {ns.manifest_file}: {exc}")
    if man.get("version") != MANIFEST_VERSION or man.get("command") not in COMMANDS:
        raise CliError("unsupported manifest")
    for key, digest in man["sha256"].items():
        if sha256(read_input(man["args"][key])) != digest:
            print(f"replay: {key} file {man['args'][key]} changed since the manifest was written", file=sys.stderr)
            return EXIT_REPLAY
    rerun = argparse.Namespace(**man["args"], jobs=1)
    buf = io.StringIO()
    try:
        code = COMMANDS[man["command"]](rerun, buf)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        code = exc.code
    if buf.getvalue() != man["output"] or code != man["exit_code"]:
        print("replay: output differs from the manifest", file=sys.stderr)
        return EXIT_REPLAY
    out.write(buf.getvalue())
    print("replay: identical output", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="zerohopf", description="Higher-order averaging for zero-Hopf bifurcations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, with_order=True):
        sp.add_argument("input", help="system file, '-' for stdin, or catalog:NAME")
        if with_order:
            sp.add_argument("--order", "-k", type=int, default=None, help="averaging order (default: header k)")
        sp.add_argument("--literal-psi", action="store_true",
                        help="use (R cos)^i2 for the x2 factor instead of (R sin)^i2")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--output", "-o", help="write output here and a manifest beside it")
        sp.add_argument("--manifest", help="manifest path (default: OUTPUT.manifest.json)")

    def constraints(sp):
        sp.add_argument("--constraints", help="file of name = value substitutions")
        sp.add_argument("-D", "--define", action="append", metavar="NAME=VALUE", help="inline substitution")

    sp = sub.add_parser("standard", help="print the standard form of averaging")
    common(sp)
    sp = sub.add_parser("average", help="print averaged functions f_1..f_k")
    common(sp)
    constraints(sp)
    sp.add_argument("--route", choices=("bell", "tuples"), default="bell")
    sp = sub.add_parser("analyze", help="count limit cycles at rational parameter points")
    common(sp)
    constraints(sp)
    sp.add_argument("--point", help="file of parameter points, one per line or JSON")
    sp.add_argument("--at", action="append", metavar="POINT", help="inline point, e.g. 'beta=2, a2=1'")
    sp.add_argument("--conditions", help="file of 'NAME: [atom, ...]' condition cells")
    sp.add_argument("--nonzero", action="append", metavar="EXPR", help="extra side condition EXPR != 0")
    sp.add_argument("--bkk", action="store_true", help="report the mixed volume bound")
    sp.add_argument("--subst", metavar="rho=R^2", help="rewrite the system in rho = R^2")
    sp.add_argument("--jobs", "-j", type=int, default=1, help="worker processes over sample points")
    sp.add_argument("--max-depth", type=int, default=200, help="refinement steps before giving up")
    sp.add_argument("--count-exit", action="store_true", help="exit with 10 + the largest count")
    sp = sub.add_parser("formula", help="print the order-k recurrence template")
    sp.add_argument("--order", "-k", type=int, required=True)
    sp.add_argument("--dim", "-n", type=int, required=True)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--output", "-o")
    sp.add_argument("--manifest")
    sp = sub.add_parser("replay", help="re-run a manifest and check the output is byte-identical")
    sp.add_argument("manifest_file")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    buf = io.StringIO()
    try:
        if ns.command == "replay":
            code = cmd_replay(ns, buf)
        else:
            code = COMMANDS[ns.command](ns, buf)
    except CliError as exc:
        sys.stdout.write(buf.getvalue())
        print(f"zerohopf: {exc}", file=sys.stderr)
        return exc.code
    text = buf.getvalue()
    if getattr(ns, "output", None):
        with open(ns.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    manifest_path = getattr(ns, "manifest", None) or (ns.output + ".manifest.json" if getattr(ns, "output", None) else None)
    if manifest_path and ns.command != "replay":
        try:
            man = _manifest(ns, text, code)
        except CliError as exc:
            print(f"zerohopf: {exc}", file=sys.stderr)
            return exc.code
        with open(manifest_path, "w", encoding="utf-8") as fh:
            fh.write(_dump_json(man))
    return code


if __name__ == "__main__":
    sys.exit(main())
