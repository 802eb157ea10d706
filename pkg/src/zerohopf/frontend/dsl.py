"""Text format for perturbed systems.

Example::

    # jerk system in Jordan coordinates
    system n=3 N=2 k=2 b=beta
    param beta, a1, b1, a2, b2;
    dx1 = -beta*x2 + ...;
    dx2 =  beta*x1 + ...;
    dx3 = ...;

Optional statements: ``laurent c0;`` allows negative powers of c0, and
``change x1 = <expr in u1..un>, ..., xn = ...;`` conjugates the system by
the given linear substitution before validation.  ``truncate;`` drops
every eps^j term with j above the header's k, for systems whose parameter
expansions multiply out past the order of interest.
"""
from __future__ import annotations

from typing import Dict, List, Optional

from ..algebra.expr import ExprParser, ParseError, Token, tokenize
from ..algebra.poly import DEFAULT_LAURENT, MultiPoly
from .system import RawSystem, SpecError, SystemSpec, _drop_eps_above, apply_linear_change, xsym

KEYWORDS = {"system", "param", "laurent", "change", "truncate"}


class _Statements:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens

    def split(self):
        """Group tokens into statements ended by ';' (the header may end at a newline)."""
        out: List[List[Token]] = []
        cur: List[Token] = []
        header_line = None
        for tok in self.tokens:
            if not out and not cur and tok.kind == "name" and tok.text == "system":
                header_line = tok.line
            if header_line is not None and cur and cur[0].text == "system" and tok.line != header_line:
                out.append(cur)
                cur = []
                header_line = None
            if tok.kind == "op" and tok.text == ";":
                if cur:
                    out.append(cur)
                cur = []
                header_line = None
                continue
            cur.append(tok)
        if cur:
            if cur[0].text == "system":
                out.append(cur)
            else:
                last = cur[-1]
                raise ParseError("missing ';' at end of statement", last.line, last.col + len(last.text))
        return out


def _name_list(stmt: List[Token]) -> List[str]:
    names = []
    expect_name = True
    for tok in stmt[1:]:
        if expect_name:
            if tok.kind != "name":
                raise ParseError(f"expected a name, found {tok.text!r}", tok.line, tok.col)
            if tok.text in KEYWORDS:
                raise ParseError(f"{tok.text!r} is a reserved word", tok.line, tok.col)
            names.append(tok.text)
        elif tok.text != ",":
            raise ParseError(f"expected ',', found {tok.text!r}", tok.line, tok.col)
        expect_name = not expect_name
    if expect_name:
        tok = stmt[-1]
        raise ParseError("expected a name", tok.line, tok.col + len(tok.text))
    return names


def _parse_header(stmt: List[Token]):
    vals: Dict[str, object] = {}
    i = 1
    while i < len(stmt):
        key = stmt[i]
        if key.kind != "name" or key.text not in ("n", "N", "k", "b"):
            raise ParseError(f"expected one of n, N, k, b in header, found {key.text!r}", key.line, key.col)
        if key.text in vals:
            raise ParseError(f"duplicate header field {key.text!r}", key.line, key.col)
        if i + 1 >= len(stmt) or stmt[i + 1].text != "=":
            raise ParseError("expected '='", key.line, key.col + len(key.text))
        j = i + 2
        if key.text == "b":
            # the frequency expression runs until the next header key
            while j < len(stmt) and not (stmt[j].kind == "name" and stmt[j].text in ("n", "N", "k")
                                         and j + 1 < len(stmt) and stmt[j + 1].text == "="):
                j += 1
            if j == i + 2:
                raise ParseError("missing value for b", key.line, key.col)
            vals["b"] = stmt[i + 2:j]
        else:
            if j >= len(stmt) or stmt[j].kind != "num" or "." in stmt[j].text:
                tok = stmt[j] if j < len(stmt) else key
                raise ParseError(f"expected an integer for {key.text}", tok.line, tok.col)
            vals[key.text] = int(stmt[j].text)
            j += 1
        i = j
    head = stmt[0]
    for req in ("n", "b"):
        if req not in vals:
            raise ParseError(f"header is missing {req}=", head.line, head.col)
    return vals


def _expr(tokens: List[Token], symbols, laurent) -> MultiPoly:
    if not tokens:
        raise ParseError("empty expression")
    p = ExprParser(tokens, symbols, laurent)
    val = p.expr()
    if not p.done():
        p.error(f"unexpected token {p.peek().text!r}")
    return val


def _split_top_commas(tokens: List[Token]) -> List[List[Token]]:
    parts, cur, depth = [], [], 0
    for tok in tokens:
        if tok.text == "(":
            depth += 1
        elif tok.text == ")":
            depth -= 1
        if tok.text == "," and depth == 0:
            parts.append(cur)
            cur = []
        else:
            cur.append(tok)
    parts.append(cur)
    return parts


def _parse(text: str):
    stmts = _Statements(tokenize(text)).split()
    if not stmts or stmts[0][0].text != "system":
        tok = stmts[0][0] if stmts else Token("eof", "", 1, 1)
        raise ParseError("input must start with a 'system' header", tok.line, tok.col)
    header = _parse_header(stmts[0])
    n = header["n"]
    params: List[str] = []
    laurent = set(DEFAULT_LAURENT)
    eqs: Dict[int, tuple] = {}
    change: Optional[List[tuple]] = None
    truncate = False
    for stmt in stmts[1:]:
        head = stmt[0]
        if head.text == "system":
            raise ParseError("duplicate 'system' header", head.line, head.col)
        if head.text == "param":
            params.extend(_name_list(stmt))
        elif head.text == "laurent":
            laurent.update(_name_list(stmt))
        elif head.text == "truncate":
            if len(stmt) > 1:
                raise ParseError("'truncate' takes no arguments", stmt[1].line, stmt[1].col)
            if "k" not in header:
                raise ParseError("'truncate' needs k= in the header", head.line, head.col)
            truncate = True
        elif head.text == "change":
            if change is not None:
                raise ParseError("duplicate 'change' statement", head.line, head.col)
            change = []
            for part in _split_top_commas(stmt[1:]):
                if len(part) < 3 or part[0].kind != "name" or part[1].text != "=":
                    tok = part[0] if part else head
                    raise ParseError("expected 'xi = <expr>'", tok.line, tok.col)
                change.append((part[0], part[2:]))
        elif head.kind == "name" and head.text.startswith("dx"):
            idx = head.text[2:]
            if not idx.isdigit() or not 1 <= int(idx) <= n:
                raise ParseError(f"unknown equation {head.text!r} for n={n}", head.line, head.col)
            if int(idx) in eqs:
                raise ParseError(f"duplicate equation {head.text!r}", head.line, head.col)
            if len(stmt) < 2 or stmt[1].text != "=":
                tok = stmt[1] if len(stmt) > 1 else head
                raise ParseError("expected '='", tok.line, tok.col)
            eqs[int(idx)] = (head, stmt[2:])
        else:
            raise ParseError(f"unexpected statement starting with {head.text!r}", head.line, head.col)
    dup = {p for p in params if params.count(p) > 1}
    if dup:
        raise ParseError(f"parameter declared twice: {sorted(dup)[0]}")
    xs = [xsym(i) for i in range(1, n + 1)]
    clash = set(params) & (set(xs) | {"eps", "R", "pi"})
    if clash:
        raise ParseError(f"reserved name used as parameter: {sorted(clash)[0]}")
    laurent_f = frozenset(laurent)
    symbols = set(params) | set(xs) | {"eps"}
    rhs = []
    for s in range(1, n + 1):
        if s in eqs:
            head, toks = eqs[s]
            if not toks:
                raise ParseError("empty right-hand side", head.line, head.col)
            f = _expr(toks, symbols, laurent_f)
            rhs.append(_drop_eps_above(f, header["k"]) if truncate else f)
        else:
            rhs.append(MultiPoly.const(0, laurent_f))
    b = _expr(header["b"], set(params), laurent_f)
    matrix = None
    if change is not None:
        us = [f"u{i}" for i in range(1, n + 1)]
        got = {}
        for name_tok, toks in change:
            if name_tok.text not in xs:
                raise ParseError(f"unknown variable {name_tok.text!r} in change", name_tok.line, name_tok.col)
            got[name_tok.text] = _expr(toks, set(params) | set(us), laurent_f)
        missing = [x for x in xs if x not in got]
        if missing:
            raise ParseError(f"change of variables is missing {missing[0]}")
        matrix = []
        for x in xs:
            row = []
            expr = got[x]
            for u in us:
                row.append(expr.diff(u).subs({v: 0 for v in us}))
            lin = MultiPoly.const(0, laurent_f)
            for u, c in zip(us, row):
                lin = lin + c * MultiPoly.var(u, laurent=laurent_f)
            if lin != expr:
                raise ParseError(f"change of variables for {x} is not linear and homogeneous in u1..u{n}")
            matrix.append(row)
    raw = RawSystem(n=n, rhs=tuple(rhs), params=tuple(params), laurent=laurent_f,
                    N=header.get("N"), k=header.get("k"), b=b)
    return raw, matrix


def parse_raw_system(text: str) -> RawSystem:
    """Parse without validating the linear part or applying a change of variables."""
    return _parse(text)[0]


def parse_system(text: str) -> SystemSpec:
    raw, matrix = _parse(text)
    if matrix is not None:
        return apply_linear_change(raw, matrix)
    N = raw.N if raw.N is not None else max([2] + [sum(ex) for _, _, ex, _ in raw.terms()])
    k = raw.k if raw.k is not None else max([1] + [j for _, j, _, _ in raw.terms()])
    return SystemSpec(n=raw.n, rhs=raw.rhs, params=raw.params, laurent=raw.laurent, N=N, k=k, b=raw.b)


__all__ = ["parse_system", "parse_raw_system", "ParseError", "SpecError"]
