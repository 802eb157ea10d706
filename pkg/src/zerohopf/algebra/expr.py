"""Recursive-descent parser for polynomial expressions.

Grammar (``^`` and ``**`` both denote powers)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') signed_int)?
    atom   := NUMBER | NAME | '(' expr ')'

Division is only defined by nonzero constants and by monomials in laurent
symbols, which is all the averaging pipeline ever needs.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional

from .poly import DEFAULT_LAURENT, LaurentError, MultiPoly


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^(),;=])
""", re.VERBOSE)


def tokenize(text: str, line: int = 1, col: int = 1) -> List[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind == "nl":
            line += 1
            col = 1
        else:
            if kind not in ("ws", "comment"):
                out.append(Token(kind, tok, line, col))
            col += len(tok)
        pos = m.end()
    return out


class ExprParser:
    def __init__(self, tokens: List[Token], symbols: Optional[Iterable[str]] = None,
                 laurent=DEFAULT_LAURENT):
        self.tokens = tokens
        self.i = 0
        self.symbols = None if symbols is None else set(symbols)
        self.laurent = frozenset(laurent)

    # token helpers
    def peek(self) -> Optional[Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def error(self, msg: str, tok: Optional[Token] = None):
        tok = tok or self.peek() or (self.tokens[-1] if self.tokens else Token("eof", "", 1, 1))
        raise ParseError(msg, tok.line, tok.col)

    def take(self, text: Optional[str] = None, kind: Optional[str] = None) -> Token:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input")
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            self.error(f"expected {text or kind}, found {tok.text!r}", tok)
        self.i += 1
        return tok

    def at(self, *texts) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == "op" and tok.text in texts

    # grammar
    def expr(self) -> MultiPoly:
        val = self.term()
        while self.at("+", "-"):
            op = self.take().text
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> MultiPoly:
        val = self.unary()
        while self.at("*", "/"):
            op_tok = self.take()
            rhs = self.unary()
            if op_tok.text == "*":
                val = val * rhs
            else:
                if rhs.is_zero():
                    self.error("division by zero", op_tok)
                if not rhs.is_monomial():
                    self.error("division is only allowed by a constant or a monomial", op_tok)
                try:
                    val = val / rhs
                except LaurentError as exc:
                    self.error(str(exc), op_tok)
        return val

    def unary(self) -> MultiPoly:
        if self.at("-"):
            self.take()
            return -self.unary()
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.at("^", "**"):
            op_tok = self.take()
            sign = 1
            paren = False
            if self.at("("):
                self.take()
                paren = True
            if self.at("-"):
                self.take()
                sign = -1
            tok = self.take(kind="num")
            if "." in tok.text:
                self.error("exponent must be an integer", tok)
            if paren:
                self.take(")")
            n = sign * int(tok.text)
            try:
                return base ** n
            except (LaurentError, ZeroDivisionError) as exc:
                self.error(str(exc), op_tok)
        return base

    def atom(self) -> MultiPoly:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input")
        if tok.kind == "num":
            self.take()
            return MultiPoly.const(Fraction(tok.text), self.laurent)
        if tok.kind == "name":
            self.take()
            if self.symbols is not None and tok.text not in self.symbols:
                self.error(f"unknown symbol {tok.text!r}", tok)
            return MultiPoly.var(tok.text, laurent=self.laurent)
        if self.at("("):
            self.take()
            val = self.expr()
            self.take(")")
            return val
        self.error(f"unexpected token {tok.text!r}", tok)

    def done(self) -> bool:
        return self.i >= len(self.tokens)


def parse_poly(text: str, symbols: Optional[Iterable[str]] = None, laurent=DEFAULT_LAURENT) -> MultiPoly:
    """Parse a polynomial expression, e.g. the canonical text of a MultiPoly."""
    parser = ExprParser(tokenize(text), symbols, laurent)
    if parser.done():
        raise ParseError("empty expression")
    val = parser.expr()
    if not parser.done():
        parser.error(f"unexpected token {parser.peek().text!r}")
    return val
