"""
Parser for matrix polynomial expressions.

    matrix := '[' row (';' row)* ']'
    row    := poly (',' poly)*
    poly   := ['+'|'-'] term (('+'|'-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER ('/' NUMBER)? | 'i' | 'x'DIGIT | '(' poly ')'

There is no implicit multiplication.  The dimension is the largest variable
index used (at least 1) unless a dimension is declared.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import PolydomError
from .matpoly import MatrixPoly
from .poly import MAX_DIM, GaussianRational, ScalarPoly


class ParseError(PolydomError, ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.message = message
        super().__init__(f"line {self.line}, column {self.column}: {message}")


@dataclass(frozen=True)
class ParseInput:
    text: str
    declared_dim: Optional[int] = None


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x\d+)|(?P<imag>i)|(?P<op>[-+*/^(),;\[\]]))")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list:
    toks, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind if kind != "op" else m.group(kind), m.group(kind), start))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


class _Parser:
    """Builds an expression tree of (kind, payload) tuples; polynomials are
    assembled afterwards once the dimension is known."""

    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.max_var = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{msg}, found {found}", self.text, tok.pos)

    def eat(self, kind: str) -> _Tok:
        if self.tok.kind != kind:
            self.error(f"expected {kind!r}")
        tok = self.tok
        self.i += 1
        return tok

    def matrix(self):
        self.eat("[")
        rows = [self.row()]
        while self.tok.kind == ";":
            self.i += 1
            rows.append(self.row())
        self.eat("]")
        self.eat("eof")
        return rows

    def row(self):
        start = self.tok
        entries = [self.poly()]
        while self.tok.kind == ",":
            self.i += 1
            entries.append(self.poly())
        return start, entries

    def single(self):
        node = self.poly()
        self.eat("eof")
        return node

    def poly(self):
        sign = None
        if self.tok.kind in ("+", "-"):
            sign = self.tok.kind
            self.i += 1
        node = self.term()
        if sign == "-":
            node = ("neg", node)
        while self.tok.kind in ("+", "-"):
            op = self.tok.kind
            self.i += 1
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok.kind == "*":
            self.i += 1
            node = ("mul", node, self.unary())
        return node

    def unary(self):
        if self.tok.kind == "-":
            self.i += 1
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.tok.kind == "^":
            self.i += 1
            exp = self.eat("num")
            node = ("pow", node, int(exp.text))
        return node

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            value = Fraction(int(tok.text))
            if self.tok.kind == "/":
                self.i += 1
                den = self.eat("num")
                if int(den.text) == 0:
                    raise ParseError("division by zero", self.text, den.pos)
                value /= int(den.text)
            return ("const", GaussianRational(value))
        if tok.kind == "imag":
            self.i += 1
            return ("const", GaussianRational(0, 1))
        if tok.kind == "var":
            self.i += 1
            k = int(tok.text[1:])
            if not 1 <= k <= MAX_DIM:
                raise ParseError(f"variable index must be in 1..{MAX_DIM}", self.text, tok.pos)
            self.max_var = max(self.max_var, k)
            return ("var", k, tok.pos)
        if tok.kind == "(":
            self.i += 1
            node = self.poly()
            self.eat(")")
            return node
        self.error("expected a number, 'i', a variable or '('")


def _build(node, dim: int) -> ScalarPoly:
    kind = node[0]
    if kind == "const":
        return ScalarPoly.constant(dim, node[1])
    if kind == "var":
        return ScalarPoly.variable(dim, node[1])
    if kind == "neg":
        return -_build(node[1], dim)
    if kind == "pow":
        return _build(node[1], dim) ** node[2]
    a, b = _build(node[1], dim), _build(node[2], dim)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    return a * b


def _resolve_dim(parser: _Parser, declared: Optional[int], text: str) -> int:
    if declared is None:
        return max(parser.max_var, 1)
    if not 1 <= declared <= MAX_DIM:
        raise ParseError(f"declared dimension must be in 1..{MAX_DIM}", text, 0)
    if parser.max_var > declared:
        pos = next(t.pos for t in parser.toks if t.kind == "var" and int(t.text[1:]) > declared)
        raise ParseError(f"x{parser.max_var} exceeds declared dimension {declared}", text, pos)
    return declared


def parse_matrix_poly(source, declared_dim: Optional[int] = None) -> MatrixPoly:
    """Parse '[a, b; c, d]' into a MatrixPoly. Accepts a str or a ParseInput."""
    if isinstance(source, ParseInput):
        text, declared_dim = source.text, source.declared_dim if declared_dim is None else declared_dim
    else:
        text = source
    parser = _Parser(text)
    rows = parser.matrix()
    width = len(rows[0][1])
    for start, entries in rows[1:]:
        if len(entries) != width:
            raise ParseError(f"ragged rows: expected {width} entries, got {len(entries)}", text, start.pos)
    dim = _resolve_dim(parser, declared_dim, text)
    return MatrixPoly([[_build(e, dim) for e in entries] for _, entries in rows])


def parse_poly(text: str, declared_dim: Optional[int] = None) -> ScalarPoly:
    parser = _Parser(text)
    node = parser.single()
    return _build(node, _resolve_dim(parser, declared_dim, text))


def parse_any(text: str, declared_dim: Optional[int] = None) -> MatrixPoly:
    """A bracketed matrix, or a bare polynomial read as a 1x1 matrix."""
    if text.lstrip().startswith("["):
        return parse_matrix_poly(text, declared_dim)
    return MatrixPoly([[parse_poly(text, declared_dim)]])
