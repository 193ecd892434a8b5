"""Text syntax for Arnold ring elements.

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := INT | 'c' ('^' INT)? | 'x' '(' INT ',' INT ')' | '(' expr ')' | '-' factor

Parsing only checks syntax; index ranges are checked when an expression is
evaluated in a particular ring.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .arnold import RingDescriptor, RingElement


class ExpressionSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class CPower:
    power: int


@dataclass(frozen=True)
class Generator:
    i: int
    j: int


@dataclass(frozen=True)
class Neg:
    operand: "Expression"


@dataclass(frozen=True)
class Product:
    factors: tuple["Expression", ...]


@dataclass(frozen=True)
class Sum:
    first: "Expression"
    rest: tuple[tuple[str, "Expression"], ...]  # (operator, term)


Expression = Union[Int, CPower, Generator, Neg, Product, Sum]


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))", re.S)


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "name", "op", "end"
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0

    def where(p: int) -> tuple[int, int]:
        nl = text.count("\n", 0, p)
        start = text.rfind("\n", 0, p) + 1
        return 1 + nl, p - start + 1

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        line, column = where(start)
        if m.group(1):
            toks.append(_Tok("int", m.group(1), line, column))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), line, column))
        else:
            toks.append(_Tok("op", m.group(3), line, column))
        pos = m.end()
    line, column = where(len(text))
    toks.append(_Tok("end", "", line, column))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def advance(self) -> _Tok:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: str):
        tok = self.peek()
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ExpressionSyntaxError(f"expected {expected}, found {found}", tok.line, tok.column)

    def expect_op(self, op: str) -> None:
        if self.peek().kind != "op" or self.peek().text != op:
            self.fail(repr(op))
        self.advance()

    def expect_int(self) -> int:
        if self.peek().kind != "int":
            self.fail("integer")
        return int(self.advance().text)

    def is_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text in ops

    def expr(self) -> Expression:
        first = self.term()
        rest = []
        while self.is_op("+", "-"):
            op = self.advance().text
            rest.append((op, self.term()))
        return Sum(first, tuple(rest)) if rest else first

    def term(self) -> Expression:
        factors = [self.factor()]
        while self.is_op("*"):
            self.advance()
            factors.append(self.factor())
        return Product(tuple(factors)) if len(factors) > 1 else factors[0]

    def factor(self) -> Expression:
        tok = self.peek()
        if tok.kind == "int":
            return Int(int(self.advance().text))
        if tok.kind == "name" and tok.text == "c":
            self.advance()
            if self.is_op("^"):
                self.advance()
                return CPower(self.expect_int())
            return CPower(1)
        if tok.kind == "name" and tok.text == "x":
            self.advance()
            self.expect_op("(")
            i = self.expect_int()
            self.expect_op(",")
            j = self.expect_int()
            self.expect_op(")")
            return Generator(i, j)
        if self.is_op("("):
            self.advance()
            inner = self.expr()
            self.expect_op(")")
            return inner
        if self.is_op("-"):
            self.advance()
            return Neg(self.factor())
        self.fail("a factor")


def parse(text: str) -> Expression:
    p = _Parser(text)
    tree = p.expr()
    if p.peek().kind != "end":
        p.fail("end of input")
    return tree


def to_text(e: Expression) -> str:
    """Print with just enough parentheses that parsing returns ``e``."""
    if isinstance(e, Int):
        return str(e.value)
    if isinstance(e, CPower):
        return "c" if e.power == 1 else f"c^{e.power}"
    if isinstance(e, Generator):
        return f"x({e.i},{e.j})"
    if isinstance(e, Neg):
        return "-" + _as_factor(e.operand)
    if isinstance(e, Product):
        return "*".join(_as_factor(f) for f in e.factors)
    if isinstance(e, Sum):
        out = _as_term(e.first)
        for op, t in e.rest:
            out += f" {op} {_as_term(t)}"
        return out
    raise TypeError(f"not an expression: {e!r}")


def _as_factor(e: Expression) -> str:
    if isinstance(e, (Product, Sum)):
        return f"({to_text(e)})"
    return to_text(e)


def _as_term(e: Expression) -> str:
    return f"({to_text(e)})" if isinstance(e, Sum) else to_text(e)


def evaluate(e: Expression, ring: RingDescriptor) -> RingElement:
    if isinstance(e, Int):
        return ring.scalar(e.value)
    if isinstance(e, CPower):
        return ring.c(e.power)
    if isinstance(e, Generator):
        ring.check_pair(e.i, e.j)
        return ring.x(e.i, e.j)
    if isinstance(e, Neg):
        return -evaluate(e.operand, ring)
    if isinstance(e, Product):
        out = ring.one()
        for f in e.factors:
            out = out * evaluate(f, ring)
        return out
    if isinstance(e, Sum):
        out = evaluate(e.first, ring)
        for op, t in e.rest:
            v = evaluate(t, ring)
            out = out + v if op == "+" else out - v
        return out
    raise TypeError(f"not an expression: {e!r}")


def parse_element(text: str, ring: RingDescriptor) -> RingElement:
    return evaluate(parse(text), ring)
