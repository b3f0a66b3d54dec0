"""Recursive-descent parser for polynomial expressions."""

from __future__ import annotations

import re
from fractions import Fraction

from .mpoly import MPoly


class ParseError(ValueError):
    """Malformed expression; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(ParseError):
    def __init__(self, name: str, position: int):
        super().__init__(f"unknown variable {name!r}", position)
        self.name = name


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    n = len(src)
    while pos < n:
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            start = pos + (len(src[pos:]) - len(src[pos:].lstrip()))
            raise ParseError(f"unexpected character {src[start]!r}", start)
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", num, start))
        elif name is not None:
            out.append(("name", name, start))
        else:
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, src: str, variables: tuple[str, ...]):
        self.toks = _tokenize(src)
        self.i = 0
        self.vars = variables

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.take()
        if text != value or kind != "op":
            raise ParseError(f"expected {value!r}, found {text or 'end of input'!r}", pos)

    # expr := term (('+'|'-') term)*
    def expr(self) -> MPoly:
        result = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.take()
                rhs = self.term()
                result = result + rhs if text == "+" else result - rhs
            else:
                return result

    # term := unary (('*'|'/') unary | implicit-factor)*
    def term(self) -> MPoly:
        result = self.unary()
        while True:
            kind, text, pos = self.peek()
            if kind == "op" and text == "*":
                self.take()
                result = result * self.unary()
            elif kind == "op" and text == "/":
                self.take()
                _, _, dpos = self.peek()
                rhs = self.unary()
                if not rhs.is_constant():
                    raise ParseError("division by a non-constant expression", dpos)
                if rhs.is_zero():
                    raise ParseError("division by zero", dpos)
                result = result * (1 / rhs.constant_value())
            else:
                return result

    def unary(self) -> MPoly:
        kind, text, _ = self.peek()
        if kind == "op" and text in "+-":
            self.take()
            inner = self.unary()
            return -inner if text == "-" else inner
        return self.power()

    # power := atom ('^' unsigned-integer)?   (right-assoc not needed)
    def power(self) -> MPoly:
        base = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.take()
            k2, t2, p2 = self.take()
            if k2 == "op" and t2 == "(":
                k2, t2, p2 = self.take()
                self.expect(")")
            if k2 != "num" or not t2.isdigit():
                raise ParseError("exponent must be a non-negative integer", p2)
            base = base ** int(t2)
        return base

    def atom(self) -> MPoly:
        kind, text, pos = self.take()
        if kind == "num":
            return MPoly.const(Fraction(text), self.vars)
        if kind == "name":
            if text not in self.vars:
                raise UnknownVariableError(text, pos)
            return MPoly.var(text).with_vars(self.vars)
        if kind == "op" and text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {text or 'end of input'!r}", pos)


def parse_poly(src: str, variables=("x", "y", "z")) -> MPoly:
    """Parse ``src`` into an expanded :class:`MPoly` over ``variables``.

    Accepts integer and decimal literals, ``+ - * /``, ``^`` or ``**`` with
    non-negative integer exponents, and parentheses.  Division is only
    allowed by constants.
    """
    variables = tuple(variables)
    p = _Parser(src, variables)
    result = p.expr()
    kind, text, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {text!r}", pos)
    return result.with_vars(variables)
