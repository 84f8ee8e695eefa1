"""Parser for the text form of enveloping-algebra elements.

Grammar (whitespace is ignored)::

    expr    := ['-'] term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := number | 'l[' int ']' ['^' posint] | 'c' ['^' posint]
    number  := digits ['/' digits]

Products are taken in the order written and straightened, so the result is
always in normal form.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .lie import C, UElement, multiply

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<gen>l\[\s*(?P<idx>[+-]?\d+)\s*\])|(?P<c>c)|(?P<op>[-+*^]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            skip = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos + skip]!r}", pos + skip)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        if kind == "idx":
            kind = "gen"
        value = m.group("idx") if kind == "gen" else m.group(kind)
        out.append((kind, value, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.take()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", pos)

    def expr(self) -> UElement:
        sign = 1
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            self.take()
            sign = -1 if value == "-" else 1
        total = self.term().scale(sign)
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                t = self.term()
                total = total + t if value == "+" else total - t
            else:
                break
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {value!r}", pos)
        return total

    def term(self) -> UElement:
        out = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.take()
                out = multiply(out, self.factor())
            else:
                return out

    def exponent(self) -> int:
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.take()
            kind, value, pos = self.take()
            if kind != "num" or "/" in value:
                raise ParseError("exponent must be a positive integer", pos)
            e = int(value)
            if e <= 0:
                raise ParseError("exponent must be positive", pos)
            return e
        return 1

    def factor(self) -> UElement:
        kind, value, pos = self.take()
        if kind == "num":
            _, _, den = value.partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator", pos)
            return UElement.constant(Fraction(value))
        if kind == "gen":
            return UElement.gen(int(value)) ** self.exponent()
        if kind == "c":
            return UElement.gen(C) ** self.exponent()
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {value!r}", pos)


def parse(text: str) -> UElement:
    """Parse an expression into a normal-form UElement."""
    return _Parser(text).expr()
