"""Recursive-descent parser for Laurent polynomials and rational functions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') exponent)?
    atom   := NUMBER | NAME | '(' expr ')'

Exponents are (signed) integers.  Implicit multiplication is rejected.
Division by a constant or a monomial is allowed anywhere; division by any
other polynomial is allowed once, and only at the top level, where it splits
the input into numerator and denominator.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from .errors import ParseError
from .laurent import LaurentPolynomial, RationalFunction

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>\*\*|[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            if "\n" in chunk:
                line += chunk.count("\n")
                line_start = pos + chunk.rindex("\n") + 1
        else:
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class _Value:
    """Numerator with an optional non-monomial denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPolynomial, den: Optional[LaurentPolynomial] = None):
        self.num = num
        self.den = den


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.tokens = tokenize(text)
        self.i = 0
        self.vars = tuple(variables)
        self.depth = 0
        self.divided = False

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token = None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, *ops) -> Optional[Token]:
        if self.tok.kind == "op" and self.tok.text in ops:
            return self.advance()
        return None

    def parse(self) -> _Value:
        if self.tok.kind == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.tok.kind != "end":
            if self.tok.kind in ("name", "number") or self.tok.text == "(":
                raise self.error("implicit multiplication is not supported; use '*'")
            raise self.error(f"unexpected {self.tok.text!r}")
        return value

    def expr(self) -> _Value:
        start = self.tok
        left = self.term()
        while True:
            op = self.accept("+", "-")
            if op is None:
                return left
            right = self.term()
            if left.den is not None or right.den is not None:
                raise self.error("a rational '/' must split the whole expression", start)
            left = _Value(left.num + right.num if op.text == "+" else left.num - right.num)

    def term(self) -> _Value:
        left = self.unary()
        while True:
            op = self.accept("*", "/")
            if op is None:
                return left
            right = self.unary()
            if right.den is not None:
                raise self.error("nested rational division", op)
            if op.text == "*":
                left = _Value(left.num * right.num, left.den)
                continue
            divisor = right.num
            if divisor.is_zero():
                raise self.error("division by zero", op)
            if len(divisor) == 1:
                left = _Value(left.num * divisor ** -1, left.den)
                continue
            if self.depth > 0 or self.divided or left.den is not None:
                raise self.error("only a single top-level '/' by a non-monomial is allowed", op)
            self.divided = True
            left = _Value(left.num, divisor)

    def unary(self) -> _Value:
        if self.accept("-"):
            v = self.unary()
            return _Value(-v.num, v.den)
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> _Value:
        base_tok = self.tok
        base = self.atom()
        op = self.accept("^", "**")
        if op is None:
            return base
        k = self.exponent()
        if base.den is not None:
            raise self.error("cannot raise a rational expression to a power", base_tok)
        if k < 0 and len(base.num) != 1:
            raise self.error("negative powers are only allowed on monomials", base_tok)
        return _Value(base.num ** k)

    def exponent(self) -> int:
        if self.accept("("):
            k = self.exponent()
            if not self.accept(")"):
                raise self.error("expected ')' after exponent")
            return k
        sign = 1
        while True:
            if self.accept("-"):
                sign = -sign
            elif not self.accept("+"):
                break
        tok = self.tok
        if tok.kind != "number":
            raise self.error("expected an integer exponent")
        if not tok.text.isdigit():
            raise self.error(f"non-integer exponent {tok.text!r}")
        self.advance()
        return sign * int(tok.text)

    def atom(self) -> _Value:
        tok = self.tok
        if tok.kind == "number":
            self.advance()
            return _Value(LaurentPolynomial.constant(Fraction(tok.text), self.vars))
        if tok.kind == "name":
            self.advance()
            if tok.text not in self.vars:
                raise self.error(f"unknown variable {tok.text!r}", tok)
            return _Value(LaurentPolynomial.variable(tok.text, self.vars))
        if self.accept("("):
            self.depth += 1
            inner = self.expr()
            self.depth -= 1
            if not self.accept(")"):
                raise self.error("expected ')'")
            return inner
        if tok.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {tok.text!r}")


def parse_expression(text: str, variables: Sequence[str]) -> Union[LaurentPolynomial, RationalFunction]:
    """Parse ``text``; a top-level non-monomial division yields a RationalFunction."""
    value = _Parser(text, variables).parse()
    if value.den is None:
        return value.num
    return RationalFunction(value.num, value.den)


def parse_rational(text: str, variables: Sequence[str]) -> RationalFunction:
    out = parse_expression(text, variables)
    if isinstance(out, LaurentPolynomial):
        return RationalFunction(out)
    return out


def format_expression(obj: Union[LaurentPolynomial, RationalFunction]) -> str:
    return obj.to_string()
