"""Polynomial expression parsing and printing.

Grammar: integer and rational literals (``a/b``), the variable X,
operators ``+ - * ^`` with the usual precedence, parentheses, and
implicit multiplication (``2X``, ``3(X+1)``).  Exponents must be
nonnegative integer literals, so ``X^-1`` and ``X^X`` are rejected.
Whitespace between tokens is ignored.  ``parse_poly(format_poly(p))``
round-trips exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import RatPoly

__all__ = ["parse_poly", "format_poly", "PolyParseError"]


class PolyParseError(ValueError):
    """Syntax error with the offending position in the source text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_OPS = "+-*^()"


def _tokenize(text: str):
    """Yield (kind, value, pos) tokens; kind in {num, int, var, op}."""
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                num = Fraction(int(text[i:j]), int(text[j + 1:k]))
                tokens.append(("num", num, i))
                i = k
            else:
                tokens.append(("int", int(text[i:j]), i))
                i = j
            continue
        if ch in ("X", "x"):
            tokens.append(("var", "X", i))
            i += 1
            continue
        if ch in _OPS:
            tokens.append(("op", ch, i))
            i += 1
            continue
        raise PolyParseError(f"unexpected character {ch!r}", i)
    return tokens


def _insert_implicit_mul(tokens):
    """Adjacent value tokens multiply: 2X, 2(X+1), (X+1)(X-1), X(X+2)."""
    out = []
    for tok in tokens:
        if out:
            prev = out[-1]
            left_value = prev[0] in ("num", "int", "var") or prev[1] == ")"
            right_value = tok[0] in ("var",) or tok[1] == "("
            if left_value and right_value:
                out.append(("op", "*", tok[2]))
        out.append(tok)
    return out


class _Parser:
    def __init__(self, tokens, source_len):
        self.tokens = tokens
        self.pos = 0
        self.source_len = source_len

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self):
        tok = self.peek()
        if tok is None:
            raise PolyParseError("unexpected end of input", self.source_len)
        self.pos += 1
        return tok

    def expect_op(self, op):
        tok = self.advance()
        if tok[0] != "op" or tok[1] != op:
            raise PolyParseError(f"expected {op!r}", tok[2])

    def parse_expression(self) -> RatPoly:
        value = self.parse_term()
        while True:
            tok = self.peek()
            if tok is not None and tok[0] == "op" and tok[1] in "+-":
                self.advance()
                rhs = self.parse_term()
                value = value + rhs if tok[1] == "+" else value - rhs
            else:
                return value

    def parse_term(self) -> RatPoly:
        value = self.parse_factor()
        while True:
            tok = self.peek()
            if tok is not None and tok[0] == "op" and tok[1] == "*":
                self.advance()
                value = value * self.parse_factor()
            else:
                return value

    def parse_factor(self) -> RatPoly:
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] in "+-":
            self.advance()
            value = self.parse_factor()
            return value if tok[1] == "+" else -value
        return self.parse_power()

    def parse_power(self) -> RatPoly:
        base = self.parse_atom()
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] == "^":
            self.advance()
            exp_tok = self.peek()
            if exp_tok is None:
                raise PolyParseError("missing exponent", self.source_len)
            if exp_tok[0] == "op" and exp_tok[1] == "-":
                raise PolyParseError("negative exponents are not polynomial", exp_tok[2])
            if exp_tok[0] != "int":
                raise PolyParseError("exponent must be a nonnegative integer literal",
                                     exp_tok[2])
            self.advance()
            return base ** exp_tok[1]
        return base

    def parse_atom(self) -> RatPoly:
        tok = self.advance()
        kind, value, pos = tok
        if kind in ("num", "int"):
            return RatPoly.constant(Fraction(value))
        if kind == "var":
            return RatPoly.x()
        if kind == "op" and value == "(":
            inner = self.parse_expression()
            self.expect_op(")")
            return inner
        raise PolyParseError(f"unexpected token {value!r}", pos)


def parse_poly(text: str) -> RatPoly:
    """Parse an expression into an exact RatPoly."""
    tokens = _insert_implicit_mul(_tokenize(text))
    if not tokens:
        raise PolyParseError("empty expression", 0)
    parser = _Parser(tokens, len(text))
    result = parser.parse_expression()
    trailing = parser.peek()
    if trailing is not None:
        raise PolyParseError(f"trailing input {trailing[1]!r}", trailing[2])
    return result


def _format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    return f"({c})"


def format_poly(p: RatPoly) -> str:
    """Canonical display form, descending powers; reparses to the same poly."""
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeff(i)
        if c == 0:
            continue
        if isinstance(c, Fraction):
            negative = c < 0
            mag = -c if negative else c
            mag_str = str(mag)
            one = mag == 1
        else:
            negative = False
            mag_str = _format_coeff(c)
            one = False
        if i == 0:
            body = mag_str
        else:
            var = "X" if i == 1 else f"X^{i}"
            body = var if one else f"{mag_str}*{var}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)
