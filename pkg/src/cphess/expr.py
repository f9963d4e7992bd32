"""Text expressions for polynomials.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' nat)?
    base   := nat | identifier | '(' expr ')'

A literal like ``3/4`` is a quotient of two naturals.  Division is only
allowed by expressions free of coordinate and trig symbols.
"""

from __future__ import annotations

import re

from .poly import Context, Poly, PolyError

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


class ParseError(ValueError):
    """Malformed expression; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = "") -> None:
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position
        self.text = text


class UnknownIdentifier(ParseError):
    pass


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: Context) -> None:
        self.text = text
        self.ctx = ctx
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, pos: int | None = None):
        raise ParseError(message, self.peek()[2] if pos is None else pos, self.text)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        value = self.expr()
        kind, tok, pos = self.peek()
        if kind != "end":
            self.fail(f"unexpected token {tok!r}")
        return value

    def expr(self) -> Poly:
        sign = 1
        if self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Poly:
        value = self.factor()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            pos = self.peek()[2]
            rhs = self.factor()
            if op == "*":
                value = value * rhs
                continue
            if rhs.is_zero():
                self.fail("division by zero", pos)
            if not rhs.is_param_only():
                self.fail("division by an expression containing coordinate symbols", pos)
            value = value / rhs
        return value

    def factor(self) -> Poly:
        base = self.base()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, tok, pos = self.peek()
            if kind != "num":
                self.fail("exponent must be a natural number")
            self.take()
            base = base ** int(tok)
        return base

    def base(self) -> Poly:
        kind, tok, pos = self.peek()
        if kind == "num":
            self.take()
            return Poly.const(self.ctx, int(tok))
        if kind == "ident":
            self.take()
            if tok not in self.ctx.index:
                raise UnknownIdentifier(f"unknown identifier {tok!r}", pos, self.text)
            return Poly.var(self.ctx, tok)
        if (kind, tok) == ("op", "("):
            self.take()
            value = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.fail("expected ')'")
            self.take()
            return value
        if kind == "end":
            self.fail("unexpected end of expression")
        self.fail(f"unexpected token {tok!r}")


def parse_expr(text: str, ctx: Context) -> Poly:
    """Parse ``text`` into a canonical :class:`Poly` of ``ctx``."""
    try:
        return _Parser(text, ctx).parse()
    except PolyError as exc:
        raise ParseError(str(exc), 0, text) from exc
