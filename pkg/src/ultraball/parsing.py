"""Textual grammars for the CLI: rationals, field elements, balls,
filters, polynomials and truncated series.

All numerics are exact rationals in p/q form; decimal floats are
rejected by the tokenizer.  Syntax errors carry 1-based line/column
positions; semantic violations (center outside K_R, zero radius) raise
SemanticError with the violated constraint.

Grammar summary:

    rational   1/2, -3, (1+2)/4, 2^5
    element    rational, or for the t-adic field arithmetic in t,
               e.g. (t^2+1)/(2*t)
    ball       B(1/2; 0)                    radius first, then center
    filter     disc(0, 1/2)  |  chain[B(1; 0), B(1/2; 0), ...]
    poly       poly[-1, 0, 1]  |  3*(T-1)*(T+1)  |  2*T
    series     series[1, 1, 1; tail=1/2048]

The product form for polynomials populates the factorisation witness;
nested parentheses around a T-factor are not supported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .ballspace import FormalBall, RGoodFilter, Space, DiscPoint
from .errors import ParseError
from .fields import TAdicFunctionField, ValuedField
from .seminorms import Poly, TruncSeries, make_poly, poly_from_roots

_PUNCT = set("[](),;*/+-^=")


@dataclass(frozen=True)
class _Tok:
    kind: str  # int | name | punct | end
    text: str
    line: int
    col: int


def _scan(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                raise ParseError("decimal literals are not accepted; use p/q", line, start_col)
            toks.append(_Tok("int", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("name", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            toks.append(_Tok("punct", ch, line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, start_col)
    toks.append(_Tok("end", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str, field: ValuedField | None) -> None:
        self.toks = _scan(text)
        self.pos = 0
        self.field = field

    def peek(self, ahead: int = 0) -> _Tok:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def advance(self) -> _Tok:
        tok = self.toks[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}",
                             tok.line, tok.col)
        return self.advance()

    def expect_name(self, name: str) -> _Tok:
        tok = self.peek()
        if tok.kind != "name" or tok.text != name:
            raise ParseError(f"expected {name!r}, found {tok.text or 'end of input'!r}",
                             tok.line, tok.col)
        return self.advance()

    def at_end(self) -> bool:
        return self.peek().kind == "end"

    def finish(self) -> None:
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.line, tok.col)

    # -- arithmetic over rationals, or over the t-adic carrier ------------

    def element(self, allow_t: bool) -> Any:
        value = self._sum(allow_t)
        return value

    def _sum(self, allow_t: bool) -> Any:
        acc = self._term(allow_t)
        while self.peek().text in "+-" and self.peek().kind == "punct":
            op = self.advance().text
            rhs = self._term(allow_t)
            acc = self._add(acc, rhs) if op == "+" else self._sub(acc, rhs)
        return acc

    def _term(self, allow_t: bool) -> Any:
        acc = self._unary(allow_t)
        while self.peek().text in "*/" and self.peek().kind == "punct":
            op = self.advance().text
            rhs = self._unary(allow_t)
            acc = self._mul(acc, rhs) if op == "*" else self._div(acc, rhs)
        return acc

    def _unary(self, allow_t: bool) -> Any:
        if self.peek().text == "-":
            self.advance()
            return self._neg(self._unary(allow_t))
        return self._power(allow_t)

    def _power(self, allow_t: bool) -> Any:
        base = self._atom(allow_t)
        if self.peek().text == "^":
            self.advance()
            tok = self.peek()
            if tok.kind != "int":
                raise ParseError("exponent must be a nonnegative integer", tok.line, tok.col)
            self.advance()
            e = int(tok.text)
            acc = self._one()
            for _ in range(e):
                acc = self._mul(acc, base)
            return acc
        return base

    def _atom(self, allow_t: bool) -> Any:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            return self._from_rational(Fraction(int(tok.text)))
        if tok.kind == "name" and tok.text == "t":
            if not allow_t or not isinstance(self.field, TAdicFunctionField):
                raise ParseError("variable 't' is only valid for the t-adic field",
                                 tok.line, tok.col)
            self.advance()
            return self.field.t
        if tok.text == "(":
            self.advance()
            inner = self._sum(allow_t)
            self.expect(")")
            return inner
        raise ParseError(f"expected a value, found {tok.text or 'end of input'!r}",
                         tok.line, tok.col)

    def _from_rational(self, c: Fraction) -> Any:
        if self.field is None:
            return c
        return self.field.element_from_rational(c)

    def _one(self) -> Any:
        return self._from_rational(Fraction(1))

    def _add(self, x, y):
        return x + y if self.field is None else self.field.add(x, y)

    def _sub(self, x, y):
        return x - y if self.field is None else self.field.sub(x, y)

    def _neg(self, x):
        return -x if self.field is None else self.field.neg(x)

    def _mul(self, x, y):
        return x * y if self.field is None else self.field.mul(x, y)

    def _div(self, x, y):
        if self.field is None:
            if y == 0:
                raise ParseError("division by zero", self.peek().line, self.peek().col)
            return x / y
        if self.field.is_zero(y):
            raise ParseError("division by zero", self.peek().line, self.peek().col)
        return self.field.div(x, y)


def _rational(parser: _Parser) -> Fraction:
    saved = parser.field
    parser.field = None
    try:
        value = parser.element(allow_t=False)
    finally:
        parser.field = saved
    return value


def parse_rational(text: str) -> Fraction:
    p = _Parser(text, None)
    value = _rational(p)
    p.finish()
    return value


def parse_element(text: str, field: ValuedField) -> Any:
    p = _Parser(text, field)
    value = p.element(allow_t=True)
    p.finish()
    return value


def _ball(p: _Parser, space: Space) -> FormalBall:
    p.expect_name("B")
    p.expect("(")
    radius = _rational(p)
    p.expect(";")
    center = p.element(allow_t=True)
    p.expect(")")
    return space.ball(center, radius)


def parse_ball(text: str, space: Space) -> FormalBall:
    p = _Parser(text, space.field)
    ball = _ball(p, space)
    p.finish()
    return ball


def parse_filter(text: str, space: Space) -> RGoodFilter:
    p = _Parser(text, space.field)
    tok = p.peek()
    if tok.kind != "name" or tok.text not in ("disc", "chain"):
        raise ParseError("expected 'disc(...)' or 'chain[...]'", tok.line, tok.col)
    if tok.text == "disc":
        p.advance()
        p.expect("(")
        center = p.element(allow_t=True)
        p.expect(",")
        radius = _rational(p)
        p.expect(")")
        p.finish()
        return space.disc_point(center, radius)
    p.advance()
    p.expect("[")
    balls = [_ball(p, space)]
    while p.peek().text == ",":
        p.advance()
        balls.append(_ball(p, space))
    p.expect("]")
    p.finish()
    return space.chain(balls)


def _bracket_elements(p: _Parser) -> list[Any]:
    p.expect("[")
    items = [p.element(allow_t=True)]
    while p.peek().text == ",":
        p.advance()
        items.append(p.element(allow_t=True))
    return items


def _scalar_factor(p: _Parser) -> Any:
    # a product-form factor without T: sign, powers and '/' only; '*'
    # always separates top-level factors
    neg = False
    while p.peek().text == "-":
        p.advance()
        neg = not neg
    acc = p._power(allow_t=True)
    while p.peek().text == "/":
        p.advance()
        rhs = p._power(allow_t=True)
        acc = p._div(acc, rhs)
    return p._neg(acc) if neg else acc


def parse_poly(text: str, field: ValuedField) -> Poly:
    p = _Parser(text, field)
    tok = p.peek()
    if tok.kind == "name" and tok.text == "poly":
        p.advance()
        coeffs = _bracket_elements(p)
        p.expect("]")
        p.finish()
        return make_poly(field, coeffs)
    # product form: scalar and (T - root) factors, witness attached
    lead = field.one()
    roots: list[Any] = []
    while True:
        tok = p.peek()
        if tok.kind == "name" and tok.text == "T":
            p.advance()
            roots.append(field.zero())
        elif tok.text == "(" and p.peek(1).kind == "name" and p.peek(1).text == "T":
            p.advance()
            p.expect_name("T")
            op = p.peek()
            if op.text in ("+", "-"):
                p.advance()
                root = p.element(allow_t=True)
                roots.append(root if op.text == "-" else field.neg(root))
            else:
                roots.append(field.zero())
            p.expect(")")
        else:
            lead = field.mul(lead, _scalar_factor(p))
        if p.peek().text == "*":
            p.advance()
            continue
        break
    p.finish()
    return poly_from_roots(field, lead, roots)


def parse_series(text: str, field: ValuedField) -> TruncSeries:
    p = _Parser(text, field)
    p.expect_name("series")
    coeffs = _bracket_elements(p)
    p.expect(";")
    p.expect_name("tail")
    p.expect("=")
    tail = _rational(p)
    p.expect("]")
    p.finish()
    if tail < 0:
        raise ParseError("tail bound must be >= 0", 1, 1)
    return TruncSeries(tuple(coeffs), tail)


_GRAMMARS = ("rational", "element", "ball", "filter", "poly", "series")


def parse_expression(text: str, grammar: str, space: Space | None = None) -> Any:
    """Parse ``text`` under one of the documented grammars.

    ``rational`` needs no context; every other grammar needs the ambient
    space (its field, and for balls/filters the K_R constraint).
    """
    if grammar not in _GRAMMARS:
        raise ValueError(f"unknown grammar {grammar!r}; expected one of {_GRAMMARS}")
    if grammar == "rational":
        return parse_rational(text)
    if space is None:
        raise ValueError(f"grammar {grammar!r} needs an ambient space")
    if grammar == "element":
        return parse_element(text, space.field)
    if grammar == "ball":
        return parse_ball(text, space)
    if grammar == "filter":
        return parse_filter(text, space)
    if grammar == "poly":
        return parse_poly(text, space.field)
    return parse_series(text, space.field)


# ---------------------------------------------------------------------------
# printers (parse . print == identity up to value equality)


def format_element(field: ValuedField, x: Any) -> str:
    return field.format_element(x)


def format_ball(space: Space, ball: FormalBall) -> str:
    return f"B({ball.radius}; {space.field.format_element(ball.center)})"


def format_filter(filt: RGoodFilter) -> str:
    gen = filt.generator
    space = filt.space
    if isinstance(gen, DiscPoint):
        center = space.field.format_element(gen.center)
        return f"disc({center}, {gen.limit_radius})"
    if gen.prefix_len is None:
        raise ValueError("only finite chain prefixes have a textual form")
    parts = [format_ball(space, gen.ball_at(i)) for i in range(gen.prefix_len)]
    return f"chain[{', '.join(parts)}]"


def _format_root_factor(field: ValuedField, root: Any) -> str:
    if field.is_zero(root):
        return "T"
    s = field.format_element(root)
    digits = s.replace("/", "").replace("-", "", 1)
    if digits.isdigit():  # plain rational literal
        return f"(T+{s[1:]})" if s.startswith("-") else f"(T-{s})"
    return f"(T-({s}))"  # structured element: negation must bind whole


def format_poly(field: ValuedField, poly: Poly) -> str:
    if poly.witness is not None:
        parts = []
        if not field.eq(poly.witness.lead, field.one()) or not poly.witness.roots:
            lead = field.format_element(poly.witness.lead)
            if any(ch in lead for ch in "+-*/^ ") and not lead.startswith("("):
                lead = f"({lead})"
            parts.append(lead)
        parts.extend(_format_root_factor(field, r) for r in poly.witness.roots)
        return "*".join(parts)
    coeffs = ", ".join(field.format_element(c) for c in poly.coeffs) or "0"
    return f"poly[{coeffs}]"


def format_series(field: ValuedField, series: TruncSeries) -> str:
    coeffs = ", ".join(field.format_element(c) for c in series.coeffs)
    return f"series[{coeffs}; tail={series.tail_bound}]"
