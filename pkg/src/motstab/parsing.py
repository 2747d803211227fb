"""Recursive-descent reader for class expressions.

Accepts everything the formatters print plus the usual hand-written forms:
``q^4 - q^3 - q^2 + q``, ``2q^6``, ``q(q-1)(q^2-1)``, ``(1/2)q^2``,
``(1) / (q^3 * (q-1)^2)``, ``q^{2g-1}``. Names other than ``q`` must be
bound to integers by keyword, which is how the catalog stores genus- and
index-dependent formulas.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import NotInvertible, ParseError
from .mot import ONE_CLASS, MotClass, q

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^(){}]))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, bindings: dict):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.bindings = bindings

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if op is not None and tok != ("op", op):
            raise ParseError(f"expected {op!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> MotClass:
        if not self.toks:
            raise ParseError("empty expression")
        val = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def _starts_primary(self):
        kind, v = self.peek()
        return kind in ("num", "name") or (kind == "op" and v in ("(", "{"))

    def term(self):
        val = self.unary()
        while True:
            tok = self.peek()
            if tok in (("op", "*"), ("op", "/")):
                self.take()
                rhs = self.unary()
                if tok[1] == "*":
                    val = val * rhs
                else:
                    val = self._div(val, rhs)
            elif self._starts_primary():
                val = val * self.power()
            else:
                return val

    def _div(self, a, b):
        if b.is_zero():
            raise ParseError(f"division by zero in {self.text!r}")
        return a / b

    def unary(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.unary()
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.primary()
        if self.peek() == ("op", "^"):
            self.take()
            e = self._int_value(self.exponent())
            if e < 0:
                try:
                    return ONE_CLASS / (base ** (-e))
                except NotInvertible as exc:
                    raise ParseError(str(exc)) from exc
            return base ** e
        return base

    def exponent(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.exponent()
        if tok == ("op", "+"):
            self.take()
            return self.exponent()
        return self.power()

    def _int_value(self, x: MotClass) -> int:
        if not x.is_polynomial() or not x.numerator.is_constant():
            raise ParseError(f"exponent must be an integer constant in {self.text!r}")
        v = x.numerator[0]
        if isinstance(v, Fraction):
            raise ParseError(f"exponent {v} is not an integer in {self.text!r}")
        return v

    def primary(self):
        kind, v = self.take()
        if kind == "num":
            return MotClass.coerce(v)
        if kind == "name":
            if v == "q":
                return q
            if v in self.bindings:
                return MotClass.coerce(self.bindings[v])
            raise ParseError(f"unbound name {v!r} in {self.text!r}")
        if (kind, v) == ("op", "("):
            val = self.expr()
            self.take(")")
            return val
        if (kind, v) == ("op", "{"):
            val = self.expr()
            self.take("}")
            return val
        raise ParseError(f"unexpected token {v!r} in {self.text!r}")


def parse_class(text: str, **bindings) -> MotClass:
    """Parse a class expression; keyword arguments bind integer names."""
    for k, v in bindings.items():
        if not isinstance(v, (int, Fraction)):
            raise TypeError(f"binding {k} must be an integer or fraction")
    try:
        return _Parser(text, bindings).parse()
    except NotInvertible as exc:
        raise ParseError(str(exc)) from exc


def parse_poly(text: str, **bindings):
    return parse_class(text, **bindings).as_poly()
