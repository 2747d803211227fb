"""Truncated Laurent series in u = 1/q.

A series stores the coefficients of u^m0, u^(m0+1), ... and a precision N:
every coefficient at an exponent <= N is exact, nothing is known above N.
``precision=None`` marks an exact (untruncated) series, which only arises
for the exact zero and for finite sums of monomials built by hand.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from .errors import ParseError
from .poly import _norm


class LaurentSeries:
    __slots__ = ("min_exponent", "coefficients", "precision")

    def __init__(self, min_exponent: int, coefficients, precision: Optional[int]):
        cs = [_norm(c) for c in coefficients]
        if precision is not None:
            keep = max(0, precision - min_exponent + 1)
            cs = cs[:keep]
        while cs and cs[-1] == 0:
            cs.pop()
        lead = 0
        while lead < len(cs) and cs[lead] == 0:
            lead += 1
        if lead == len(cs):
            cs = []
            min_exponent = (precision + 1) if precision is not None else 0
        else:
            cs = cs[lead:]
            min_exponent += lead
        self.min_exponent = min_exponent
        self.coefficients = tuple(cs)
        self.precision = precision

    @classmethod
    def zero(cls, precision: Optional[int] = None) -> "LaurentSeries":
        return cls(0, (), precision)

    @classmethod
    def one(cls, precision: Optional[int] = None) -> "LaurentSeries":
        return cls(0, (1,), precision)

    @classmethod
    def from_terms(cls, terms: dict, precision: Optional[int]) -> "LaurentSeries":
        if not terms:
            return cls.zero(precision)
        lo, hi = min(terms), max(terms)
        cs = [0] * (hi - lo + 1)
        for e, c in terms.items():
            cs[e - lo] += c
        return cls(lo, cs, precision)

    # accessors
    def is_exact(self) -> bool:
        return self.precision is None

    def is_zero(self) -> bool:
        """True for the exact zero and for O(u^(N+1)) alike."""
        return not self.coefficients

    @property
    def valuation(self):
        """Smallest exponent with a nonzero coefficient (None if all known ones vanish)."""
        return self.min_exponent if self.coefficients else None

    def __getitem__(self, e: int):
        if self.precision is not None and e > self.precision:
            raise IndexError(f"coefficient of u^{e} is beyond precision {self.precision}")
        i = e - self.min_exponent
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return 0

    coefficient = __getitem__

    def terms(self) -> dict:
        return {self.min_exponent + i: c for i, c in enumerate(self.coefficients) if c != 0}

    def truncate(self, n: int) -> "LaurentSeries":
        if self.precision is not None and n > self.precision:
            raise ValueError(f"cannot raise precision from {self.precision} to {n}")
        return LaurentSeries(self.min_exponent, self.coefficients, n)

    # arithmetic
    @staticmethod
    def _min_prec(*ps):
        known = [p for p in ps if p is not None]
        return min(known) if known else None

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries(0, (other,), None)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        prec = self._min_prec(self.precision, other.precision)
        terms = self.terms()
        for e, c in other.terms().items():
            terms[e] = terms.get(e, 0) + c
        if prec is not None:
            terms = {e: c for e, c in terms.items() if e <= prec}
        return LaurentSeries.from_terms(terms, prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.min_exponent, [-c for c in self.coefficients], self.precision)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return LaurentSeries.zero(self.precision)
            return LaurentSeries(self.min_exponent, [c * other for c in self.coefficients], self.precision)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if (self.is_exact() and self.is_zero()) or (other.is_exact() and other.is_zero()):
            return LaurentSeries.zero()
        # a product is only known up to min(Na + vb, Nb + va); with nonnegative
        # valuations this never exceeds min(Na, Nb), which is also imposed
        va = self.min_exponent if self.coefficients else None
        vb = other.min_exponent if other.coefficients else None
        cands = [self.precision, other.precision]
        if self.precision is not None and vb is not None:
            cands.append(self.precision + vb)
        if other.precision is not None and va is not None:
            cands.append(other.precision + va)
        prec = self._min_prec(*cands)
        if va is None or vb is None:
            return LaurentSeries.zero(prec)
        a, b = self.coefficients, other.coefficients
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return LaurentSeries(va + vb, out, prec)

    __rmul__ = __mul__

    # comparison
    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.precision == other.precision
            and self.min_exponent == other.min_exponent
            and self.coefficients == other.coefficients
        )

    def __hash__(self):
        return hash((self.min_exponent, self.coefficients, self.precision))

    def agrees_with(self, other: "LaurentSeries", upto: Optional[int] = None, tol=0) -> bool:
        """Coefficientwise agreement at all exponents <= ``upto``.

        ``upto`` defaults to the smaller of the two precisions.
        """
        if upto is None:
            upto = self._min_prec(self.precision, other.precision)
        if upto is None:
            return self.terms() == other.terms()
        lo = min(self.min_exponent, other.min_exponent)
        for e in range(lo, upto + 1):
            if abs(self[e] - other[e]) > tol:
                return False
        return True

    # text encoding
    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"LaurentSeries({format_series(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "LaurentSeries":
        return parse_series(text)


def _exp_text(e: int) -> str:
    return f"u^{{{e}}}" if e < 0 else f"u^{e}"


def format_series(s: LaurentSeries) -> str:
    """Ascending powers of u, e.g. ``1 - u - u^2 + u^3 + O(u^4)``."""
    parts = []
    for e, c in sorted(s.terms().items()):
        mag = abs(c)
        if isinstance(mag, Fraction):
            ctext = f"{mag.numerator}/{mag.denominator}"
        else:
            ctext = str(mag)
        if e == 0:
            body = ctext
        else:
            mono = "u" if e == 1 else _exp_text(e)
            body = mono if mag == 1 else f"{ctext}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(f" {'-' if c < 0 else '+'} {body}")
    if s.precision is not None:
        o = f"O(u^{{{s.precision + 1}}})"
        parts.append(o if not parts else f" + {o}")
    return "".join(parts) if parts else "0"


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
    (?:
      O\(\s*u\s*(?:\^\s*\{?\s*(?P<oexp>-?\d+)\s*\}?)?\s*\)
    |
      (?P<coef>\d+(?:/\d+)?)?\s*\*?\s*
      (?P<u>u(?:\s*\^\s*\{?\s*(?P<exp>-?\d+)\s*\}?)?)?
    )\s*""",
    re.VERBOSE,
)


def parse_series(text: str) -> LaurentSeries:
    src = text.strip()
    if src == "0":
        return LaurentSeries.zero()
    pos, terms, prec = 0, {}, None
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse series near {src[pos:]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group(0).strip().lstrip("+-").strip().startswith("O"):
            prec = int(m.group("oexp") or 1) - 1
        else:
            if m.group("coef") is None and m.group("u") is None:
                raise ParseError(f"empty term in series {text!r}")
            c = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
            e = 0
            if m.group("u"):
                e = int(m.group("exp")) if m.group("exp") else 1
            terms[e] = terms.get(e, 0) + sign * c
        pos = m.end()
    return LaurentSeries.from_terms(terms, prec)
