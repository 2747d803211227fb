"""Dense univariate polynomials in q with exact rational coefficients.

Coefficients are kept as ``int`` whenever they are integral and as
``fractions.Fraction`` otherwise; Python mixes the two exactly and the
integer fast path matters for the large products in the rank-stability code.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

Coeff = Union[int, Fraction]

NEG_INF = float("-inf")


def _norm(c) -> Coeff:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _norm(Fraction(c))
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


def _trim(cs: list) -> tuple:
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


class QPolynomial:
    """Polynomial ``c0 + c1*q + ... + cd*q^d``; immutable.

    The zero polynomial has degree ``-inf``.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Iterable = (), *, _trusted: bool = False):
        if _trusted:
            self._c = coeffs
        else:
            self._c = _trim([_norm(c) for c in coeffs])
        self._hash = None

    # construction helpers
    @classmethod
    def from_dict(cls, terms: Mapping[int, Coeff]) -> "QPolynomial":
        if not terms:
            return ZERO
        if min(terms) < 0:
            raise ValueError("negative degree in polynomial")
        cs = [0] * (max(terms) + 1)
        for d, c in terms.items():
            cs[d] += _norm(c)
        return cls(cs)

    @classmethod
    def constant(cls, c) -> "QPolynomial":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "QPolynomial":
        if degree < 0:
            raise ValueError("negative degree")
        return cls([0] * degree + [coeff])

    @classmethod
    def q_power_minus_one(cls, b: int) -> "QPolynomial":
        """The polynomial q^b - 1."""
        return cls([-1] + [0] * (b - 1) + [1])

    # basic accessors
    @property
    def coeffs(self) -> tuple:
        return self._c

    def to_dict(self) -> dict:
        return {d: c for d, c in enumerate(self._c) if c != 0}

    @property
    def degree(self):
        return len(self._c) - 1 if self._c else NEG_INF

    @property
    def leading_coefficient(self) -> Coeff:
        return self._c[-1] if self._c else 0

    def __getitem__(self, d: int) -> Coeff:
        return self._c[d] if 0 <= d < len(self._c) else 0

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == 1

    def has_integer_coefficients(self) -> bool:
        return all(isinstance(c, int) for c in self._c)

    def __bool__(self):
        return bool(self._c)

    # arithmetic
    @staticmethod
    def _coerce(other) -> "QPolynomial":
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return QPolynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = _norm(out[i] + c)
        return QPolynomial(_trim(out), _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial(tuple(-c for c in self._c), _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return QPolynomial(_trim([_norm(c) for c in out]), _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "QPolynomial":
        c = _norm(c)
        if c == 0:
            return ZERO
        return QPolynomial(tuple(_norm(x * c) for x in self._c), _trusted=True)

    def shift(self, k: int) -> "QPolynomial":
        """Multiply by q^k (k >= 0) or divide by q^-k when exact."""
        if k >= 0:
            return QPolynomial((0,) * k + self._c, _trusted=True) if self._c else ZERO
        if any(self._c[: -k]):
            raise ArithmeticError("shift would drop nonzero coefficients")
        return QPolynomial(self._c[-k:], _trusted=True)

    def divmod(self, d: "QPolynomial") -> tuple["QPolynomial", "QPolynomial"]:
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dd = d._c
        ld = dd[-1]
        k = len(rem) - len(dd)
        if k < 0:
            return ZERO, self
        quot = [0] * (k + 1)
        for i in range(k, -1, -1):
            c = rem[i + len(dd) - 1]
            if c == 0:
                continue
            if isinstance(c, int) and isinstance(ld, int) and c % ld == 0:
                f = c // ld
            else:
                f = _norm(Fraction(c) / ld)
            quot[i] = f
            for j, y in enumerate(dd):
                rem[i + j] = _norm(rem[i + j] - f * y)
        return QPolynomial(_trim(quot), _trusted=True), QPolynomial(_trim(rem), _trusted=True)

    def exact_div(self, d: "QPolynomial") -> "QPolynomial | None":
        """Quotient if ``d`` divides ``self`` exactly, else None."""
        quot, rem = self.divmod(d)
        return quot if rem.is_zero() else None

    def divides_by_q_power_minus_one(self, b: int) -> bool:
        # q^b - 1 | p  <=>  folding coefficients mod b gives zero
        folded = [0] * b
        for i, c in enumerate(self._c):
            folded[i % b] += c
        return not any(folded)

    def div_q_power_minus_one(self, b: int) -> "QPolynomial":
        """Exact quotient by q^b - 1; the caller guarantees divisibility."""
        p = self._c
        s = [0] * max(len(p) - b, 0)
        for i in range(len(s)):
            s[i] = _norm((s[i - b] if i >= b else 0) - p[i])
        return QPolynomial(_trim(s), _trusted=True)

    def valuation(self) -> int:
        """Largest k with q^k dividing self (0 for the zero polynomial)."""
        for i, c in enumerate(self._c):
            if c != 0:
                return i
        return 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return _norm(acc) if isinstance(acc, (int, Fraction)) else acc

    evaluate = __call__

    # comparison / hashing
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPolynomial([other])
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("QPolynomial", self._c))
        return self._hash

    # text encoding
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"QPolynomial({format_poly(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "QPolynomial":
        from .parsing import parse_class

        return parse_class(text).as_poly()


def _format_coeff(c: Coeff) -> str:
    if isinstance(c, Fraction):
        return f"({abs(c.numerator)}/{c.denominator})"
    return str(abs(c))


def format_poly(p: QPolynomial, var: str = "q") -> str:
    """Canonical text, e.g. ``q^4 - q^3 - q^2 + q``."""
    if p.is_zero():
        return "0"
    parts = []
    for d in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[d]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if d == 0:
            body = _format_coeff(c)
        else:
            mono = var if d == 1 else f"{var}^{d}"
            body = mono if mag == 1 else _format_coeff(c) + mono
        if not parts:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_CYCLOTOMIC: dict = {}


def cyclotomic(m: int) -> QPolynomial:
    """The m-th cyclotomic polynomial, built from q^m - 1 by division."""
    if m not in _CYCLOTOMIC:
        p = QPolynomial.q_power_minus_one(m)
        for d in range(1, m):
            if m % d == 0:
                p = p.exact_div(cyclotomic(d))
        _CYCLOTOMIC[m] = p
    return _CYCLOTOMIC[m]


ZERO = QPolynomial(())
ONE = QPolynomial((1,))
Q = QPolynomial((0, 1))
