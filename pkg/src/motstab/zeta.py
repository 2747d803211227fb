"""Kapranov zeta functions of polynomial classes and their symmetric powers.

For a class sum(a_i q^i) with integer a_i the zeta function is the product
prod (1 - q^i t)^(-a_i); symmetric powers are its t-coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .errors import NonIntegerCoefficients, NotStable, PreconditionViolated
from .mot import ONE_CLASS, MotClass
from .poly import ONE, ZERO, QPolynomial


def as_poly(a) -> QPolynomial:
    return MotClass.coerce(a).as_poly()


@dataclass(frozen=True)
class ZetaProduct:
    """prod_i (1 - q^i t)^(-a_i), stored as ((i, a_i), ...) with i increasing."""

    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        idx = [i for i, _ in self.factors]
        if idx != sorted(set(idx)) or any(a == 0 for _, a in self.factors):
            raise ValueError("zeta factors need strictly increasing i and nonzero exponents")

    def linear_coefficient(self) -> QPolynomial:
        """The t^1 coefficient, which reproduces the class."""
        return QPolynomial.from_dict({i: a for i, a in self.factors})

    def series(self, n: int) -> List[QPolynomial]:
        """Coefficients of t^0 .. t^n."""
        out = [ONE] + [ZERO] * n
        for i, a in self.factors:
            out = _mul_trunc(out, _binomial_series(i, a, n), n)
        return out

    def evaluate_at_q_power(self, d: int) -> MotClass:
        """Value at t = q^(-d), defined when every i < d."""
        val = ONE_CLASS
        for i, a in self.factors:
            if i >= d:
                raise PreconditionViolated(f"factor (1 - q^{i} t) has no expansion at t = q^-{d}")
            val = val * _one_minus_q_neg(d - i) ** (-a)
        return val

    def __str__(self):
        parts = []
        for i, a in self.factors:
            base = "1-t" if i == 0 else ("1-q t" if i == 1 else f"1-q^{i} t")
            parts.append(f"({base})^{{{-a}}}")
        return " ".join(parts) if parts else "1"


def _binomial_series(i: int, a: int, n: int) -> List[QPolynomial]:
    """(1 - q^i t)^(-a) up to t^n; any integer a."""
    out = []
    coef = Fraction(1)
    for k in range(n + 1):
        # generalized binomial: coefficient of x^k in (1-x)^(-a) is C(a+k-1, k)
        out.append(QPolynomial.monomial(i * k, coef) if coef else ZERO)
        coef = coef * (a + k) / (k + 1)
    return out


def _mul_trunc(x: List[QPolynomial], y: List[QPolynomial], n: int) -> List[QPolynomial]:
    out = [ZERO] * (n + 1)
    for j, yj in enumerate(y):
        if yj.is_zero():
            continue
        for k in range(n + 1 - j):
            if not x[k].is_zero():
                out[j + k] = out[j + k] + x[k] * yj
    return out


def _one_minus_q_neg(k: int) -> MotClass:
    """1 - q^(-k) = (q^k - 1)/q^k, a unit of the localized ring."""
    return MotClass(QPolynomial.q_power_minus_one(k), k)


def kapranov_zeta(p) -> ZetaProduct:
    p = p if isinstance(p, QPolynomial) else as_poly(p)
    if not p.has_integer_coefficients():
        raise NonIntegerCoefficients(f"{p} has non-integer coefficients")
    return ZetaProduct(tuple((i, a) for i, a in sorted(p.to_dict().items())))


def sym_power(p, n: int) -> QPolynomial:
    """[Sym^n X] for [X] = p: the t^n coefficient of the zeta product."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return kapranov_zeta(p).series(n)[n]


def sym_powers(p, n: int) -> List[QPolynomial]:
    """[Sym^0 X], ..., [Sym^n X] in one pass."""
    return kapranov_zeta(p).series(n)


def sym_limit(p) -> MotClass:
    """lim Sym^n(p) / q^(n*deg p) for monic p.

    Equals prod_{i<s} (1 - q^(i-s))^(-a_i), each factor a localized unit.
    """
    p = p if isinstance(p, QPolynomial) else as_poly(p)
    if p.is_zero():
        raise PreconditionViolated("sym_limit of the zero class")
    zeta = kapranov_zeta(p)
    if p.leading_coefficient != 1:
        raise NotStable(f"{p} is not monic; its symmetric powers do not stabilize")
    s = p.degree
    lower = ZetaProduct(tuple((i, a) for i, a in zeta.factors if i < s))
    return lower.evaluate_at_q_power(s)


def open_closed_limit_check(u, z) -> bool:
    """Compare sym_limit(u+z) with Z_z(q^-d) * sym_limit(u), d = deg(u+z)."""
    u = u if isinstance(u, QPolynomial) else as_poly(u)
    z = z if isinstance(z, QPolynomial) else as_poly(z)
    x = u + z
    if x.is_zero() or z.degree >= x.degree:
        raise PreconditionViolated("the closed part must have smaller dimension than the whole")
    if not x.is_monic():
        raise PreconditionViolated(f"{x} is not monic")
    d = x.degree
    return sym_limit(x) == kapranov_zeta(z).evaluate_at_q_power(d) * sym_limit(u)
