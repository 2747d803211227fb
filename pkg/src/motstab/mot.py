"""Virtual classes in the Grothendieck ring localized at q and the q^b - 1.

A :class:`MotClass` is ``numerator / (q^a * prod (q^b - 1)^c)``. Denominators
stay factored; equality is decided by cross-multiplication, so two canonical
forms of the same element (e.g. ``1/(q-1)`` and ``(q+1)/(q^2-1)``) compare
equal even though they print differently.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Tuple

from .errors import DenominatorZero, GuardViolated, NotInvertible, NotPolynomial, ZeroClass
from .poly import ONE, ZERO, QPolynomial, _norm, cyclotomic, format_poly
from .series import LaurentSeries

Guard = Tuple[int, int]


def _as_poly(x) -> QPolynomial:
    if isinstance(x, QPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return QPolynomial((x,))
    raise TypeError(f"cannot build a polynomial from {type(x).__name__}")


def _merge(cyclo: Iterable[Tuple[int, int]]) -> dict:
    out: dict = {}
    for b, c in cyclo:
        if b < 1 or c < 0:
            raise ValueError(f"invalid denominator factor (q^{b}-1)^{c}")
        if c:
            out[b] = out.get(b, 0) + c
    return out


class MotClass:
    __slots__ = ("numerator", "q_power", "cyclo", "_hash")

    def __init__(self, numerator=ZERO, q_power: int = 0, cyclo: Iterable[Tuple[int, int]] = ()):
        if q_power < 0:
            raise ValueError("q_power must be nonnegative; multiply the numerator instead")
        num = _as_poly(numerator)
        factors = _merge(cyclo)
        if num.is_zero():
            q_power, factors = 0, {}
        else:
            v = min(num.valuation(), q_power)
            if v:
                num = num.shift(-v)
                q_power -= v
            for b in sorted(factors):
                c = factors[b]
                while c and num.divides_by_q_power_minus_one(b):
                    num = num.div_q_power_minus_one(b)
                    c -= 1
                factors[b] = c
        self.numerator = num
        self.q_power = q_power
        self.cyclo = tuple((b, c) for b, c in sorted(factors.items()) if c)
        self._hash = None

    # constructors
    @classmethod
    def coerce(cls, x) -> "MotClass":
        if isinstance(x, MotClass):
            return x
        return cls(_as_poly(x))

    @classmethod
    def parse(cls, text: str, **bindings) -> "MotClass":
        from .parsing import parse_class

        return parse_class(text, **bindings)

    @property
    def cyclo_factors(self) -> Tuple[Tuple[int, int], ...]:
        return self.cyclo

    # structure
    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_polynomial(self) -> bool:
        return self.q_power == 0 and not self.cyclo

    def as_poly(self) -> QPolynomial:
        """The numerator, provided there is no denominator."""
        if not self.is_polynomial():
            raise NotPolynomial(f"{self} has a nontrivial denominator")
        return self.numerator

    def denominator_poly(self) -> QPolynomial:
        d = QPolynomial.monomial(self.q_power)
        for b, c in self.cyclo:
            d = d * QPolynomial.q_power_minus_one(b) ** c
        return d

    def denominator_degree(self) -> int:
        return self.q_power + sum(b * c for b, c in self.cyclo)

    def dimension(self) -> int:
        """deg(numerator) - a - sum(b*c); the degree for polynomial classes."""
        if self.is_zero():
            raise ZeroClass("the zero class has no dimension")
        return self.numerator.degree - self.denominator_degree()

    def is_monic(self) -> bool:
        """Leading term of the expansion is exactly q^dim."""
        return not self.is_zero() and self.numerator.leading_coefficient == 1

    # arithmetic
    def _common(self, other: "MotClass"):
        """Numerators of self and other over the smallest shared denominator."""
        a = max(self.q_power, other.q_power)
        fs, fo = dict(self.cyclo), dict(other.cyclo)
        common = {b: max(fs.get(b, 0), fo.get(b, 0)) for b in set(fs) | set(fo)}

        def lift(x: "MotClass", f: dict) -> QPolynomial:
            p = x.numerator.shift(a - x.q_power)
            for b, c in common.items():
                extra = c - f.get(b, 0)
                if extra:
                    p = p * QPolynomial.q_power_minus_one(b) ** extra
            return p

        return lift(self, fs), lift(other, fo), a, tuple(common.items())

    def __add__(self, other):
        try:
            other = MotClass.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        ns, no, a, cyc = self._common(other)
        return MotClass(ns + no, a, cyc)

    __radd__ = __add__

    def __neg__(self):
        return MotClass(-self.numerator, self.q_power, self.cyclo)

    def __sub__(self, other):
        try:
            other = MotClass.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return MotClass.coerce(other) + (-self)

    def __mul__(self, other):
        try:
            other = MotClass.coerce(other)
        except TypeError:
            return NotImplemented
        return MotClass(
            self.numerator * other.numerator,
            self.q_power + other.q_power,
            self.cyclo + other.cyclo,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = MotClass.coerce(other)
        except TypeError:
            return NotImplemented
        return mot_div(self, other)

    def __rtruediv__(self, other):
        return mot_div(MotClass.coerce(other), self)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            return mot_div(ONE_CLASS, self) ** (-n)
        return MotClass(
            self.numerator ** n,
            self.q_power * n,
            tuple((b, c * n) for b, c in self.cyclo),
        )

    # equality
    def __eq__(self, other):
        if not isinstance(other, MotClass):
            if isinstance(other, (int, Fraction, QPolynomial)):
                other = MotClass.coerce(other)
            else:
                return NotImplemented
        if self.q_power == other.q_power and self.cyclo == other.cyclo:
            return self.numerator == other.numerator
        ns, no, _, _ = self._common(other)
        return ns == no

    def __hash__(self):
        # equal classes take equal values at q = 7 (no denominator vanishes there)
        if self._hash is None:
            self._hash = hash(self.evaluate(7))
        return self._hash

    # specialization
    def evaluate(self, q0, guard: Optional[Guard] = None):
        """Substitute q = q0 exactly.

        With ``guard=(m, r)`` the substitution is refused unless q0 = r mod m.
        """
        if guard is not None:
            m, r = guard
            if (q0 - r) % m != 0:
                raise GuardViolated(f"q = {q0} violates the congruence q = {r} mod {m}")
        if self.q_power and q0 == 0:
            raise DenominatorZero("q = 0 annihilates the denominator")
        den = Fraction(q0) ** self.q_power
        for b, c in self.cyclo:
            f = Fraction(q0) ** b - 1
            if f == 0:
                raise DenominatorZero(f"q^{b} - 1 vanishes at q = {q0}")
            den *= f ** c
        return _norm(Fraction(self.numerator(Fraction(q0))) / den)

    def e_substitute(self) -> "EClass":
        return EClass(self)

    def expand(self, n: int) -> LaurentSeries:
        return expand(self, n)

    # text
    def __str__(self):
        return format_class(self)

    def __repr__(self):
        return f"MotClass({format_class(self)!r})"


def _factor_text(b: int, c: int, var: str) -> str:
    base = f"({var}-1)" if b == 1 else f"({var}^{b}-1)"
    return base if c == 1 else f"{base}^{c}"


def format_class(x: MotClass, var: str = "q") -> str:
    """``q^4 - q^3`` for polynomials, else ``(<num>) / (q^a * (q^2-1)^c * ...)``."""
    num = format_poly(x.numerator, var)
    if x.is_polynomial():
        return num
    dens = []
    if x.q_power:
        dens.append(var if x.q_power == 1 else f"{var}^{x.q_power}")
    dens.extend(_factor_text(b, c, var) for b, c in x.cyclo)
    if len(dens) == 1 and dens[0].startswith("(") and dens[0].endswith(")"):
        return f"({num}) / {dens[0]}"
    return f"({num}) / ({' * '.join(dens)})"


ZERO_CLASS = MotClass(ZERO)
ONE_CLASS = MotClass(ONE)
q = MotClass(QPolynomial((0, 1)))


def _cyclotomic_split(p: QPolynomial):
    """Write p = rest * prod (q^b-1)^e_b * prod Phi_m^f_m.

    Factors q^b - 1 are stripped greedily from the largest b down (the
    largest cyclotomic index present forces its own q^b - 1), then the
    remainder is searched for single cyclotomic factors Phi_m; phi(m) is at
    most the remaining degree and phi(m) >= sqrt(m/2) bounds m.
    Returns (rest, {b: e_b}, {m: f_m}).
    """
    whole: dict = {}
    b = p.degree if p.degree >= 1 else 0
    while b >= 1:
        if p.degree >= b and p.divides_by_q_power_minus_one(b):
            p = p.div_q_power_minus_one(b)
            whole[b] = whole.get(b, 0) + 1
            continue
        b -= 1
    phis: dict = {}
    if p.degree >= 1:
        bound = 2 * p.degree * p.degree + 2
        for m in range(2, bound + 1):
            if p.degree < 1:
                break
            phi = cyclotomic(m)
            while p.degree >= phi.degree:
                quot = p.exact_div(phi)
                if quot is None:
                    break
                p = quot
                phis[m] = phis.get(m, 0) + 1
    return p, whole, phis


def is_localized_unit(d: MotClass) -> bool:
    """True when d is invertible: numerator = c * q^k * (product of cyclotomics)."""
    if d.is_zero():
        return False
    num = d.numerator.shift(-d.numerator.valuation())
    rest, _, _ = _cyclotomic_split(num)
    return rest.is_constant()


def mot_div(a: MotClass, d: MotClass) -> MotClass:
    """Exact quotient a/d.

    Legal when d is a unit of the localization (each cyclotomic factor Phi_m
    is inverted through q^m - 1) or when the non-unit part of d divides the
    numerator of a exactly.
    """
    a, d = MotClass.coerce(a), MotClass.coerce(d)
    if d.is_zero():
        raise NotInvertible("division by the zero class")
    if a.is_zero():
        return ZERO_CLASS
    v = d.numerator.valuation()
    rest, whole, phis = _cyclotomic_split(d.numerator.shift(-v))
    top = a.numerator * d.denominator_poly()
    # 1/Phi_m = ((q^m-1)/Phi_m) / (q^m-1)
    for m, e in phis.items():
        top = top * (QPolynomial.q_power_minus_one(m).exact_div(cyclotomic(m)) ** e)
    if rest.is_constant():
        top = top.scale(Fraction(1) / Fraction(rest[0]))
    else:
        quot = top.exact_div(rest)
        if quot is None:
            raise NotInvertible(f"{format_poly(d.numerator)} is not a unit and does not divide {a}")
        top = quot
    return MotClass(top, a.q_power + v, a.cyclo + tuple(whole.items()) + tuple(phis.items()))


def expand(x: MotClass, n: int) -> LaurentSeries:
    """Expansion in u = 1/q, exact at every exponent <= n.

    Each 1/(q^b-1) contributes u^b + u^2b + ...; the numerator contributes
    negative exponents.
    """
    if x.is_zero():
        return LaurentSeries.zero(n)
    dim = x.dimension()
    depth = n + dim
    if depth < 0:
        return LaurentSeries.zero(n)
    geo = [0] * (depth + 1)
    geo[0] = 1
    for b, c in x.cyclo:
        for _ in range(c):
            # multiply by 1/(1 - u^b): strided prefix sums
            for i in range(b, depth + 1):
                geo[i] += geo[i - b]
    num = x.numerator.coeffs
    deg = len(num) - 1
    out = [0] * (depth + 1)
    for t in range(min(deg, depth) + 1):
        c = num[deg - t]
        if c == 0:
            continue
        for j in range(depth + 1 - t):
            out[t + j] += c * geo[j]
    return LaurentSeries(-dim, out, n)


class EClass:
    """Image of a class under q -> uv (the E-polynomial measure).

    Kept as the underlying class; printing writes every q as (uv).
    """

    __slots__ = ("cls",)

    def __init__(self, cls: MotClass):
        self.cls = cls

    def evaluate(self, u, v):
        return self.cls.evaluate(Fraction(u) * Fraction(v))

    def __eq__(self, other):
        return isinstance(other, EClass) and self.cls == other.cls

    def __hash__(self):
        return hash(("E", self.cls))

    def __str__(self):
        return format_class(self.cls, var="(uv)")

    def __repr__(self):
        return f"EClass({str(self)!r})"


# module-level function names used throughout the docs and CLI
def mot_add(a, b) -> MotClass:
    return MotClass.coerce(a) + MotClass.coerce(b)


def mot_mul(a, b) -> MotClass:
    return MotClass.coerce(a) * MotClass.coerce(b)


def mot_neg(a) -> MotClass:
    return -MotClass.coerce(a)


def dimension(a) -> int:
    return MotClass.coerce(a).dimension()


def evaluate(a, q0, congruence_guard: Optional[Guard] = None):
    return MotClass.coerce(a).evaluate(q0, congruence_guard)


def e_substitute(a) -> EClass:
    return EClass(MotClass.coerce(a))
