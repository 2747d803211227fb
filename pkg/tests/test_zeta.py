from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from motstab.errors import NonIntegerCoefficients, NotStable, PreconditionViolated
from motstab.mot import MotClass, expand, q
from motstab.poly import QPolynomial
from motstab.zeta import (
    kapranov_zeta,
    open_closed_limit_check,
    sym_limit,
    sym_power,
    sym_powers,
)

from conftest import monic_polys, polys

Q = sympy.Symbol("q")


def P(*cs):
    return QPolynomial(cs)


def weil_sym(p: QPolynomial, n: int, q0: int) -> Fraction:
    """Effective 0-cycles of degree n over F_q0 from the point counts p(q0^m)."""
    z = [Fraction(1)]
    for k in range(1, n + 1):
        z.append(sum(Fraction(p(q0 ** d)) * z[k - d] for d in range(1, k + 1)) / k)
    return z[n]


def test_sym_of_affine_space():
    # Sym^n A^1 = A^n
    assert sym_power(P(0, 1), 3) == P(0, 0, 0, 1)


def test_sym_of_projective_line():
    assert sym_power(P(1, 1), 2) == P(1, 1, 1)


def test_sym_of_negative_class_matches_sympy_series():
    # Z_{-q}(t) = 1 - q t, so Sym^n(-q) vanishes for n >= 2
    assert sym_powers(P(0, -1), 4) == [P(1), P(0, -1), P(), P(), P()]
    x = P(-1, 1)  # q - 1
    t = sympy.Symbol("t")
    ser = sympy.series((1 - t) / (1 - Q * t), t, 0, 6).removeO()
    for n in range(6):
        expected = sympy.Poly(sympy.expand(ser).coeff(t, n), Q).all_coeffs()[::-1]
        assert list(sym_power(x, n).coeffs) == [int(c) for c in expected]


def test_zeta_text():
    assert str(kapranov_zeta(P(-1, 1))) == "(1-t)^{1} (1-q t)^{-1}"


def test_zeta_rejects_fractional_coefficients():
    with pytest.raises(NonIntegerCoefficients):
        kapranov_zeta(QPolynomial([Fraction(1, 2), 1]))


def test_sym_limit_examples():
    assert sym_limit(P(0, 0, 1)) == MotClass(1)
    assert sym_limit(P(1, 1)) == q / (q - 1)
    gl2 = q * (q - 1) * (q ** 2 - 1)
    lim = sym_limit(gl2)
    # leading behaviour 1 - u^{-1}... is not allowed; the limit is 1 + O(u)
    assert expand(lim, 0) == expand(MotClass(1), 0)


def test_sym_limit_preconditions():
    with pytest.raises(NotStable):
        sym_limit(P(0, 2))
    with pytest.raises(PreconditionViolated):
        sym_limit(P())


def test_sym_limit_is_limit_of_normalized_powers():
    p = P(-1, 0, 1)  # q^2 - 1
    lim = expand(sym_limit(p), 8)
    for n in (10, 11, 12):
        assert expand(MotClass(sym_power(p, n)) / q ** (2 * n), 8) == lim


def test_open_closed_examples():
    assert open_closed_limit_check(P(0, 0, 1), P(0, 1))
    assert open_closed_limit_check(P(-1, 0, 0, 1), P(0, 1, 1))
    with pytest.raises(PreconditionViolated):
        open_closed_limit_check(P(1), P(0, 1))


@given(polys(max_degree=3, lo=-3, hi=3), st.integers(0, 5), st.sampled_from([2, 3, 5]))
def test_sym_power_matches_weil_count(p, n, q0):
    assert Fraction(sym_power(p, n)(q0)) == weil_sym(p, n, q0)


@given(polys(max_degree=3, lo=-3, hi=3), polys(max_degree=3, lo=-3, hi=3), st.integers(0, 5))
def test_zeta_multiplicative(a, b, n):
    sa, sb = sym_powers(a, n), sym_powers(b, n)
    conv = sum((sa[k] * sb[n - k] for k in range(n + 1)), P())
    assert sym_power(a + b, n) == conv


@given(monic_polys(max_degree=3), polys(max_degree=2, lo=-3, hi=3))
def test_open_closed_holds_generally(u, z):
    if z.is_zero() or z.degree >= u.degree:
        z = P(1) if u.degree > 0 else P()
    if z.is_zero():
        return
    assert open_closed_limit_check(u, z)
