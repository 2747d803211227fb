from fractions import Fraction

from hypothesis import settings, strategies as st

from motstab.mot import MotClass
from motstab.poly import QPolynomial

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def polys(draw, max_degree=5, lo=-6, hi=6, nonzero=False):
    cs = draw(st.lists(st.integers(lo, hi), min_size=1, max_size=max_degree + 1))
    p = QPolynomial(cs)
    if nonzero and p.is_zero():
        p = QPolynomial([1])
    return p


@st.composite
def monic_polys(draw, max_degree=4, lo=-4, hi=4):
    deg = draw(st.integers(1, max_degree))
    cs = draw(st.lists(st.integers(lo, hi), min_size=deg, max_size=deg))
    return QPolynomial(cs + [1])


@st.composite
def classes(draw, nonzero=False):
    num = draw(polys(max_degree=4, nonzero=nonzero))
    a = draw(st.integers(0, 3))
    cyclo = draw(st.lists(st.tuples(st.integers(1, 3), st.integers(1, 2)), max_size=2))
    return MotClass(num, a, cyclo)


@st.composite
def rationals(draw):
    return Fraction(draw(st.integers(-20, 20)), draw(st.integers(1, 6)))
