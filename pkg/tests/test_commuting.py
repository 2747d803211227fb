import json

import pytest
import sympy
from hypothesis import given, strategies as st

from motstab.catalog import gl_class
from motstab.commuting import (
    BranchingSystem,
    c2_glr_class,
    census_glr,
    census_limit_report,
    commuting_class,
    commuting_classes,
    gl2_branching_system,
    gl2_closed_form,
    gl2_strata,
    rank_stability_report,
    sl2_commuting_ratio_check,
)
from motstab.errors import BudgetExceeded, InvariantViolated
from motstab.mot import MotClass, expand, q
from motstab.oracle import count_commuting_tuples, enumerate_group
from motstab.parsing import parse_class
from motstab.poly import QPolynomial

Q = sympy.Symbol("q")


def test_pairs_example():
    assert str(commuting_class(gl2_branching_system(), 2)) == "q^6 - q^5 - 2q^4 + 2q^3 + q^2 - q"


def test_single_matrix_is_gl2():
    assert commuting_class(gl2_branching_system(), 1) == gl_class(2)


def test_matches_closed_form():
    sys = gl2_branching_system()
    for n, c in enumerate(commuting_classes(sys, 10), start=1):
        assert c == gl2_closed_form(n)
        assert c.is_monic() and c.dimension() == 2 * n + 2


def test_closed_form_against_sympy():
    for n in range(1, 8):
        expr = Q * (Q ** 2 - 1) * (2 * (Q ** 2 - Q) ** (n - 1) - 2 * (Q - 1) ** (n - 1)
                                   + (Q - 1) * (Q ** 2 - 1) ** (n - 1) + (Q - 1) ** (2 * n - 1)) / 2
        coeffs = sympy.Poly(sympy.expand(expr), Q).all_coeffs()[::-1]
        assert commuting_class(gl2_branching_system(), n).as_poly() == QPolynomial([int(c) for c in coeffs])


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)])
def test_matches_finite_field_count(p, n):
    G = enumerate_group("GL2", p)
    assert commuting_class(gl2_branching_system(), n).evaluate(p) == count_commuting_tuples(G, n)


def test_strata_identities():
    assert all(gl2_strata().check().values())


def test_branching_round_trip(tmp_path):
    sys = gl2_branching_system()
    path = tmp_path / "sys.json"
    path.write_text(json.dumps(sys.to_dict()))
    assert BranchingSystem.load(path) == sys


def test_mismatched_system_rejected():
    with pytest.raises(InvariantViolated):
        BranchingSystem.from_strings(["a", "b"], [["1", "0"]], ["1", "1"], ["1", "1"])


def test_census_small_ranks():
    assert census_glr(1) == q - 1
    assert census_glr(2) == q ** 2 - 1
    assert census_glr(3) == q ** 3 - q


@pytest.mark.parametrize("r,p", [(2, 2), (2, 3), (3, 2)])
def test_census_counts_conjugacy_classes(r, p):
    from motstab.oracle import count_conjugacy_classes
    assert census_glr(r).evaluate(p) == count_conjugacy_classes(f"GL{r}", p)


def test_census_matches_macdonald_product():
    # sum_r census_r t^r = prod_k (1 - t^k) / (1 - q t^k)
    t = sympy.Symbol("t")
    R = 8
    prod = sympy.Integer(1)
    for k in range(1, R + 1):
        prod *= (1 - t ** k) * sum((Q * t ** k) ** j for j in range(R // k + 1))
    ser = sympy.Poly(sympy.expand(prod), t)
    for r in range(1, R + 1):
        coeffs = sympy.Poly(ser.coeff_monomial(t ** r), Q).all_coeffs()[::-1]
        assert census_glr(r).as_poly() == QPolynomial([int(c) for c in coeffs])


def test_c2_is_gl_times_census():
    assert c2_glr_class(2) == gl_class(2) * (q ** 2 - 1)
    assert c2_glr_class(2) == commuting_class(gl2_branching_system(), 2)


def test_census_budget():
    with pytest.raises(BudgetExceeded):
        census_glr(41)


def test_census_stabilizes_to_one():
    rep = census_limit_report(N=10)
    assert rep.converged and rep.matches_target
    assert rep.limit == expand(MotClass(1), 10)
    assert rank_stability_report(N=6).matches_target


def test_census_small_r_not_yet_one():
    # census_r / q^r differs from 1 in degree about r/2 + 1
    for r in (12, 13, 14):
        assert expand(census_glr(r) / q ** r, 10) != expand(MotClass(1), 10)


def test_sl2_census_candidate():
    rep = sl2_commuting_ratio_check(N=4)
    assert rep.class_counts == {3: 7, 5: 9, 7: 11}
    assert rep.agrees and rep.exploratory


@given(st.integers(1, 14))
def test_census_is_monic_of_degree_r(r):
    c = census_glr(r)
    assert c.is_monic() and c.dimension() == r
