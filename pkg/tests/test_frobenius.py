import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from motstab.errors import InvariantViolated, UnknownGroup
from motstab.frobenius import (
    FiniteGroupData,
    builtin,
    from_degrees,
    load_group_file,
    rep_count,
    rep_ratio,
    rep_ratio_report,
)
from motstab.oracle import abstract_group, count_surface_tuples, count_surface_tuples_brute


def test_s3_counts():
    S3 = builtin("S3")
    assert rep_count(S3, 1) == 18
    assert rep_count(S3, 2) == 486


def test_abelian_counts_are_powers():
    Z5 = builtin("Zn(5)")
    assert [rep_count(Z5, g) for g in (1, 2, 3)] == [25, 625, 15625]
    assert rep_ratio(Z5, 4) == 1


def test_builtin_names():
    assert builtin("Z(4)").order == 4
    assert builtin("Z3").char_degrees == (1, 1, 1)
    with pytest.raises(UnknownGroup):
        builtin("A5")


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "Z2", "Z3"])
def test_frobenius_matches_brute_force(name):
    data = builtin(name)
    G = abstract_group(data)
    for g in (1, 2):
        assert count_surface_tuples(G, g) == rep_count(data, g)
    assert count_surface_tuples_brute(G, 1) == rep_count(data, 1)


def test_d4_and_q8_agree():
    assert [rep_count(builtin("D4"), g) for g in (1, 2, 3)] == [rep_count(builtin("Q8"), g) for g in (1, 2, 3)]


def test_ratio_report_converges_geometrically():
    rep = rep_ratio_report(builtin("S3"), 12)
    assert rep.limit == Fraction(1, 3)
    assert rep.rate == Fraction(1, 4)
    assert 0 < rep.last_gap < Fraction(1, 10 ** 7)
    gaps = [r - rep.limit for _, r in rep.ratios]
    assert all(b <= a * rep.rate for a, b in zip(gaps[1:], gaps[2:]))


def test_invalid_degree_data():
    with pytest.raises(InvariantViolated):
        FiniteGroupData("bad", 6, (1, 1, 1), 3).validate()
    with pytest.raises(InvariantViolated):
        FiniteGroupData("bad", 6, (1, 1, 2), 2).validate()


def test_from_degrees_infers_commutator_order():
    assert from_degrees((1, 1, 2), 6).commutator_order == 3


def test_load_group_file(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps([builtin("S3").to_dict(), builtin("Q8").to_dict()]))
    S3, Q8 = load_group_file(path)
    assert rep_count(S3, 2) == 486
    assert abstract_group(Q8).order == 8


@given(st.integers(1, 12), st.integers(1, 6))
def test_cyclic_ratio_is_one(n, g):
    assert rep_ratio(builtin(f"Z{n}"), g) == 1


@given(st.sampled_from(["S3", "D4", "Q8"]), st.integers(1, 8))
def test_ratio_decreases_to_limit(name, g):
    G = builtin(name)
    limit = Fraction(1, G.commutator_order)
    assert rep_ratio(G, g + 1) <= rep_ratio(G, g)
    assert rep_ratio(G, g) > limit
