"""Acceptance criteria 1-10, one PASS/FAIL line each.

Values are recomputed here through the public API and the brute-force
oracles rather than through the `verify all` runner, so the two act as
independent checks of each other.
"""

import random
import time
from fractions import Fraction

import pytest

from motstab.catalog import gl_class, leading_term, rep_surface_class, upper_triangular_class, verify_conjecture_a
from motstab.commuting import (
    c2_glr_class,
    census_glr,
    commuting_class,
    gl2_branching_system,
    gl2_closed_form,
    gl2_strata,
    rank_stability_report,
)
from motstab.errors import NotStable
from motstab.frobenius import builtin, rep_count, rep_ratio
from motstab.mot import MotClass, expand, q
from motstab.oracle import (
    abstract_group,
    count_commuting_tuples,
    count_conjugacy_classes,
    count_surface_tuples_brute,
    enumerate_group,
    point_counts,
    weil_sym_count,
)
from motstab.poly import QPolynomial
from motstab.repstab import (
    Partition,
    free_power_quotients,
    motivic_decomposition,
    partitions,
    psi_matrix_sn,
    reconstruct,
    rep_stability_check,
)
from motstab.zeta import open_closed_limit_check, sym_limit, sym_power

N = 10


class CriterionUnattainable(Exception):
    """The literal criterion is false; see the decision ledger."""


@pytest.fixture
def report(capsys):
    t0 = time.perf_counter()

    def emit(criterion, checks):
        bad = [name for name, ok in checks if not ok]
        status = "FAIL" if bad else "PASS"
        detail = f"{len(checks) - len(bad)}/{len(checks)} checks"
        if bad:
            detail += "; failing: " + ", ".join(bad)
        with capsys.disabled():
            print(f"\n{status} criterion {criterion}: {detail} ({time.perf_counter() - t0:.2f}s)")
        return not bad

    return emit


def test_criterion_1_branching_equals_closed_form(report):
    sys = gl2_branching_system()
    checks = []
    for n in range(1, 11):
        c = commuting_class(sys, n)
        checks.append((f"n={n} closed form", c == gl2_closed_form(n)))
        checks.append((f"n={n} monic degree {2 * n + 2}", c.is_monic() and c.dimension() == 2 * n + 2))
    assert report(1, checks)


def test_criterion_2_strata_identities(report):
    s = gl2_strata()
    gl2 = gl_class(2).as_poly()
    Cq, Xq = QPolynomial([0, 0, 1]), QPolynomial([0, 1, 1])
    checks = [
        ("scalar + J + M = GL2", s.scalar_class + s.j_class + s.m_class == gl2),
        ("M = C(q^2-q) + X(1-q)", s.m_class == Cq * QPolynomial([0, -1, 1]) + Xq * QPolynomial([1, -1])),
        ("C = q^2, X = q^2+q", s.c_class == Cq and s.x_class == Xq),
    ]
    assert report(2, checks)


def test_criterion_3_rank_two_census(report):
    checks = [
        ("census_glr(2) = q^2-1", census_glr(2) == q ** 2 - 1),
        ("c2_glr_class(2) = closed form n=2", c2_glr_class(2) == gl2_closed_form(2)),
    ]
    assert report(3, checks)


def test_criterion_4_oracle_specialization(report):
    pairs = commuting_class(gl2_branching_system(), 2)
    triples = commuting_class(gl2_branching_system(), 3)
    checks = []
    groups = {p: enumerate_group("GL2", p) for p in (2, 3, 5)}
    for p, G in groups.items():
        checks.append((f"[GL2] at q={p}", gl_class(2).evaluate(p) == len(G)))
    for p, want in ((2, 18), (3, 384), (5, 11520)):
        got = count_commuting_tuples(groups[p], 2)
        checks.append((f"GL2 pairs q={p}", got == want == pairs.evaluate(p)))
    for p in (2, 3):
        checks.append((f"GL2 triples q={p}", count_commuting_tuples(groups[p], 3) == triples.evaluate(p)))
    sl2_pairs = rep_surface_class("SL2", 1)
    for p in (3, 5):
        got = count_commuting_tuples(enumerate_group("SL2", p), 2)
        checks.append((f"SL2 pairs q={p}", got == sl2_pairs.evaluate(p, (2, 1))))
    checks.append(("SL2 pairs q=3 is 168", sl2_pairs.evaluate(3, (2, 1)) == 168))
    checks.append(("U2 pairs q=3", count_commuting_tuples(enumerate_group("U2", 3), 2)
                   == rep_surface_class("U2", 1).evaluate(3)))
    checks.append(("GL2(F3) classes = 8", count_conjugacy_classes(groups[3]) == 8 == (q ** 2 - 1).evaluate(3)))
    assert report(4, checks)


def test_criterion_5_frobenius(report):
    S3 = builtin("S3")
    G = abstract_group(S3)
    checks = [
        ("rep_count(S3,1) = 18 = brute force", rep_count(S3, 1) == 18 == count_surface_tuples_brute(G, 1)),
        ("rep_count(S3,2) = 486 = brute force", rep_count(S3, 2) == 486 == count_surface_tuples_brute(G, 2)),
        ("ratio within 1e-6 of 1/3 at g=12", abs(rep_ratio(S3, 12) - Fraction(1, 3)) < Fraction(1, 10 ** 6)),
    ]
    assert report(5, checks)


def test_criterion_6_conjecture_a(report):
    sl2 = verify_conjecture_a("SL2", N=N)
    u2 = verify_conjecture_a("U2", N=N)
    gm = verify_conjecture_a("GmZ2", N=6)
    cs = verify_conjecture_a("GmZ2_charstack", N=6)
    checks = [
        ("SL2 limit 1/(q^3-q)", sl2.converged and sl2.limit == expand(1 / (q ** 3 - q), N)),
        ("SL2 stabilizes by g = N/2 + 2", sl2.stabilization_index is not None and sl2.stabilization_index <= N // 2 + 2),
        ("U2 limit 1/q", u2.converged and u2.limit == expand(1 / q, N)),
        ("GmZ2 limit 2/(q-1)", gm.converged and gm.limit == expand(2 / (q - 1), 6)),
        ("GmZ2 mismatch against 1/(q-1) flagged", gm.matches_target is False and gm.target == expand(1 / (q - 1), 6)),
        ("character stack divergent", not cs.converged),
    ]
    assert report(6, checks)


def test_criterion_7_zeta(report):
    checks = []
    mono_ok = all(sym_power(QPolynomial.monomial(i), n) == QPolynomial.monomial(n * i)
                  for i in range(5) for n in range(7))
    checks.append(("sym_power(q^i, n) = q^(ni)", mono_ok))
    checks.append(("sym_power(q+1, 2) = q^2+q+1", sym_power(QPolynomial([1, 1]), 2) == QPolynomial([1, 1, 1])))
    rng = random.Random(20261016)
    dich = True
    for _ in range(50):
        deg = rng.randint(1, 5)
        cs = [rng.randint(-5, 5) for _ in range(deg)] + [rng.choice([1, 1, -1, 2, 3, -2])]
        p = QPolynomial(cs)
        if p.is_monic():
            lim = sym_limit(p)
            normalized = expand(MotClass(sym_power(p, 12)) / q ** (12 * deg), 6)
            dich &= expand(lim, 0)[0] == 1 and normalized.agrees_with(expand(lim, 6), upto=6)
        else:
            try:
                sym_limit(p)
                dich = False
            except NotStable:
                pass
    checks.append(("sym_limit dichotomy on 50 random polynomials", dich))
    checks.append(("P1 = A1 + pt", open_closed_limit_check(QPolynomial([0, 1]), QPolynomial([1]))))
    gm, gl2 = QPolynomial([-1, 1]), gl_class(2).as_poly()
    for name, p, count in (("Gm", gm, lambda t: t - 1),
                           ("GL2", gl2, lambda t: (t ** 2 - 1) * (t ** 2 - t))):
        for q0 in (2, 3, 5):
            checks.append((f"Weil Sym^2 {name} q={q0}",
                           weil_sym_count(point_counts(count, q0, 2), 2) == sym_power(p, 2)(q0)))
    assert report(7, checks)


def test_criterion_8_census_identical_at_r12_to_14(report):
    series = {r: expand(census_glr(r) / q ** r, N) for r in (12, 13, 14)}
    one = expand(MotClass(1), N)
    checks = [
        ("r=12,13,14 identical", series[12] == series[13] == series[14]),
        ("equal to 1", all(s == one for s in series.values())),
        ("rank_stability_report converges to 1", rank_stability_report(N=N).matches_target),
    ]
    ok = report(8, checks)
    # the rank-stability half must hold; only the r = 12..14 claim is unattainable
    assert checks[2][1]
    if not ok:
        raise CriterionUnattainable(
            "census_r / q^r differs from 1 near u^(r/2+1); at N=10 it equals 1 only from r=20")


test_criterion_8_census_identical_at_r12_to_14 = pytest.mark.xfail(
    raises=CriterionUnattainable, strict=True,
    reason="census_r / q^r only stabilizes to 1 from r = 20 at N = 10",
)(test_criterion_8_census_identical_at_r12_to_14)


def test_criterion_9_kostka_and_decomposition(report):
    checks = []
    for n in range(1, 9):
        K = psi_matrix_sn(n)
        k = len(K.index)
        tri = all(K.entries[i][i] == 1 for i in range(k)) \
            and all(K.entries[i][j] == 0 for i in range(k) for j in range(i))
        checks.append((f"n={n} unitriangular, det 1", tri and K.determinant() == 1))
    rng = random.Random(7)
    rt = True
    for _ in range(20):
        n = rng.randint(1, 5)
        quots = {lam: MotClass(QPolynomial([rng.randint(-4, 4) for _ in range(4)]), rng.randint(0, 2),
                               [(rng.randint(1, 3), 1)] if rng.random() < 0.5 else [])
                 for lam in partitions(n)}
        rt &= reconstruct(n, motivic_decomposition(n, quots)) == quots
    checks.append(("round trip on 20 random inputs", rt))
    triv = True
    for n in range(1, 6):
        coeffs = motivic_decomposition(n, free_power_quotients(QPolynomial([0, 1]), n)).coefficients
        triv &= all(v.is_zero() == (k != Partition([n])) for k, v in coeffs.items())
    checks.append(("(A1)^n is trivial isotype only", triv))
    for x in ("q(q-1)", "(q-1)^2"):
        checks.append((f"repstab converges for {x}",
                       rep_stability_check(MotClass.parse(x), Partition([1]), N=6).converged))
    checks.append(("repstab diverges for 2q",
                   not rep_stability_check(MotClass.parse("2q"), Partition([1]), N=6, n_max=15).converged))
    assert report(9, checks)


def test_criterion_10_leading_order_only(report):
    checks = []
    for r in (3, 4, 5):
        rep = verify_conjecture_a(f"U{r}", N=N)
        checks.append((f"U{r} leading-order consistent",
                       rep.mode == "leading-order" and rep.converged and rep.matches_target))
    same = all(leading_term("U2", g) / upper_triangular_class(2) ** (2 * g) == 1 / q for g in range(1, 6))
    checks.append(("U2 leading term ratio is exactly 1/q", same))
    assert report(10, checks)
