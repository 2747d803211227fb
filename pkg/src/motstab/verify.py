"""Checks behind ``motstab verify all``.

Each item is a small named check returning (passed, detail). Items are
grouped by criterion number so a failure points at one identity.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional

from .catalog import Catalog, gl_class
from .commuting import (
    c2_glr_class,
    census_glr,
    census_limit_report,
    commuting_class,
    gl2_branching_system,
    gl2_closed_form,
    gl2_strata,
    rank_stability_report,
)
from .errors import MotstabError, NotStable
from .frobenius import builtin, rep_count, rep_ratio
from .mot import MotClass, expand, q
from .oracle import (
    abstract_group,
    count_commuting_tuples,
    count_conjugacy_classes,
    count_surface_tuples,
    count_surface_tuples_brute,
    enumerate_group,
    weil_sym_count,
)
from .parsing import parse_poly
from .poly import QPolynomial
from .repstab import (
    Partition,
    free_power_quotients,
    motivic_decomposition,
    partitions,
    psi_matrix_sn,
    reconstruct,
    rep_stability_check,
)
from .zeta import open_closed_limit_check, sym_limit, sym_power


@dataclass
class ItemResult:
    name: str
    criterion: int
    passed: Optional[bool]  # None = skipped
    detail: str = ""
    seconds: float = 0.0

    @property
    def status(self) -> str:
        return "SKIP" if self.passed is None else ("PASS" if self.passed else "FAIL")

    def to_dict(self) -> dict:
        return {"name": self.name, "criterion": self.criterion, "status": self.status,
                "detail": self.detail, "seconds": round(self.seconds, 3)}


@dataclass
class VerifyReport:
    items: List[ItemResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(i.passed is not False for i in self.items)

    def failed(self) -> List[ItemResult]:
        return [i for i in self.items if i.passed is False]

    def lines(self) -> List[str]:
        return [f"[{i.status}] c{i.criterion} {i.name}: {i.detail}" for i in self.items]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "passed": sum(i.passed is True for i in self.items),
            "failed": sum(i.passed is False for i in self.items),
            "skipped": sum(i.passed is None for i in self.items),
            "items": [i.to_dict() for i in self.items],
        }


@dataclass
class Context:
    catalog: Catalog
    precision: int = 10
    budget: str = "full"
    jobs: int = 1


Check = Callable[[Context], tuple]
_ITEMS: List[tuple] = []


def item(criterion: int, name: str, full_only: bool = False):
    def deco(fn: Check):
        _ITEMS.append((criterion, name, full_only, fn))
        return fn
    return deco


def _eq(got, want) -> tuple:
    return got == want, f"got {got}, expected {want}"


# 1. branching system vs closed form

@item(1, "branching_equals_closed_form_n1_10")
def _c1a(ctx):
    sys = gl2_branching_system()
    bad = [n for n in range(1, 11) if commuting_class(sys, n) != gl2_closed_form(n)]
    return not bad, f"mismatch at n={bad}" if bad else "n = 1..10 agree exactly"


@item(1, "closed_form_monic_degree_2n_plus_2")
def _c1b(ctx):
    bad = [n for n in range(1, 11)
           if not (gl2_closed_form(n).is_monic() and gl2_closed_form(n).dimension() == 2 * n + 2)]
    return not bad, f"fails at n={bad}" if bad else "monic of degree 2n+2 for n = 1..10"


# 2. strata

@item(2, "strata_sum_is_gl2")
def _c2a(ctx):
    return gl2_strata().check()["strata_sum"], "scalar + J + M = [GL2]"


@item(2, "m_over_c_identity")
def _c2b(ctx):
    c = gl2_strata().check()
    ok = c["m_over_c"] and c["m_two_forms"]
    return ok, "[M] = [C](q^2-q) + [X](1-q), both printed forms of [M] agree"


# 3. rank-2 census

@item(3, "census_glr_2")
def _c3a(ctx):
    return _eq(census_glr(2), MotClass(parse_poly("q^2-1")))


@item(3, "c2_glr_2_equals_closed_form")
def _c3b(ctx):
    return c2_glr_class(2) == gl2_closed_form(2), "two derivations of [C_2(GL2)] agree"


# 4. oracle specialization

def _oracle_item(name, criterion=4, full_only=False):
    return item(criterion, name, full_only)


for _p in (2, 3, 5):
    def _gl2_order(ctx, p=_p):
        return _eq(len(enumerate_group("GL2", p)), gl_class(2).evaluate(p))
    _oracle_item(f"gl2_order_q{_p}")(_gl2_order)

for _p, _want in ((2, 18), (3, 384), (5, 11520)):
    def _gl2_pairs(ctx, p=_p, want=_want):
        got = count_commuting_tuples(enumerate_group("GL2", p), 2, jobs=ctx.jobs)
        pred = gl2_closed_form(2).evaluate(p)
        return got == want == pred, f"oracle {got}, formula {pred}, expected {want}"
    _oracle_item(f"gl2_commuting_pairs_q{_p}")(_gl2_pairs)

for _p in (2, 3):
    def _gl2_triples(ctx, p=_p):
        return _eq(count_commuting_tuples(enumerate_group("GL2", p), 3), gl2_closed_form(3).evaluate(p))
    _oracle_item(f"gl2_commuting_triples_q{_p}")(_gl2_triples)

for _p in (3, 5):
    def _sl2_pairs(ctx, p=_p):
        e = ctx.catalog.entry("SL2")
        pred = ctx.catalog.rep_surface_class("SL2", 1).evaluate(p, e.specialization_guard)
        got = count_commuting_tuples(enumerate_group("SL2", p), 2, jobs=ctx.jobs)
        extra = " (expected 168)" if p == 3 else ""
        return got == pred and (p != 3 or got == 168), f"oracle {got}, formula {pred}{extra}"
    _oracle_item(f"sl2_commuting_pairs_q{_p}")(_sl2_pairs)


@_oracle_item("u2_commuting_pairs_q3")
def _u2_pairs(ctx):
    pred = ctx.catalog.rep_surface_class("U2", 1).evaluate(3)
    return _eq(count_commuting_tuples(enumerate_group("U2", 3), 2), pred)


@_oracle_item("gl2_f3_conjugacy_classes")
def _gl2_classes(ctx):
    got = count_conjugacy_classes(enumerate_group("GL2", 3))
    pred = census_glr(2).evaluate(3)
    return got == pred == 8, f"oracle {got}, census {pred}"


@_oracle_item("gl3_f2_commuting_pairs")
def _gl3_f2(ctx):
    return _eq(count_commuting_tuples(enumerate_group("GL3", 2), 2), c2_glr_class(3).evaluate(2))


@_oracle_item("gl3_f3_commuting_pairs", full_only=True)
def _gl3_f3(ctx):
    return _eq(count_commuting_tuples(enumerate_group("GL3", 3), 2, jobs=ctx.jobs), c2_glr_class(3).evaluate(3))


# 5. Frobenius

@item(5, "s3_genus1_18")
def _c5a(ctx):
    S = builtin("S3")
    got, brute = rep_count(S, 1), count_surface_tuples_brute(abstract_group(S), 1)
    return got == brute == 18, f"formula {got}, enumeration {brute}"


@item(5, "s3_genus2_486")
def _c5b(ctx):
    S = builtin("S3")
    G = abstract_group(S)
    got, conv, brute = rep_count(S, 2), count_surface_tuples(G, 2), count_surface_tuples_brute(G, 2)
    return got == conv == brute == 486, f"formula {got}, histogram {conv}, enumeration {brute}"


@item(5, "s3_ratio_limit_one_third")
def _c5c(ctx):
    gap = abs(rep_ratio(builtin("S3"), 12) - Fraction(1, 3))
    return gap < Fraction(1, 10 ** 6), f"|ratio(12) - 1/3| = {float(gap):.3e}"


# 6. Conjecture A limits

@item(6, "sl2_conjecture_a")
def _c6a(ctx):
    rep = ctx.catalog.verify_conjecture_a("SL2", ctx.precision)
    want = expand(1 / (q ** 3 - q), ctx.precision)
    ok = rep.converged and rep.limit == want and rep.stabilization_index <= ctx.precision // 2 + 2
    return ok, f"converged={rep.converged} at g={rep.stabilization_index}, limit {rep.limit}"


@item(6, "u2_conjecture_a")
def _c6b(ctx):
    rep = ctx.catalog.verify_conjecture_a("U2", ctx.precision)
    want = expand(1 / q, ctx.precision)
    return rep.converged and rep.limit == want, f"converged={rep.converged}, limit {rep.limit}"


@item(6, "gmz2_limit_mismatch_flagged")
def _c6c(ctx):
    rep = ctx.catalog.verify_conjecture_a("GmZ2", 6)
    want = expand(2 / (q - 1), 6)
    ok = rep.converged and rep.limit == want and rep.matches_target is False
    return ok, f"limit {rep.limit} (tolerance {rep.tolerance}), target {rep.target}, matches={rep.matches_target}"


@item(6, "gmz2_exact_discrepancy")
def _c6d(ctx):
    cat = ctx.catalog
    e = cat.entry("GmZ2")
    bad = [g for g in range(1, 13)
           if cat.rep_surface_class("GmZ2", g) / e.cls ** (2 * g) - 2 / (q - 1)
           != Fraction(1, 4 ** g) * (q - 3) / (q - 1)]
    return not bad, "ratio - 2/(q-1) = 4^-g (q-3)/(q-1) for g = 1..12" if not bad else f"fails at g={bad}"


@item(6, "gmz2_charstack_divergent")
def _c6e(ctx):
    rep = ctx.catalog.verify_conjecture_a("GmZ2_charstack", 6, n_max=20)
    return not rep.converged, f"converged={rep.converged}"


# 7. zeta and symmetric powers

@item(7, "sym_power_monomials")
def _c7a(ctx):
    bad = [(i, n) for i in range(5) for n in range(7)
           if sym_power(QPolynomial.monomial(i), n) != QPolynomial.monomial(n * i)]
    return not bad, "Sym^n(q^i) = q^(ni) for i <= 4, n <= 6" if not bad else f"fails at {bad}"


@item(7, "sym_square_p1")
def _c7b(ctx):
    return _eq(sym_power(parse_poly("q+1"), 2), parse_poly("q^2+q+1"))


@item(7, "sym_limit_monic_dichotomy")
def _c7c(ctx):
    rng = random.Random(20240917)
    bad = []
    for k in range(50):
        deg = rng.randint(1, 4)
        lead = 1 if k % 2 == 0 else rng.randint(2, 4)
        p = QPolynomial([rng.randint(-3, 3) for _ in range(deg)] + [lead])
        try:
            sym_limit(p)
            stable = True
        except NotStable:
            stable = False
        if stable != (lead == 1):
            bad.append(str(p))
    return not bad, "50 random polynomials: stable exactly when monic" if not bad else f"wrong on {bad}"


@item(7, "open_closed_p1")
def _c7d(ctx):
    return open_closed_limit_check(parse_poly("q"), parse_poly("1")), "sym_limit(q+1) = Z_pt(1/q) sym_limit(q)"


@item(7, "weil_gm_sym2")
def _c7e(ctx):
    bad = [p for p in (2, 3) if weil_sym_count([p ** d - 1 for d in (1, 2)], 2)
           != sym_power(parse_poly("q-1"), 2).evaluate(p)]
    return not bad, "Sym^2 G_m counts agree at q = 2, 3" if not bad else f"fails at q={bad}"


@item(7, "weil_gl2_sym2")
def _c7f(ctx):
    gl2 = gl_class(2)
    bad = [p for p in (2, 3) if weil_sym_count([gl2.evaluate(p ** d) for d in (1, 2)], 2)
           != sym_power(gl2.as_poly(), 2).evaluate(p)]
    return not bad, "Sym^2 GL2 counts agree at q = 2, 3" if not bad else f"fails at q={bad}"


# 8. census stability

@item(8, "census_r12_13_14_identical_and_one")
def _c8a(ctx):
    N = ctx.precision
    exps = [expand(census_glr(r) / q ** r, N) for r in (12, 13, 14)]
    one = expand(MotClass(1), N)
    ok = all(e == one for e in exps)
    return ok, "; ".join(f"r={r}: {e}" for r, e in zip((12, 13, 14), exps))


@item(8, "census_limit_report_one")
def _c8c(ctx):
    rep = census_limit_report(N=ctx.precision)
    return bool(rep.converged and rep.matches_target), (
        f"converged={rep.converged} at r={rep.stabilization_index}, limit {rep.limit}")


@item(8, "rank_stability_limit_one")
def _c8b(ctx):
    rep = rank_stability_report(N=ctx.precision)
    return bool(rep.converged and rep.matches_target), (
        f"converged={rep.converged} at r={rep.stabilization_index}, limit {rep.limit}")


# 9. Kostka and decomposition

@item(9, "kostka_unitriangular_n8")
def _c9a(ctx):
    dets = [psi_matrix_sn(n).determinant() for n in range(1, 9)]
    return all(d == 1 for d in dets), "Kostka matrices unitriangular with det 1 for n <= 8"


@item(9, "decomposition_round_trip")
def _c9b(ctx):
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(1, 5)
        quot = {lam: MotClass(QPolynomial([rng.randint(-5, 5) for _ in range(4)])) for lam in partitions(n)}
        if reconstruct(n, motivic_decomposition(n, quot)) != quot:
            return False, f"round trip failed for n={n}"
    return True, "20 random inputs, n <= 5"


@item(9, "affine_power_trivial_isotype")
def _c9c(ctx):
    for n in range(1, 7):
        dec = motivic_decomposition(n, free_power_quotients(parse_poly("q"), n)).coefficients
        for lam, c in dec.items():
            want = q ** n if lam == Partition([n]) else MotClass(0)
            if c != want:
                return False, f"n={n}, coefficient of {lam} is {c}"
    return True, "(A^1)^n has only the trivial isotype for n <= 6"


@item(9, "repstab_dichotomy")
def _c9d(ctx):
    out = []
    for x, lam, want in (("q(q-1)", [1], True), ("(q-1)^2", [2], True), ("2q", [1], False)):
        rep = rep_stability_check(parse_poly(x), Partition(lam), ctx.precision)
        out.append((x, rep.converged == want and (not want or rep.matches_target)))
    return all(ok for _, ok in out), ", ".join(f"{x}: {'ok' if ok else 'wrong'}" for x, ok in out)


# 10. leading-order checks for the groups with partial data

for _g in ("U3", "U4", "U5"):
    def _lead(ctx, g=_g):
        rep = ctx.catalog.verify_conjecture_a(g, ctx.precision)
        return bool(rep.converged and rep.matches_target and rep.mode == "leading-order"), (
            f"leading term / [{g}]^(2g) -> {rep.limit}")
    item(10, f"{_g.lower()}_leading_order")(_lead)


@item(10, "u2_full_vs_leading")
def _c10b(ctx):
    cat = ctx.catalog
    bad = []
    for g in range(1, 7):
        full, lead = cat.rep_surface_class("U2", g), cat.leading_term("U2", g)
        rest = full - lead
        if rest.is_zero() or not rest.dimension() < lead.dimension():
            bad.append(g)
    return not bad, "full U2 formula = leading term + lower order, g <= 6" if not bad else f"fails at g={bad}"


def verify_all(precision: int = 10, budget: str = "full", catalog: Optional[Catalog] = None,
               jobs: int = 1, only: Optional[Callable[[str], bool]] = None,
               progress: Optional[Callable[[ItemResult], None]] = None) -> VerifyReport:
    if budget not in ("small", "full"):
        raise ValueError("budget must be 'small' or 'full'")
    ctx = Context(catalog or Catalog.load(), precision, budget, jobs)
    report = VerifyReport()
    for criterion, name, full_only, fn in _ITEMS:
        if only is not None and not only(name):
            continue
        if full_only and budget == "small":
            res = ItemResult(name, criterion, None, "skipped under --budget small")
        else:
            t0 = time.perf_counter()
            try:
                passed, detail = fn(ctx)
            except MotstabError as exc:
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            res = ItemResult(name, criterion, bool(passed), detail, time.perf_counter() - t0)
        report.items.append(res)
        if progress:
            progress(res)
    return report


def item_names() -> List[str]:
    return [name for _, name, _, _ in _ITEMS]
