"""Classes of commuting tuples via branching matrices, and the GL_r census.

A branching system (A, w, v) over centralizer types gives
[C_n(G)] = w A^(n-1) v^T. Only the GL_2 system ships; others can be read
from a JSON config with entries in the polynomial text encoding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .catalog import gl_class
from .errors import BudgetExceeded, InvariantViolated, ParseError
from .limits import DEFAULT_PRECISION, LimitReport, MotSequence, limit_detect
from .mot import ONE_CLASS, MotClass, expand, q
from .parsing import parse_poly
from .poly import ZERO, QPolynomial
from .repstab import partitions

CENSUS_MAX_RANK = 40

_Q = QPolynomial((0, 1))


@dataclass(frozen=True)
class BranchingSystem:
    states: tuple
    A: tuple  # rows of QPolynomial
    w: tuple
    v: tuple

    def __post_init__(self):
        k = len(self.states)
        if len(self.A) != k or any(len(row) != k for row in self.A) or len(self.w) != k or len(self.v) != k:
            raise InvariantViolated(f"branching system with {k} states has mismatched A, w or v")

    @classmethod
    def from_strings(cls, states, A, w, v) -> "BranchingSystem":
        return cls(tuple(states), tuple(tuple(parse_poly(x) for x in row) for row in A),
                   tuple(parse_poly(x) for x in w), tuple(parse_poly(x) for x in v))

    @classmethod
    def load(cls, path) -> "BranchingSystem":
        with open(Path(path)) as fh:
            raw = json.load(fh)
        raw = raw.get("branching_system", raw)
        try:
            return cls.from_strings(raw["states"], raw["A"], raw["w"], raw["v"])
        except KeyError as exc:
            raise ParseError(f"branching system lacks field {exc.args[0]!r}") from exc

    def to_dict(self) -> dict:
        return {
            "states": list(self.states),
            "A": [[str(x) for x in row] for row in self.A],
            "w": [str(x) for x in self.w],
            "v": [str(x) for x in self.v],
        }

    def row_times_matrix(self, row: Sequence[QPolynomial]) -> List[QPolynomial]:
        k = len(self.states)
        out = [ZERO] * k
        for i, ri in enumerate(row):
            if ri.is_zero():
                continue
            for j in range(k):
                if not self.A[i][j].is_zero():
                    out[j] = out[j] + ri * self.A[i][j]
        return out


def gl2_branching_system() -> BranchingSystem:
    return BranchingSystem.from_strings(
        ["D", "J", "C", "X"],
        [
            ["q-1", "0", "0", "0"],
            ["q-1", "q(q-1)", "0", "0"],
            ["(q^2-q)(q-1)", "0", "q^2-1", "0"],
            ["(1-q)(q-1)", "0", "1-q", "(q-1)^2"],
        ],
        ["q-1", "(q-1)(q^2-1)", "q^2", "q^2+q"],
        ["1", "1", "q^2-q", "1-q"],
    )


def commuting_class(sys: BranchingSystem, n: int) -> MotClass:
    """w A^(n-1) v^T, by repeated row-vector products."""
    if n < 1:
        raise ValueError("n must be at least 1")
    row = list(sys.w)
    for _ in range(n - 1):
        row = sys.row_times_matrix(row)
    total = ZERO
    for a, b in zip(row, sys.v):
        total = total + a * b
    return MotClass(total)


def commuting_classes(sys: BranchingSystem, n_max: int) -> List[MotClass]:
    row, out = list(sys.w), []
    for n in range(1, n_max + 1):
        if n > 1:
            row = sys.row_times_matrix(row)
        total = ZERO
        for a, b in zip(row, sys.v):
            total = total + a * b
        out.append(MotClass(total))
    return out


def gl2_closed_form(n: int) -> MotClass:
    if n < 1:
        raise ValueError("n must be at least 1")
    inner = (2 * (q ** 2 - q) ** (n - 1) - 2 * (q - 1) ** (n - 1)
             + (q - 1) * (q ** 2 - 1) ** (n - 1) + (q - 1) ** (2 * n - 1))
    return q * (q ** 2 - 1) * inner / 2


@dataclass(frozen=True)
class Gl2StrataData:
    scalar_class: QPolynomial
    j_class: QPolynomial
    m_class: QPolynomial
    m_class_alt: QPolynomial
    plus_parts: Dict[str, tuple]
    x_class: QPolynomial
    c_class: QPolynomial

    def check(self) -> Dict[str, bool]:
        gl2 = gl_class(2).as_poly()
        q_ = _Q
        checks = {
            "strata_sum": self.scalar_class + self.j_class + self.m_class == gl2,
            "m_over_c": self.m_class == self.c_class * (q_ * q_ - q_) + self.x_class * (1 - q_),
            "m_two_forms": self.m_class == self.m_class_alt,
            "x_fiber_square": 2 * self.x_class == parse_poly("2q^2+2q"),
            "gl2_plus_minus": sum(self.plus_parts["GL2"], ZERO) == self.x_class,
            "diag_distinct_plus_minus": sum(self.plus_parts["diag_distinct"], ZERO) == parse_poly("(q-1)(q-2)"),
            "diag_plus_minus": sum(self.plus_parts["diag"], ZERO) == parse_poly("(q-1)^2"),
            "c_is_gl2_plus": self.c_class == self.plus_parts["GL2"][0],
        }
        return checks


def gl2_strata() -> Gl2StrataData:
    P = parse_poly
    return Gl2StrataData(
        scalar_class=P("q-1"),
        j_class=P("(q-1)(q^2-1)"),
        m_class=P("(q-1)(q^3-q^2-q)"),
        m_class_alt=P("(q^2-q)(q^2-q-1)"),
        plus_parts={
            "GL2": (P("q^2"), P("q")),
            "diag_distinct": (P("q^2-2q+1"), P("1-q")),
            "diag": (P("q^2-q"), P("1-q")),
        },
        x_class=P("q^2+q"),
        c_class=P("q^2"),
    )


def census_glr(r: int) -> MotClass:
    """Class of the space of conjugacy classes of GL_r.

    Sum over partitions of r of prod over part sizes l with multiplicity
    n_l > 0 of (q^n_l - q^(n_l - 1)).
    """
    if r < 1:
        raise ValueError("rank must be at least 1")
    if r > CENSUS_MAX_RANK:
        raise BudgetExceeded(f"census limited to r <= {CENSUS_MAX_RANK}")
    cache: Dict[int, QPolynomial] = {}
    total = ZERO
    for lam in partitions(r):
        term = QPolynomial((1,))
        for m in lam.multiplicities().values():
            if m not in cache:
                cache[m] = QPolynomial.monomial(m) - QPolynomial.monomial(m - 1)
            term = term * cache[m]
        total = total + term
    return MotClass(total)


def c2_glr_class(r: int) -> MotClass:
    return gl_class(r) * census_glr(r)


def default_r_max(N: int, W: int = 3) -> int:
    # census_r / q^r first differs from 1 near u^(r/2 + 1), so precision N
    # needs r of about 2N before the window can close
    return 2 * N + W + 3


def census_limit_report(r_max: Optional[int] = None, N: int = DEFAULT_PRECISION, W: int = 3) -> LimitReport:
    r_max = default_r_max(N, W) if r_max is None else r_max
    seq = MotSequence(lambda r: census_glr(r) / q ** r, "census_GL_r / q^r")
    rep = limit_detect(seq, N=N, W=W, n_start=1, n_max=r_max)
    rep.target = expand(ONE_CLASS, N)
    rep.matches_target = rep.converged and rep.limit == rep.target
    return rep


def rank_stability_report(r_max: Optional[int] = None, N: int = DEFAULT_PRECISION, W: int = 3) -> LimitReport:
    r_max = default_r_max(N, W) if r_max is None else r_max
    # c2/(q^r [GL_r]) is census/q^r exactly; divide anyway so the report is honest
    seq = MotSequence(lambda r: c2_glr_class(r) / (q ** r * gl_class(r)), "[C_2(GL_r)] / (q^r [GL_r])")
    rep = limit_detect(seq, N=N, W=W, n_start=1, n_max=r_max)
    rep.target = expand(ONE_CLASS, N)
    rep.matches_target = rep.converged and rep.limit == rep.target
    return rep


@dataclass
class Sl2CensusReport:
    primes: List[int]
    class_counts: Dict[int, int]
    candidate: Optional[str]
    candidate_values: Dict[int, object]
    agrees: Optional[bool]
    r2_ratio: str
    exploratory: bool = True
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "primes": self.primes,
            "class_counts": {str(k): v for k, v in self.class_counts.items()},
            "candidate": self.candidate,
            "candidate_values": {str(k): str(v) for k, v in self.candidate_values.items()},
            "agrees": self.agrees,
            "r2_ratio": self.r2_ratio,
            "exploratory": self.exploratory,
            "notes": self.notes,
        }


def sl2_commuting_ratio_check(N: int = DEFAULT_PRECISION, candidate: Optional[str] = "q+4",
                              primes: Sequence[int] = (3, 5, 7)) -> Sl2CensusReport:
    """Oracle conjugacy-class counts of SL_2(F_p) for odd p against a candidate census.

    Only the rank-2 point is available; nothing here extrapolates in r.
    """
    from .catalog import rep_surface_class, sl_class
    from .oracle import count_conjugacy_classes

    counts = {p: count_conjugacy_classes("SL2", p) for p in primes}
    values, agrees = {}, None
    if candidate:
        cand = MotClass.parse(candidate)
        values = {p: cand.evaluate(p) for p in primes}
        agrees = all(values[p] == counts[p] for p in primes)
    ratio = rep_surface_class("SL2", 1) / (q ** 2 * sl_class(2))
    return Sl2CensusReport(
        list(primes), counts, candidate, values, agrees, str(expand(ratio, N)),
        notes=["rank-2 data only; the general SL_r census is not derived here"],
    )
