"""Limit detection for sequences of classes in the completed ring.

A sequence converges when its expansions to precision N stop changing.
Detection is evidence, not proof: the report says at which index the
expansions became constant over a window of consecutive terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional

from .mot import MotClass, expand
from .series import LaurentSeries

DEFAULT_PRECISION = 10
DEFAULT_WINDOW = 3
DEFAULT_N_START = 1
DEFAULT_N_MAX = 40


@dataclass(frozen=True)
class MotSequence:
    generator: Callable[[int], MotClass]
    description: str = ""

    def __call__(self, n: int) -> MotClass:
        return self.generator(n)


@dataclass
class LimitReport:
    converged: bool
    limit: Optional[LaurentSeries]
    stabilization_index: Optional[int]
    precision: int
    window: int
    description: str = ""
    mode: str = "exact"
    tolerance: Fraction = Fraction(0)
    terms_examined: int = 0
    notes: List[str] = field(default_factory=list)
    target: Optional[LaurentSeries] = None
    matches_target: Optional[bool] = None

    def to_dict(self) -> dict:
        return {
            "target": str(self.target) if self.target is not None else None,
            "matches_target": self.matches_target,
            "converged": self.converged,
            "limit": str(self.limit) if self.limit is not None else None,
            "stabilization_index": self.stabilization_index,
            "precision": self.precision,
            "window": self.window,
            "description": self.description,
            "mode": self.mode,
            "tolerance": str(self.tolerance),
            "terms_examined": self.terms_examined,
            "notes": list(self.notes),
        }


def _close(a: LaurentSeries, b: LaurentSeries, n: int, tol) -> bool:
    if tol == 0:
        return a == b
    return a.agrees_with(b, upto=n, tol=tol)


def limit_detect(
    s,
    N: int = DEFAULT_PRECISION,
    W: int = DEFAULT_WINDOW,
    n_start: int = DEFAULT_N_START,
    n_max: int = DEFAULT_N_MAX,
    tolerance=0,
) -> LimitReport:
    """Look for n* <= n_max - W + 1 with expand(s(n), N) constant on [n*, n*+W-1].

    ``tolerance`` > 0 relaxes "constant" to coefficientwise agreement within
    that absolute bound; the reported limit is then the last expansion seen
    and the mode is marked accordingly.
    """
    if N < 0 or W < 2 or n_start < 1 or n_max < n_start + W - 1:
        raise ValueError("limit_detect needs N >= 0, W >= 2, n_start >= 1, n_max >= n_start + W - 1")
    tol = Fraction(tolerance)
    desc = getattr(s, "description", "")
    mode = "exact" if tol == 0 else "tolerance"
    run: list = []  # contiguous (n, expansion) pairs, pairwise close
    examined = 0
    for n in range(n_start, n_max + 1):
        e = expand(MotClass.coerce(s(n)), N)
        examined += 1
        while run and not _close(run[0][1], e, N, tol):
            run.pop(0)
        run.append((n, e))
        if len(run) >= W:
            return LimitReport(True, e, run[0][0], N, W, desc, mode, tol, examined)
    return LimitReport(False, None, None, N, W, desc, mode, tol, examined)
