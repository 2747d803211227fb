"""Partitions, Kostka numbers, good-set pairing matrices and the motivic
decomposition into isotypic pieces.

Partitions of n are ordered lexicographically, largest first. In that order
the Kostka matrix (rows mu = irreducibles, columns lambda = Young subgroups)
is upper unitriangular, so decompositions are solved by substitution.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    BudgetExceeded,
    InvariantViolated,
    MissingQuotient,
    SizeMismatch,
    TooSmall,
)
from .limits import DEFAULT_PRECISION, LimitReport, MotSequence, limit_detect
from .mot import ZERO_CLASS, MotClass, expand, q

PARTITION_MAX = 40
PSI_MAX = 10


@dataclass(frozen=True, order=True)
class Partition:
    parts: Tuple[int, ...]

    def __init__(self, parts: Iterable[int] = ()):
        ps = tuple(sorted((int(p) for p in parts), reverse=True))
        if any(p <= 0 for p in ps):
            raise ValueError(f"partition parts must be positive: {ps}")
        object.__setattr__(self, "parts", ps)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def multiplicities(self) -> Dict[int, int]:
        return dict(Counter(self.parts))

    def __str__(self):
        return ",".join(map(str, self.parts)) if self.parts else "()"

    def __repr__(self):
        return f"Partition({self.parts})"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        t = text.strip().strip("()[]")
        if not t or t == "0":
            return cls(())
        return cls(int(x) for x in t.replace(" ", ",").split(",") if x)


def partitions(n: int) -> List[Partition]:
    """All partitions of n, lexicographically decreasing: (n), (n-1,1), ..."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > PARTITION_MAX:
        raise BudgetExceeded(f"partition enumeration limited to n <= {PARTITION_MAX}")
    return [Partition(p) for p in _parts(n, n)]


@lru_cache(maxsize=None)
def _parts(n: int, largest: int) -> Tuple[Tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        out.extend((first,) + rest for rest in _parts(n - first, first))
    return tuple(out)


def pad(lam: Partition, n: int) -> Partition:
    """lambda[n] = (n - |lambda|, lambda_1, lambda_2, ...)."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    first = lam[0] if len(lam) else 0
    if n < lam.size + first:
        raise TooSmall(f"pad({lam}, {n}) needs n >= {lam.size + first}")
    head = n - lam.size
    return Partition((head,) + lam.parts) if head else Partition(lam.parts)


def kostka(mu: Partition, lam: Partition) -> int:
    """Number of semistandard tableaux of shape mu and content lam.

    Cells are filled row by row; each entry is >= its left neighbour,
    > the entry above, and drawn from the remaining content.
    """
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    if mu.size != lam.size:
        raise SizeMismatch(f"|{mu}| != |{lam}|")
    # dominance is necessary; it prunes most zero entries immediately
    if not _dominates(mu, lam):
        return 0
    cells = [(i, j) for i, row in enumerate(mu.parts) for j in range(row)]
    k = len(lam)
    remaining = list(lam.parts)
    grid = [[0] * row for row in mu.parts]

    def fill(idx: int) -> int:
        if idx == len(cells):
            return 1
        i, j = cells[idx]
        lo = 1
        if j > 0:
            lo = grid[i][j - 1]
        if i > 0:
            lo = max(lo, grid[i - 1][j] + 1)
        total = 0
        for v in range(lo, k + 1):
            if remaining[v - 1]:
                remaining[v - 1] -= 1
                grid[i][j] = v
                total += fill(idx + 1)
                remaining[v - 1] += 1
        return total

    return fill(0)


def _dominates(mu: Partition, lam: Partition) -> bool:
    a = b = 0
    for i in range(max(len(mu), len(lam))):
        a += mu[i] if i < len(mu) else 0
        b += lam[i] if i < len(lam) else 0
        if a < b:
            return False
    return True


def kostka_by_strips(mu: Partition, lam: Partition) -> int:
    """Kostka number by peeling horizontal strips (largest label first).

    Independent of :func:`kostka`; used as a cross-check.
    """
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    if mu.size != lam.size:
        raise SizeMismatch(f"|{mu}| != |{lam}|")
    return _strips(mu.parts, tuple(x for x in lam.parts if x))


@lru_cache(maxsize=None)
def _strips(shape: Tuple[int, ...], content: Tuple[int, ...]) -> int:
    if not content:
        return 1 if not shape else 0
    k = content[-1]
    rest = content[:-1]
    total = 0
    # inner shapes nu with shape/nu a horizontal strip of size k:
    # shape[i+1] <= nu[i] <= shape[i]
    rows = len(shape)

    def rec(i: int, left: int, nu: list):
        nonlocal total
        if i == rows:
            if left == 0:
                total += _strips(tuple(x for x in nu if x), rest)
            return
        lower = shape[i + 1] if i + 1 < rows else 0
        for take in range(0, min(left, shape[i] - lower) + 1):
            nu.append(shape[i] - take)
            rec(i + 1, left - take, nu)
            nu.pop()

    rec(0, k, [])
    return total


@dataclass(frozen=True)
class KostkaMatrix:
    n: int
    index: Tuple[Partition, ...]
    entries: Tuple[Tuple[int, ...], ...]  # entries[i][j] = K(index[i], index[j])

    def __post_init__(self):
        for i in range(len(self.index)):
            if self.entries[i][i] != 1:
                raise InvariantViolated(f"K({self.index[i]},{self.index[i]}) != 1")
            for j in range(i):
                if self.entries[i][j] != 0:
                    raise InvariantViolated(f"K({self.index[i]},{self.index[j]}) != 0 below the diagonal")

    @property
    def row_index(self):
        return self.index

    @property
    def col_index(self):
        return self.index

    def __getitem__(self, key):
        mu, lam = key
        return self.entries[self.index.index(mu)][self.index.index(lam)]

    def rows(self) -> List[List[int]]:
        return [list(r) for r in self.entries]

    def determinant(self) -> Fraction:
        return rational_det(self.rows())

    def to_dict(self) -> dict:
        return {"n": self.n, "index": [str(p) for p in self.index], "entries": self.rows()}


def psi_matrix_sn(n: int) -> KostkaMatrix:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > PSI_MAX:
        raise BudgetExceeded(f"Kostka matrices limited to n <= {PSI_MAX}")
    idx = tuple(partitions(n))
    entries = tuple(tuple(kostka(mu, lam) for lam in idx) for mu in idx)
    return KostkaMatrix(n, idx, entries)


# cyclic groups and products

def divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@dataclass(frozen=True)
class PsiMatrix:
    """Pairing of rational irreducibles (rows) with subgroups (columns)."""

    rows: Tuple[object, ...]
    cols: Tuple[object, ...]
    entries: Tuple[Tuple[int, ...], ...]

    def matrix(self) -> List[List[int]]:
        return [list(r) for r in self.entries]

    def determinant(self) -> Fraction:
        return rational_det(self.matrix())

    def to_dict(self) -> dict:
        return {"rows": [str(r) for r in self.rows], "cols": [str(c) for c in self.cols],
                "entries": self.matrix()}


def psi_matrix_cyclic(n: int) -> PsiMatrix:
    """Entry phi(d) if d | n/m else 0; rows V_d, columns the subgroup of order m."""
    if n < 1 or n > 10 ** 4:
        raise ValueError("n must lie in 1..10^4")
    ds = divisors(n)
    ent = tuple(tuple(euler_phi(d) if (n // m) % d == 0 else 0 for m in ds) for d in ds)
    return PsiMatrix(tuple(ds), tuple(ds), ent)


def kronecker(a: PsiMatrix, b: PsiMatrix) -> PsiMatrix:
    """Pairing matrix of the product good set H_1 x H_2."""
    rows = tuple((r, s) for r in a.rows for s in b.rows)
    cols = tuple((c, d) for c in a.cols for d in b.cols)
    ent = tuple(
        tuple(a.entries[i][j] * b.entries[k][l] for j in range(len(a.cols)) for l in range(len(b.cols)))
        for i in range(len(a.rows)) for k in range(len(b.rows))
    )
    return PsiMatrix(rows, cols, ent)


def psi_from_kostka(K: KostkaMatrix) -> PsiMatrix:
    return PsiMatrix(K.index, K.index, K.entries)


# exact linear algebra over Q

def rational_det(m: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def rational_inverse(m: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise InvariantViolated("pairing matrix is singular; the subgroup family is not good")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


# decomposition

@dataclass
class DecompositionResult:
    coefficients: Dict[object, MotClass]

    def to_dict(self) -> dict:
        return {str(k): str(v) for k, v in self.coefficients.items()}


def _lookup(quotients: Mapping, key):
    if key in quotients:
        return MotClass.coerce(quotients[key])
    for k, v in quotients.items():
        if str(k) == str(key) or (isinstance(k, str) and isinstance(key, Partition)
                                  and Partition.parse(k) == key):
            return MotClass.coerce(v)
    raise MissingQuotient(f"no quotient class supplied for {key}")


def motivic_decomposition(n: int, quotients: Mapping) -> DecompositionResult:
    """Solve [X/S_lambda] = sum_mu c_mu K(mu, lambda) for the c_mu.

    Column lambda only involves mu >= lambda, so the columns are solved in
    decreasing order of lambda.
    """
    K = psi_matrix_sn(n)
    idx = K.index
    quot = [_lookup(quotients, lam) for lam in idx]
    coeffs: List[MotClass] = []
    for j in range(len(idx)):
        c = quot[j]
        for i in range(j):
            if K.entries[i][j]:
                c = c - coeffs[i] * K.entries[i][j]
        coeffs.append(c)
    return DecompositionResult(dict(zip(idx, coeffs)))


def reconstruct(n: int, result: DecompositionResult) -> Dict[Partition, MotClass]:
    K = psi_matrix_sn(n)
    out = {}
    for j, lam in enumerate(K.index):
        total = ZERO_CLASS
        for i, mu in enumerate(K.index):
            if K.entries[i][j]:
                total = total + result.coefficients[mu] * K.entries[i][j]
        out[lam] = total
    return out


def decompose(psi: PsiMatrix, quotients: Mapping) -> DecompositionResult:
    """General good-set solve: quotients are indexed by the columns of psi."""
    inv = rational_inverse(psi.matrix())
    quot = [_lookup(quotients, c) for c in psi.cols]
    coeffs = {}
    for i, r in enumerate(psi.rows):
        total = ZERO_CLASS
        for j in range(len(psi.cols)):
            if inv[j][i]:
                total = total + quot[j] * inv[j][i]
        coeffs[r] = total
    return DecompositionResult(coeffs)


# free powers X^n with the permutation action

def free_power_quotient(x, lam: Partition, n: int) -> MotClass:
    """[X^n / S_lambda[n]] = Sym^(n-|lambda|) X * prod_i Sym^(lambda_i) X."""
    from .zeta import sym_powers

    lam = lam if isinstance(lam, Partition) else Partition(lam)
    pad(lam, n)  # raises TooSmall
    syms = sym_powers(x, max((n - lam.size,) + lam.parts))
    out = syms[n - lam.size]
    for part in lam:
        out = out * syms[part]
    return MotClass(out)


def free_power_quotients(x, n: int) -> Dict[Partition, MotClass]:
    """[X^n / S_lambda] for every partition lambda of n (Young subgroups)."""
    from .zeta import sym_powers

    syms = sym_powers(x, n)
    out = {}
    for lam in partitions(n):
        v = syms[0]
        for part in lam:
            v = v * syms[part]
        out[lam] = MotClass(v)
    return out


def rep_stability_check(x, lam: Partition, N: int = DEFAULT_PRECISION, n_max: int = 40,
                        W: int = 3) -> LimitReport:
    from .zeta import as_poly, sym_power

    p = x if not isinstance(x, MotClass) else as_poly(x)
    p = MotClass.coerce(p).as_poly()
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    s = p.degree
    first = lam[0] if len(lam) else 0
    start = max(1, lam.size + first)
    seq = MotSequence(lambda n: free_power_quotient(p, lam, n) / q ** (n * s),
                      f"[X^n / S_lambda[n]] / q^(n dim X), X = {p}, lambda = ({lam})")
    rep = limit_detect(seq, N=N, W=W, n_start=start, n_max=max(n_max, start + W - 1))
    if p.is_monic():
        from .zeta import sym_limit

        target = sym_limit(p)
        for part in lam:
            target = target * MotClass(sym_power(p, part)) / q ** (part * s)
        rep.target = expand(target, N)
        rep.matches_target = bool(rep.converged and rep.limit == rep.target)
    return rep
