"""Brute-force counts over small finite groups.

Everything here works with explicit elements: matrices over a prime field or
permutations. Nothing is imported from the symbolic side except for
reporting predictions next to counts, so the two can be compared honestly.
"""

from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded, InvariantViolated, NonIntegerResult, NotPrime, UnknownGroup

MAX_GROUP_ORDER = 10 ** 6
MAX_SURFACE_TUPLES = 10 ** 7
GROUP_IDS = ("GL2", "SL2", "U2", "D2", "GL3")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeFieldElement:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _other(self, o):
        if isinstance(o, PrimeFieldElement):
            if o.p != self.p:
                raise ValueError("elements of different fields")
            return o.value
        return o % self.p

    def __add__(self, o):
        return PrimeFieldElement(self.value + self._other(o), self.p)

    __radd__ = __add__

    def __sub__(self, o):
        return PrimeFieldElement(self.value - self._other(o), self.p)

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p)

    def __mul__(self, o):
        return PrimeFieldElement(self.value * self._other(o), self.p)

    __rmul__ = __mul__

    def inverse(self) -> "PrimeFieldElement":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return PrimeFieldElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, o):
        return self * PrimeFieldElement(self._other(o), self.p).inverse()

    def __int__(self):
        return self.value


def classical_order(group_id: str, p: int) -> int:
    gid = group_id.upper()
    if gid == "GL2":
        return (p ** 2 - 1) * (p ** 2 - p)
    if gid == "SL2":
        return (p ** 2 - 1) * p
    if gid == "U2":
        return (p - 1) ** 2 * p
    if gid == "D2":
        return (p - 1) ** 2
    if gid == "GL3":
        return (p ** 3 - 1) * (p ** 3 - p) * (p ** 3 - p ** 2)
    raise UnknownGroup(f"unknown matrix group {group_id!r}")


class FiniteGroup:
    """Explicit group: element list, multiplication, inverse, identity."""

    name: str
    elements: List
    identity: object

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def commutator(self, a, b):
        return self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))

    def spot_check(self, trials: int = 50, seed: int = 0) -> None:
        rng = random.Random(seed)
        members = set(self.elements)
        for _ in range(trials):
            a, b = rng.choice(self.elements), rng.choice(self.elements)
            if self.mul(a, b) not in members or self.inv(a) not in members:
                raise InvariantViolated(f"{self.name} is not closed")
            if self.mul(a, self.inv(a)) != self.identity:
                raise InvariantViolated(f"{self.name}: inverse check failed")


def _matmul(a, b, k, p):
    return tuple(
        sum(a[i * k + t] * b[t * k + j] for t in range(k)) % p
        for i in range(k) for j in range(k)
    )


def _det(m, k, p):
    if k == 2:
        return (m[0] * m[3] - m[1] * m[2]) % p
    a, b, c, d, e, f, g, h, i = m
    return (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % p


def _matinv(m, k, p):
    if k == 2:
        di = pow(_det(m, 2, p), -1, p)
        a, b, c, d = m
        return ((d * di) % p, (-b * di) % p, (-c * di) % p, (a * di) % p)
    a, b, c, d, e, f, g, h, i = m
    di = pow(_det(m, 3, p), -1, p)
    adj = (e * i - f * h, c * h - b * i, b * f - c * e,
           f * g - d * i, a * i - c * g, c * d - a * f,
           d * h - e * g, b * g - a * h, a * e - b * d)
    return tuple((x * di) % p for x in adj)


class MatrixGroupEnum(FiniteGroup):
    def __init__(self, group_id: str, p: int, elements: List[tuple], k: int):
        self.group_id = group_id
        self.p = p
        self.k = k
        self.name = f"{group_id}(F_{p})"
        self.elements = elements
        self.identity = tuple(int(i == j) for i in range(k) for j in range(k))

    def mul(self, a, b):
        return _matmul(a, b, self.k, self.p)

    def inv(self, a):
        return _matinv(a, self.k, self.p)


def enumerate_group(group_id: str, p: int) -> MatrixGroupEnum:
    gid = group_id.upper()
    if gid not in GROUP_IDS:
        raise UnknownGroup(f"unknown matrix group {group_id!r}")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime; only prime fields are supported")
    if gid == "GL3" and p not in (2, 3):
        raise BudgetExceeded("GL3 enumeration is limited to p in {2, 3}")
    if classical_order(gid, p) > MAX_GROUP_ORDER or (gid != "GL3" and p ** 4 > 50 * MAX_GROUP_ORDER):
        raise BudgetExceeded(f"{gid}(F_{p}) is too large to enumerate")
    k = 3 if gid == "GL3" else 2
    rng = range(p)
    if gid == "GL2":
        els = [m for m in product(rng, repeat=4) if _det(m, 2, p)]
    elif gid == "SL2":
        els = [m for m in product(rng, repeat=4) if _det(m, 2, p) == 1]
    elif gid == "U2":
        els = [(a, b, 0, d) for a in range(1, p) for b in rng for d in range(1, p)]
    elif gid == "D2":
        els = [(a, 0, 0, d) for a in range(1, p) for d in range(1, p)]
    else:
        els = [m for m in product(rng, repeat=9) if _det(m, 3, p)]
    G = MatrixGroupEnum(gid, p, els, k)
    if len(els) != classical_order(gid, p):
        raise InvariantViolated(f"{G.name} has {len(els)} elements, expected {classical_order(gid, p)}")
    return G


class PermGroup(FiniteGroup):
    """Permutation group generated by the given permutations (closure by BFS)."""

    def __init__(self, generators: Sequence[Sequence[int]], name: str = "perm", max_order: int = MAX_GROUP_ORDER):
        gens = [tuple(g) for g in generators]
        degree = len(gens[0]) if gens else 1
        if any(len(g) != degree for g in gens):
            raise ValueError("generators act on different point sets")
        self.name = name
        self.identity = tuple(range(degree))
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > max_order:
                            raise BudgetExceeded(f"{name} exceeds {max_order} elements")
            frontier = nxt
        self.elements = sorted(seen)

    def mul(self, a, b):
        # (a*b)(i) = a(b(i))
        return tuple(a[i] for i in b)

    def inv(self, a):
        out = [0] * len(a)
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)


def abstract_group(data) -> PermGroup:
    """PermGroup from FiniteGroupData with generators."""
    if not data.generators and data.order > 1:
        raise InvariantViolated(f"{data.name} has no generators")
    G = PermGroup(data.generators or [(0,)], data.name)
    if len(G) != data.order:
        raise InvariantViolated(f"generators of {data.name} give {len(G)} elements, not {data.order}")
    return G


# conjugacy and centralizers

def centralizer(G: FiniteGroup, x, within: Optional[Iterable] = None) -> List:
    pool = G.elements if within is None else within
    return [y for y in pool if G.mul(x, y) == G.mul(y, x)]


def conjugacy_classes(G: FiniteGroup, within: Optional[Sequence] = None) -> List[Tuple[object, int]]:
    """(representative, class size) pairs for the conjugation action of H = within."""
    H = list(G.elements if within is None else within)
    seen = set()
    out = []
    for x in H:
        if x in seen:
            continue
        orbit = {G.mul(G.mul(h, x), G.inv(h)) for h in H}
        seen |= orbit
        out.append((x, len(orbit)))
    return out


def count_conjugacy_classes(G, p: Optional[int] = None) -> int:
    if isinstance(G, str):
        G = enumerate_group(G, p)
    return len(conjugacy_classes(G))


def count_commuting_tuples(G, n: int, p: Optional[int] = None, jobs: int = 1) -> int:
    """#{(g_1..g_n) pairwise commuting}, by recursion over centralizers.

    count(H, n) = sum over H-classes [x] of |[x]| * count(C_H(x), n-1),
    memoized on the subgroup as an element set.
    """
    if isinstance(G, str):
        G = enumerate_group(G, p)
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 2 and jobs > 1:
        return count_commuting_pairs_direct(G, jobs)
    memo: Dict[Tuple[FrozenSet, int], int] = {}

    def rec(H: Tuple, k: int) -> int:
        if k == 1:
            return len(H)
        key = (frozenset(H), k)
        if key not in memo:
            total = 0
            for x, size in conjugacy_classes(G, H):
                total += size * rec(tuple(centralizer(G, x, H)), k - 1)
            memo[key] = total
        return memo[key]

    return rec(tuple(G.elements), n)


def _pairs_chunk(args) -> int:
    group_id, p, lo, hi = args
    G = enumerate_group(group_id, p)
    return sum(len(centralizer(G, x)) for x in G.elements[lo:hi])


def count_commuting_pairs_direct(G: FiniteGroup, jobs: int = 1) -> int:
    """sum_g |C_G(g)|; with jobs > 1 the outer loop is split across processes."""
    n = len(G)
    if jobs <= 1 or not isinstance(G, MatrixGroupEnum):
        return sum(len(centralizer(G, x)) for x in G.elements)
    step = -(-n // jobs)
    chunks = [(G.group_id, G.p, lo, min(lo + step, n)) for lo in range(0, n, step)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return sum(ex.map(_pairs_chunk, chunks))


def _surface_budget(G: FiniteGroup, g: int) -> None:
    if g < 1:
        raise ValueError("genus must be at least 1")
    if len(G) ** (2 * g) > MAX_SURFACE_TUPLES:
        raise BudgetExceeded(f"|G|^(2g) = {len(G)}^{2 * g} exceeds {MAX_SURFACE_TUPLES}")


def count_surface_tuples(G: FiniteGroup, g: int) -> int:
    """#{(A_1,B_1,..,A_g,B_g) : prod [A_i,B_i] = 1}, via the commutator histogram.

    The histogram h(c) = #{(a,b): [a,b] = c} is convolved g times; this is
    exact and visits |G|^2 pairs plus g|G|^2 products instead of |G|^(2g).
    """
    _surface_budget(G, g)
    hist = Counter(G.commutator(a, b) for a in G.elements for b in G.elements)
    dist = {G.identity: 1}
    for _ in range(g):
        nxt: Counter = Counter()
        for x, cx in dist.items():
            for c, cc in hist.items():
                nxt[G.mul(x, c)] += cx * cc
        dist = nxt
    return dist.get(G.identity, 0)


def count_surface_tuples_brute(G: FiniteGroup, g: int) -> int:
    """Literal enumeration of G^(2g); slow, used as a second opinion."""
    _surface_budget(G, g)
    total = 0
    for tup in product(G.elements, repeat=2 * g):
        acc = G.identity
        for i in range(g):
            acc = G.mul(acc, G.commutator(tup[2 * i], tup[2 * i + 1]))
        total += acc == G.identity
    return total


def weil_sym_count(point_counts: Sequence[int], n: int) -> int:
    """#Sym^n X(F_q) from N_d = #X(F_{q^d}), via n Z_n = sum_d N_d Z_{n-d}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if len(point_counts) < n:
        raise ValueError(f"need N_1..N_{n}, got {len(point_counts)} counts")
    Z = [Fraction(1)]
    for m in range(1, n + 1):
        Z.append(sum(Fraction(point_counts[d - 1]) * Z[m - d] for d in range(1, m + 1)) / m)
    for m, z in enumerate(Z):
        if z.denominator != 1:
            raise NonIntegerResult(f"coefficient of t^{m} is {z}; the point counts are inconsistent")
    return int(Z[n])


def point_counts(count: Callable[[int], int], q0: int, n: int) -> List[int]:
    """[count(q0), count(q0^2), ..., count(q0^n)]."""
    return [count(q0 ** d) for d in range(1, n + 1)]
