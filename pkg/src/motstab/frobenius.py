"""Frobenius's count of surface-group homomorphisms into a finite group.

#Hom(pi_1(M_g), G) = #G * sum_chi (#G / chi(1))^(2g-2), so the ratio against
#G^(2g) is sum_chi chi(1)^(2-2g) / #G and tends to (#linear chars)/#G.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .errors import InvariantViolated, ParseError, UnknownGroup

Perm = Tuple[int, ...]


@dataclass(frozen=True)
class FiniteGroupData:
    name: str
    order: int
    char_degrees: Tuple[int, ...]
    commutator_order: int
    generators: Tuple[Perm, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "char_degrees", tuple(sorted(self.char_degrees)))
        object.__setattr__(self, "generators", tuple(tuple(p) for p in self.generators))

    def validate(self) -> "FiniteGroupData":
        if self.order < 1 or self.commutator_order < 1 or not self.char_degrees:
            raise InvariantViolated(f"{self.name}: order, degrees and commutator order must be positive")
        if any(d < 1 for d in self.char_degrees):
            raise InvariantViolated(f"{self.name}: character degrees must be positive")
        if sum(d * d for d in self.char_degrees) != self.order:
            raise InvariantViolated(f"{self.name}: squares of degrees sum to "
                                    f"{sum(d * d for d in self.char_degrees)}, not {self.order}")
        linear = self.char_degrees.count(1)
        if linear * self.commutator_order != self.order:
            raise InvariantViolated(f"{self.name}: {linear} linear characters but "
                                    f"order/commutator_order = {Fraction(self.order, self.commutator_order)}")
        for p in self.generators:
            if sorted(p) != list(range(len(p))):
                raise InvariantViolated(f"{self.name}: generator {p} is not a permutation")
        return self

    @property
    def num_classes(self) -> int:
        return len(self.char_degrees)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "char_degrees": list(self.char_degrees),
            "commutator_order": self.commutator_order,
            "generators": [list(p) for p in self.generators],
        }


def rep_count(G: FiniteGroupData, g: int) -> int:
    if g < 1:
        raise ValueError("genus must be at least 1")
    G.validate()
    e = 2 * g - 2
    return G.order * sum((G.order // d) ** e for d in G.char_degrees)


@dataclass
class RatioReport:
    group: str
    ratios: List[Tuple[int, Fraction]]
    limit: Fraction
    rate: Fraction
    last_gap: Fraction

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "ratios": [[g, str(r)] for g, r in self.ratios],
            "limit": str(self.limit),
            "rate": str(self.rate),
            "last_gap": str(self.last_gap),
        }


def rep_ratio(G: FiniteGroupData, g: int) -> Fraction:
    return Fraction(rep_count(G, g), G.order ** (2 * g))


def rep_ratio_report(G: FiniteGroupData, g_max: int) -> RatioReport:
    """Exact ratios for g = 1..g_max together with the limit 1/#[G,G].

    ``rate`` is d^-2 for the smallest nonlinear degree d: each genus step
    shrinks the gap to the limit by at least that factor.
    """
    if g_max < 2:
        raise ValueError("g_max must be at least 2")
    G.validate()
    ratios = [(g, rep_ratio(G, g)) for g in range(1, g_max + 1)]
    limit = Fraction(1, G.commutator_order)
    nonlinear = [d for d in G.char_degrees if d > 1]
    rate = Fraction(1, min(nonlinear) ** 2) if nonlinear else Fraction(0)
    return RatioReport(G.name, ratios, limit, rate, ratios[-1][1] - limit)


# built-in groups, with permutation generators for the brute-force cross-check

def _cycle(n: int) -> Perm:
    return tuple((i + 1) % n for i in range(n))


def _q8_regular() -> Tuple[Perm, Perm]:
    # elements (sign, unit) with unit in 1,i,j,k; left multiplication by i and j
    units = "1ijk"
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for s in (1, -1) for u in units]
    index = {e: n for n, e in enumerate(elems)}

    def left(x):
        out = []
        for s, u in elems:
            t, w = table[(x, u)]
            out.append(index[(s * t, w)])
        return tuple(out)

    return left("i"), left("j")


def builtin(name: str) -> FiniteGroupData:
    key = name.strip()
    if key.upper() == "S3":
        G = FiniteGroupData("S3", 6, (1, 1, 2), 3, ((1, 2, 0), (1, 0, 2)))
    elif key.upper() == "D4":
        G = FiniteGroupData("D4", 8, (1, 1, 1, 1, 2), 2, ((1, 2, 3, 0), (3, 2, 1, 0)))
    elif key.upper() == "Q8":
        G = FiniteGroupData("Q8", 8, (1, 1, 1, 1, 2), 2, _q8_regular())
    else:
        n = _cyclic_order(key)
        if n is None:
            raise UnknownGroup(f"unknown finite group {name!r}")
        G = FiniteGroupData(f"Z{n}", n, (1,) * n, 1, (_cycle(n),) if n > 1 else ())
    return G.validate()


def _cyclic_order(key: str) -> Optional[int]:
    k = key.upper().replace(" ", "")
    for prefix in ("ZN(", "Z("):
        if k.startswith(prefix) and k.endswith(")") and k[len(prefix):-1].isdigit():
            return int(k[len(prefix):-1]) or None
    if k.startswith("Z") and k[1:].isdigit():
        return int(k[1:]) or None
    return None


BUILTIN_NAMES = ("S3", "Z2", "Z3", "Zn(n)", "D4", "Q8")


def from_degrees(degrees: Sequence[int], order: int, commutator_order: Optional[int] = None,
                 name: str = "custom") -> FiniteGroupData:
    """Group data from a degree list; the commutator order defaults to order/#linear."""
    degrees = tuple(degrees)
    if commutator_order is None:
        linear = degrees.count(1)
        if not linear or order % linear:
            raise InvariantViolated("cannot infer the commutator order from these degrees")
        commutator_order = order // linear
    return FiniteGroupData(name, order, degrees, commutator_order).validate()


def load_group_file(path) -> List[FiniteGroupData]:
    """Read one group object or a list of them from a JSON file."""
    with open(Path(path)) as fh:
        raw = json.load(fh)
    items = raw if isinstance(raw, list) else raw.get("groups", [raw])
    out = []
    for d in items:
        try:
            out.append(FiniteGroupData(
                d["name"], int(d["order"]), tuple(int(x) for x in d["char_degrees"]),
                int(d["commutator_order"]), tuple(tuple(p) for p in d.get("generators", ())),
            ).validate())
        except KeyError as exc:
            raise ParseError(f"group record lacks field {exc.args[0]!r}") from exc
    return out


def degree_histogram(G: FiniteGroupData) -> dict:
    return dict(Counter(G.char_degrees))
