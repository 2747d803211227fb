"""Virtual classes of the built-in algebraic groups and their surface-group
representation varieties.

Rank families (GL, SL, U, T) are computed in code. Fixed groups and their
genus-dependent formulas live in ``data/catalog.json`` as class strings in
the variable ``g``, so users can add entries or point at another file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

from .errors import InvariantViolated, ParseError, UnknownGroup
from .limits import DEFAULT_PRECISION, LimitReport, MotSequence, limit_detect
from .mot import ONE_CLASS, MotClass, expand, q
from .parsing import parse_class

DEFAULT_CATALOG = Path(__file__).with_name("data") / "catalog.json"

FAMILIES = ("GL", "SL", "U", "T")


def gl_class(r: int) -> MotClass:
    if r < 1:
        raise ValueError("rank must be at least 1")
    out = ONE_CLASS
    for i in range(r):
        out = out * (q ** r - q ** i)
    return out


def sl_class(r: int) -> MotClass:
    return gl_class(r) / (q - 1)


def upper_triangular_class(r: int) -> MotClass:
    if r < 1:
        raise ValueError("rank must be at least 1")
    return (q - 1) ** r * q ** (r * (r - 1) // 2)


def torus_class(r: int) -> MotClass:
    if r < 1:
        raise ValueError("rank must be at least 1")
    return (q - 1) ** r


@dataclass(frozen=True)
class GroupClassEntry:
    name: str
    rank_param: Optional[int]
    cls: MotClass
    dim: int
    commutator_quotient_class: MotClass
    derived_subgroup_class: MotClass
    specialization_guard: Optional[Tuple[int, int]] = None
    rep_formula: Optional[str] = None
    leading_formula: Optional[str] = None
    oracle_id: Optional[str] = None
    limit_tolerance: Fraction = Fraction(0)
    expected_limit: Optional[MotClass] = None

    def check(self) -> None:
        if self.dim != self.cls.dimension():
            raise InvariantViolated(f"{self.name}: stored dim {self.dim} != {self.cls.dimension()}")
        if self.cls != self.derived_subgroup_class * self.commutator_quotient_class:
            raise InvariantViolated(f"{self.name}: class does not split as derived * quotient")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank_param,
            "class": str(self.cls),
            "dim": self.dim,
            "derived_subgroup_class": str(self.derived_subgroup_class),
            "commutator_quotient_class": str(self.commutator_quotient_class),
            "guard": list(self.specialization_guard) if self.specialization_guard else None,
            "rep_surface": "full-formula" if self.rep_formula else (
                "leading-term-only" if self.leading_formula else None),
        }


def _family_entry(name: str, r: int) -> GroupClassEntry:
    if name == "GL":
        cls, derived, quot, guard = gl_class(r), sl_class(r), q - 1, None
    elif name == "SL":
        cls, derived, quot, guard = sl_class(r), sl_class(r), ONE_CLASS, (2, 1) if r == 2 else None
    elif name == "U":
        cls = upper_triangular_class(r)
        derived, quot, guard = q ** (r * (r - 1) // 2), torus_class(r), None
    elif name == "T":
        cls, derived, quot, guard = torus_class(r), ONE_CLASS, torus_class(r), None
    else:
        raise UnknownGroup(f"unknown group family {name!r}")
    return GroupClassEntry(name, r, cls, cls.dimension(), quot, derived, guard,
                           oracle_id=f"{name}{r}" if name in ("GL", "SL", "U") else None)


class Catalog:
    """Entries loaded from a JSON file; rank families answered in code."""

    def __init__(self, entries: Dict[str, GroupClassEntry], source: Optional[Path] = None):
        self.entries = entries
        self.source = source

    @classmethod
    def load(cls, path: Union[str, Path, None] = None) -> "Catalog":
        path = Path(path) if path is not None else DEFAULT_CATALOG
        with open(path) as fh:
            raw = json.load(fh)
        entries = {}
        for name, d in raw.get("groups", {}).items():
            try:
                c = parse_class(d["class"])
                guard = tuple(d["guard"]) if d.get("guard") else None
                exp = d.get("expected_limit")
                entries[name] = GroupClassEntry(
                    name=name,
                    rank_param=d.get("rank"),
                    cls=c,
                    dim=c.dimension(),
                    commutator_quotient_class=parse_class(d.get("quotient", "1")),
                    derived_subgroup_class=parse_class(d.get("derived", d["class"])),
                    specialization_guard=guard,
                    rep_formula=d.get("rep_surface"),
                    leading_formula=d.get("leading"),
                    oracle_id=d.get("oracle"),
                    limit_tolerance=Fraction(d.get("limit_tolerance", 0)),
                    expected_limit=parse_class(exp) if exp else None,
                )
            except KeyError as exc:
                raise ParseError(f"catalog entry {name!r} lacks field {exc.args[0]!r}") from exc
        return cls(entries, path)

    def names(self):
        return sorted(self.entries)

    def entry(self, name: str, rank: Optional[int] = None) -> GroupClassEntry:
        if name in self.entries:
            return self.entries[name]
        fam = name.upper()
        if fam in FAMILIES:
            if rank is None:
                raise UnknownGroup(f"group family {name!r} needs a rank")
            return _family_entry(fam, rank)
        # "GL3"-style names resolve to a family member
        for f in FAMILIES:
            tail = name[len(f):]
            if name.upper().startswith(f) and tail.isdigit():
                return _family_entry(f, int(tail))
        raise UnknownGroup(f"unknown group {name!r}")

    def rep_surface_class(self, group: str, g: int) -> MotClass:
        e = self.entry(group)
        if g < 1:
            raise ValueError("genus must be at least 1")
        if e.rep_formula is None:
            raise UnknownGroup(f"{group} has no full representation-variety formula; use leading_term")
        return parse_class(e.rep_formula, g=g)

    def leading_term(self, group: str, g: int) -> MotClass:
        e = self.entry(group)
        if e.leading_formula is None:
            raise UnknownGroup(f"{group} has no leading-term formula")
        return parse_class(e.leading_formula, g=g)

    def conjecture_a_target(self, group: str, rank: Optional[int] = None) -> MotClass:
        e = self.entry(group, rank)
        return e.commutator_quotient_class / e.cls

    def ratio_sequence(self, group: str, leading: bool = False) -> MotSequence:
        e = self.entry(group)
        f = self.leading_term if leading else self.rep_surface_class
        kind = "leading term" if leading else "Rep"
        return MotSequence(lambda g: f(group, g) / e.cls ** (2 * g), f"{kind}_{group}(M_g) / [{group}]^(2g)")

    def verify_conjecture_a(self, group: str, N: int = DEFAULT_PRECISION, n_max: int = 40,
                            W: int = 3) -> LimitReport:
        """Detect the limit of Rep_G(M_g)/[G]^(2g) and compare it with [G/[G,G]]/[G]."""
        e = self.entry(group)
        leading = e.rep_formula is None
        if leading and e.leading_formula is None:
            raise UnknownGroup(f"{group} has no representation-variety data")
        seq = self.ratio_sequence(group, leading=leading)
        rep = limit_detect(seq, N=N, W=W, n_max=n_max, tolerance=e.limit_tolerance)
        target = expand(self.conjecture_a_target(group), N)
        rep.target = target
        if leading:
            rep.mode = "leading-order"
            rep.notes.append("only the leading term is known; this checks leading-order consistency")
        if not rep.converged:
            rep.matches_target = False
            rep.notes.append("no stabilization detected")
            return rep
        if e.expected_limit is not None:
            known = expand(e.expected_limit, N)
            if rep.limit.agrees_with(known, upto=N, tol=e.limit_tolerance):
                rep.limit = known
                rep.notes.append(f"limit agrees with {e.expected_limit} within {e.limit_tolerance}")
        rep.matches_target = rep.limit.agrees_with(target, upto=N, tol=e.limit_tolerance)
        if not rep.matches_target:
            diff = [k for k in range(min(rep.limit.min_exponent, target.min_exponent), N + 1)
                    if rep.limit[k] != target[k]]
            rep.notes.append(f"limit differs from the target first at u^{diff[0]}")
        return rep


_DEFAULT: Optional[Catalog] = None


def default_catalog() -> Catalog:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = Catalog.load()
    return _DEFAULT


def rep_surface_class(group: str, g: int) -> MotClass:
    return default_catalog().rep_surface_class(group, g)


def leading_term(group: str, g: int) -> MotClass:
    return default_catalog().leading_term(group, g)


def conjecture_a_target(group: str, rank: Optional[int] = None) -> MotClass:
    return default_catalog().conjecture_a_target(group, rank)


def verify_conjecture_a(group: str, N: int = DEFAULT_PRECISION, n_max: int = 40) -> LimitReport:
    return default_catalog().verify_conjecture_a(group, N, n_max)


def group_entry(name: str, rank: Optional[int] = None) -> GroupClassEntry:
    return default_catalog().entry(name, rank)
