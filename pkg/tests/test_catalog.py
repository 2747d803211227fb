import json
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

from motstab.catalog import (
    Catalog,
    conjecture_a_target,
    gl_class,
    group_entry,
    leading_term,
    rep_surface_class,
    sl_class,
    upper_triangular_class,
    verify_conjecture_a,
)
from motstab.errors import UnknownGroup
from motstab.mot import MotClass, expand, q

Q, G = sympy.symbols("q g")


def test_family_classes():
    assert str(gl_class(2)) == "q^4 - q^3 - q^2 + q"
    assert sl_class(2) == q ** 3 - q
    assert upper_triangular_class(2) == q * (q - 1) ** 2
    assert gl_class(3).dimension() == 9


def test_gl_point_counts():
    # |GL_3(F_2)| = 168, |GL_2(F_3)| = 48
    assert gl_class(3).evaluate(2) == 168
    assert gl_class(2).evaluate(3) == 48


def test_entry_lookup_and_errors():
    e = group_entry("GL3")
    assert e.cls == gl_class(3) and e.dim == 9
    assert group_entry("GL", 2).cls == gl_class(2)
    with pytest.raises(UnknownGroup):
        group_entry("E8")


def test_every_entry_is_consistent():
    cat = Catalog.load()
    for name in cat.names():
        cat.entry(name).check()


def test_sl2_rep_surface_genus_one_matches_oracle_count():
    # commuting pairs in SL_2(F_3): q(q^2-1)(q+4) at q=3
    assert rep_surface_class("SL2", 1).evaluate(3) == 168


def test_targets():
    assert conjecture_a_target("SL2") == 1 / (q ** 3 - q)
    assert conjecture_a_target("U2") == 1 / q
    assert conjecture_a_target("GmZ2") == 1 / (q - 1)


def test_sl2_converges_to_target():
    rep = verify_conjecture_a("SL2", N=10)
    assert rep.converged and rep.matches_target
    assert rep.limit == expand(1 / (q ** 3 - q), 10)


def test_u2_leading_term_ratio_is_exact():
    for g in (1, 2, 3):
        assert leading_term("U2", g) / (q * (q - 1) ** 2) ** (2 * g) == 1 / q


def test_gmz2_limit_disagrees_with_target_at_first_order():
    rep = verify_conjecture_a("GmZ2")
    assert rep.converged and rep.mode == "tolerance"
    assert rep.matches_target is False
    assert rep.limit[1] == 2 and rep.target[1] == 1


def test_gmz2_ratio_against_sympy():
    num = (Q - 1) ** (2 * G - 1) * (Q - 3 + 2 ** (2 * G + 1))
    ratio = sympy.simplify(num / (2 * (Q - 1)) ** (2 * G))
    closed = 2 / (Q - 1) + sympy.Integer(4) ** (-G) * (Q - 3) / (Q - 1)
    for g in range(1, 7):
        assert sympy.cancel((ratio - closed).subs(G, g)) == 0
    for g in (1, 2, 5):
        ours = rep_surface_class("GmZ2", g) / (2 * (q - 1)) ** (2 * g)
        assert Fraction(str(ratio.subs({G: g, Q: 7}))) == ours.evaluate(7)


def test_character_stack_diverges():
    rep = verify_conjecture_a("GmZ2_charstack", n_max=20)
    assert not rep.converged


def test_tampered_catalog_is_loaded_from_path(tmp_path):
    src = Path(Catalog.load().source)
    raw = json.loads(src.read_text())
    raw["groups"]["U2"]["rep_surface"] = raw["groups"]["U2"]["rep_surface"].replace("(q-1)^{2g+1}", "(q-1)^{2g+2}")
    bad = tmp_path / "cat.json"
    bad.write_text(json.dumps(raw))
    cat = Catalog.load(bad)
    assert cat.rep_surface_class("U2", 1) != rep_surface_class("U2", 1)
