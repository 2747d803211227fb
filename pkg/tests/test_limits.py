from fractions import Fraction

import pytest

from motstab.limits import MotSequence, limit_detect
from motstab.mot import MotClass, expand, q
from motstab.parsing import parse_class


def test_constant_sequence_converges_immediately():
    rep = limit_detect(MotSequence(lambda n: q ** n / q ** n, "1"))
    assert rep.converged and rep.stabilization_index == 1
    assert rep.limit == expand(MotClass(1), 10)


def test_sl2_ratio_sequence():
    def s(g):
        return parse_class(
            "(1/2)q^{2g-1}(q+1)^{2g-1}(q-1)(2^{2g}+q-1) + (1/2)q^{2g-1}(q-1)^{2g-1}(q+1)(2^{2g}+q-3)"
            " + (q^{2g-1}+q)(q-1)^{2g-1}(q+1)^{2g-1}", g=g) / (q ** 3 - q) ** (2 * g)
    rep = limit_detect(MotSequence(s), N=8, W=3, n_max=20)
    assert rep.converged
    assert rep.limit == expand(1 / (q ** 3 - q), 8)


def test_window_invariant_holds():
    rep = limit_detect(MotSequence(lambda n: 1 + q ** -n), N=5)
    assert rep.converged
    for n in range(rep.stabilization_index, rep.stabilization_index + rep.window):
        assert expand(1 + q ** -n, 5) == rep.limit


def test_divergent_sequence():
    rep = limit_detect(MotSequence(lambda n: MotClass(n)), n_max=12)
    assert not rep.converged and rep.limit is None and rep.stabilization_index is None
    assert rep.terms_examined == 12


def test_tolerance_mode():
    s = MotSequence(lambda n: 1 + MotClass(Fraction(1, 2 ** n)))
    assert not limit_detect(s, N=2, n_max=30).converged
    rep = limit_detect(s, N=2, n_max=40, tolerance=Fraction(1, 10 ** 6))
    assert rep.converged and rep.mode == "tolerance"


def test_bad_parameters():
    with pytest.raises(ValueError):
        limit_detect(MotSequence(lambda n: q), W=1)
    with pytest.raises(ValueError):
        limit_detect(MotSequence(lambda n: q), n_start=5, n_max=5)


def test_report_to_dict_round_trips_limit():
    from motstab.series import parse_series
    rep = limit_detect(MotSequence(lambda n: 1 / (q - 1)), N=4)
    assert parse_series(rep.to_dict()["limit"]) == rep.limit
