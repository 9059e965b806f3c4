"""Multiple zeta values, polylogarithms, and the identity check reports."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tmzv.motive import at_shape, star_shape
from tmzv.scalars import RatFunc, field
from tmzv.zeta import (MZVIndex, carlitz_check, cm_check, compositions,
                       depth_one_check, inversion_check, mzv, mzv_brute,
                       mzv_deformed, polylog, power_sum, power_sum_enum,
                       stark_unit_check, strange_formula_check)


def indices(max_weight=5, max_depth=3):
    return st.lists(st.integers(min_value=1, max_value=max_weight),
                    min_size=1, max_size=max_depth).filter(
        lambda s: sum(s) <= max_weight).map(tuple)


class TestIndex:
    def test_weight_and_depth(self):
        idx = MZVIndex((2, 1, 1))
        assert idx.weight == 4 and idx.depth == 3

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            MZVIndex((1, 0))


class TestPowerSums:
    @pytest.mark.parametrize("q", [2, 3])
    def test_closed_form_matches_enumeration(self, q):
        fs = field(q)
        for d in range(4):
            for k in (1, 2, 3):
                diff = power_sum(fs, d, k, 20) - power_sum_enum(fs, d, k, 20)
                assert diff.is_zero_to_prec()


class TestMZV:
    @pytest.mark.parametrize("q", [2, 3])
    @pytest.mark.parametrize("star", [False, True])
    def test_dp_matches_brute_force(self, q, star):
        # literal enumeration below degree D agrees to valuation D*min(s)
        fs = field(q)
        D = 6
        for s in [(1,), (2,), (1, 2), (2, 1), (1, 1, 2)]:
            a = mzv(fs, s, star=star, prec=30).value
            b = mzv_brute(fs, s, star=star, prec=30, D=D).value
            assert (a - b).truncate(D * min(s)).is_zero_to_prec()

    @given(s=indices())
    @settings(max_examples=15, deadline=None)
    def test_dp_matches_brute_force_random(self, s):
        fs = field(2)
        D = 5
        a = mzv(fs, s, prec=30).value
        b = mzv_brute(fs, s, prec=30, D=D).value
        assert (a - b).truncate(D * min(s)).is_zero_to_prec()

    @pytest.mark.parametrize("q,s", [(2, (1,)), (2, (2, 1)), (3, (1,)),
                                     (3, (2, 1))])
    def test_deformed_route_agrees(self, q, s):
        fs = field(q)
        a = mzv_deformed(fs, s, prec=25).value
        b = mzv(fs, s, prec=25).value
        assert (a - b).is_zero_to_prec()


class TestPolylog:
    @pytest.mark.parametrize("s", [(1, 1), (2, 1)])
    def test_star_is_strict_plus_diagonal(self, s):
        # shells with >= split as shells with > plus the collapsed diagonal
        fs = field(2)
        one = RatFunc.one(fs)
        a = polylog(fs, s, (one, one), star=True, prec=25)
        b = polylog(fs, s, (one, one), prec=25)
        c = polylog(fs, (s[0] + s[1],), (one,), prec=25)
        assert (a - b - c).is_zero_to_prec()

    def test_depth_one_at_one_is_zeta(self):
        fs = field(3)
        a = polylog(fs, (2,), (RatFunc.one(fs),), prec=25)
        b = mzv(fs, (2,), prec=25).value
        assert (a - b).is_zero_to_prec()


class TestCompositions:
    def test_weight_six_depth_three_count(self):
        tuples = list(compositions(6, 3))
        assert len(tuples) == 41
        assert all(1 <= len(s) <= 3 and sum(s) <= 6 for s in tuples)


class TestCheckReports:
    def test_carlitz(self):
        rep = carlitz_check(field(2), prec=30)
        assert rep["pass"] and rep["residual_valuation"] >= 30

    def test_depth_one(self):
        rep = depth_one_check(field(2), 2, prec=25)
        assert rep["pass"]

    def test_stark_unit_star(self):
        rep = stark_unit_check(star_shape(field(2), (1, 3)), prec=25,
                               split=False)
        assert rep["pass"]

    def test_inversion(self):
        rep = inversion_check(at_shape(field(2), (1, 2)), prec=25)
        assert rep["pass"]

    def test_strange_formula(self):
        rep = strange_formula_check(field(2), prec=25)
        assert rep["pass"]

    def test_cm(self):
        rep = cm_check(field(2), (1, 1), prec=20)
        assert rep["pass"]
