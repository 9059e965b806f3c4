"""nu-adic places, factored scalars, and nu-adic zeta values."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tmzv.motive import special_point, star_shape, tmodule_of
from tmzv.scalars import APoly, RatFunc, field, monic_enumerate
from tmzv.vadic import (FactoredScalar, NuAdic, NuPlace, a_nu,
                        nu_inv, nu_mod, nu_reduce, nu_valuation, zeta_nu,
                        zeta_nu_check)


def q2_place():
    fs = field(2)
    return NuPlace(APoly(fs, (1, 1, 1)))


class TestNuPlace:
    def test_residue_degree(self):
        assert q2_place().f == 2

    def test_reducible_rejected(self):
        fs = field(2)
        with pytest.raises(ValueError):
            NuPlace(APoly(fs, (1, 0, 1)))  # (theta + 1)^2

    def test_valuation(self):
        pl = q2_place()
        fs = pl.fs
        assert nu_valuation(APoly.zero(fs), pl) is None
        assert nu_valuation(APoly.theta(fs), pl) == 0
        assert nu_valuation(pl.nu * pl.nu * APoly.theta(fs), pl) == 2

    @given(data=st.data())
    @settings(max_examples=25, deadline=None)
    def test_inverse_multiplies_back(self, data):
        pl = q2_place()
        fs = pl.fs
        cs = [data.draw(st.integers(0, 1)) for _ in range(4)]
        a = APoly(fs, tuple(cs))
        if a.is_zero() or nu_valuation(a, pl) != 0:
            return
        m = 6
        assert nu_mod(a * nu_inv(a, pl, m) - APoly.one(fs), pl, m).is_zero()


class TestNuAdic:
    def test_from_unit_and_abs(self):
        pl = q2_place()
        x = NuAdic.from_unit(pl, 2, APoly.one(pl.fs), 6)
        assert x.abs_exp() == -2 * pl.f

    def test_eq_to_prec(self):
        pl = q2_place()
        fs = pl.fs
        a = nu_reduce(RatFunc.theta(fs), pl, 6)
        b = nu_reduce(RatFunc.theta(fs) + RatFunc.from_apoly(
            pl.nu.pow(4)), pl, 6)
        assert a.eq_to_prec(b, 4)
        assert not a.eq_to_prec(b, 6)

    def test_serialization_keys(self):
        pl = q2_place()
        d = nu_reduce(RatFunc.one(pl.fs), pl, 5).to_dict()
        assert {"nu", "v", "digits", "prec"} <= set(d)


class TestFactoredScalars:
    @given(data=st.data())
    @settings(max_examples=20, deadline=None)
    def test_reduction_compatible_with_exact(self, data):
        # arithmetic in the factored subring, then reduction, matches exact
        # rational arithmetic followed by reduction
        pl = q2_place()
        fs = pl.fs
        from tmzv.tlayer import bracket

        def draw_pair():
            num = APoly.one(fs) + APoly(fs, tuple(
                data.draw(st.integers(0, 1)) for _ in range(3)))
            e = data.draw(st.integers(0, 2))
            fac = FactoredScalar(fs, num, {1: e} if e else None)
            exact = RatFunc(num, bracket(fs, 1).pow(e))
            return fac, exact

        (fx, ex), (fy, ey) = draw_pair(), draw_pair()
        fac = fx * fy + fx - fy
        exact = ex * ey + ex - ey
        assert fac.to_nuadic(pl, 6).eq_to_prec(nu_reduce(exact, pl, 6), 6)


class TestZetaNu:
    @pytest.mark.parametrize("s", [(1,), (3, 1)])
    def test_special_point_is_torsion_q2(self, s):
        # E_{a_nu} kills the special point exactly, so zeta_nu vanishes
        pl = q2_place()
        shape = star_shape(pl.fs, s)
        E = tmodule_of(shape)
        out = E.act(a_nu(shape, pl), special_point(shape))
        assert all(x.is_zero() for x in out)

    def test_depth_one_vanishes_q2(self):
        pl = q2_place()
        v, diag = zeta_nu(pl.fs, (1,), pl, K=8)
        assert v.is_zero_to_prec() and diag["bound_ok"]

    def test_depth_one_interpolated_sum_q3(self):
        # independent oracle at nu = theta: the interpolated Goss sum
        # (nu-factor removed) terminates at degree 2; multiplying back the
        # Euler factor nu/(nu - 1) recovers the logarithmic value
        fs = field(3)
        pl = NuPlace(APoly.theta(fs))
        v, diag = zeta_nu(fs, (1,), pl, K=8)
        assert diag["bound_ok"] and not v.is_zero_to_prec()
        m = 12
        acc = APoly.zero(fs)
        for d in range(6):
            for a in monic_enumerate(fs, d):
                if nu_valuation(a, pl) == 0:
                    acc = acc + nu_inv(a, pl, m)
        fac = nu_inv(pl.nu - APoly.one(fs), pl, m) * pl.nu
        want = nu_mod(acc * fac, pl, m)
        assert nu_mod(want - v.apoly_mod(), pl, 8).is_zero()

    def test_contraction_independence_q3(self):
        fs = field(3)
        rep = zeta_nu_check(fs, (1,), NuPlace(APoly.theta(fs)), K=6)
        assert rep["pass"]
