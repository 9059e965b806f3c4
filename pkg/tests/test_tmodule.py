"""t-modules: F_q[t]-action, exponential/logarithm, periods."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tmzv.motive import at_shape, star_shape
from tmzv.scalars import APoly, RatFunc, field
from tmzv.tlayer import d_poly, l_poly
from tmzv.tmodule import (TModule, _LaurentScalars, _shape_module,
                          _vec_min_val, check_log_domain,
                          depth_one_period_check, exp_eval, log_coeff_matrix,
                          log_eval, log_oracle_check, period_check,
                          split_log_check, vec_sub)


def small_apolys(fs, max_deg=3):
    elt = st.integers(min_value=0, max_value=fs.q - 1)
    return st.lists(elt, min_size=0, max_size=max_deg + 1).map(
        lambda cs: APoly(fs, tuple(cs)))


class TestCarlitz:
    @pytest.mark.parametrize("q", [2, 3])
    def test_exp_log_coefficients(self, q):
        # exp coefficient 1/D_n, log coefficient 1/L_n
        fs = field(q)
        C = TModule.carlitz(fs)
        one = APoly.one(fs)
        for n in range(1, 5):
            assert C.exp_coeff(n)[0][0] == RatFunc(one, d_poly(fs, n))
            assert C.log_coeff_recursive(n)[0][0] == RatFunc(one, l_poly(fs, n))

    def test_tensor_power_one_is_carlitz(self):
        fs = field(2)
        C = TModule.carlitz(fs)
        T = TModule.carlitz_tensor(fs, 1)
        assert C.dtheta == T.dtheta and C.taus == T.taus


class TestAction:
    @given(data=st.data())
    @settings(max_examples=20, deadline=None)
    def test_act_is_a_ring_action(self, data):
        fs = field(2)
        E = TModule.carlitz_tensor(fs, 2)
        a = data.draw(small_apolys(fs, 2))
        b = data.draw(small_apolys(fs, 2))
        v = [RatFunc.from_apoly(data.draw(small_apolys(fs, 1)))
             for _ in range(2)]
        assert E.act(a * b, v) == E.act(a, E.act(b, v))
        assert E.act(a + b, v) == [x + y for x, y in
                                   zip(E.act(a, v), E.act(b, v))]

    def test_lie_act_is_d_theta(self):
        fs = field(3)
        E = TModule.carlitz_tensor(fs, 2)
        z = [RatFunc.one(fs), RatFunc.theta(fs)]
        got = E.lie_act(APoly.theta(fs), z)
        # theta I + shift
        assert got == [RatFunc.theta(fs) * z[0] + z[1],
                       RatFunc.theta(fs) * z[1]]


class TestExpLog:
    @pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (3, 2)])
    def test_roundtrip(self, q, n):
        fs = field(q)
        E = TModule.carlitz_tensor(fs, n)
        z = [RatFunc.zero(fs)] * (n - 1) + [RatFunc.one(fs)]
        v = exp_eval(E, z, prec=30)
        w = log_eval(E, v, prec=30)
        sc = _LaurentScalars(fs, 40)
        d = vec_sub(w, [sc.conv(x).truncate(30) for x in z])
        res = _vec_min_val(d)
        assert res is None or res >= 30

    def test_functional_equation(self):
        # Exp(d[a] z) = E_a(Exp(z))
        fs = field(2)
        E = TModule.carlitz_tensor(fs, 2)
        z = [RatFunc.zero(fs), RatFunc.one(fs)]
        a = APoly.theta(fs) + APoly.one(fs)
        sc = _LaurentScalars(fs, 60)
        lhs = exp_eval(E, E.lie_act(a, z), prec=30)
        rhs = E.act(a, exp_eval(E, z, prec=45), conv=sc.conv)
        res = _vec_min_val(vec_sub(lhs, [x.truncate(30) for x in rhs]))
        assert res is None or res >= 30

    def test_log_domain_rejects_large_input(self):
        fs = field(2)
        E = TModule.carlitz_tensor(fs, 2)
        big = [RatFunc.from_apoly(APoly.theta(fs).pow(9)), RatFunc.zero(fs)]
        with pytest.raises(ValueError):
            check_log_domain(E, big)


class TestLogCoefficients:
    @pytest.mark.parametrize("q,s,model", [
        (2, (1,), "at"), (2, (2,), "at"), (3, (2,), "at"), (2, (1, 1), "star")])
    def test_closed_form_matches_recursive_exactly(self, q, s, model):
        fs = field(q)
        shape = at_shape(fs, s) if model == "at" else star_shape(fs, s)
        E = _shape_module(shape)
        for n in range(4):
            assert log_coeff_matrix(shape, n) == E.log_coeff_recursive(n)

    def test_oracle_check_windowed(self):
        fs = field(2)
        rep = log_oracle_check(at_shape(fs, (1, 2)), nmax=4, window=60)
        assert rep["pass"]


class TestStarkAndPeriods:
    def test_split_log_check(self):
        fs = field(2)
        rep = split_log_check(at_shape(fs, (1, 2)), prec=20)
        assert rep["recomposes"] and rep["special_point_matches"]
        assert rep["pass"]

    def test_period_check(self):
        fs = field(2)
        rep = period_check(star_shape(fs, (2, 1)), prec=20)
        assert rep["pass"]

    def test_depth_one_period_is_inverse_omega(self):
        fs = field(2)
        rep = depth_one_period_check(fs, 2, prec=20)
        assert rep["pass"]
