"""Field tower and exact polynomial / truncated Laurent arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tmzv.scalars import (APoly, PrecisionLaurent, RatFunc, field,
                          monic_enumerate)


def fq2():
    return field(2)


def fq3():
    return field(3)


def fq4():
    return field(2, 2)


FIELDS = [fq2, fq3, fq4]


def apolys(fs, max_deg=5):
    elt = st.integers(min_value=0, max_value=fs.q - 1)
    return st.lists(elt, min_size=0, max_size=max_deg + 1).map(
        lambda cs: APoly(fs, tuple(cs)))


class TestField:
    def test_prime_fields(self):
        assert fq2().q == 2
        assert fq3().q == 3

    def test_extension_field(self):
        fs = fq4()
        assert fs.q == 4 and fs.p == 2 and fs.m == 2

    def test_nonprime_base_rejected(self):
        with pytest.raises(ValueError):
            field(4)

    def test_composite_rejected(self):
        with pytest.raises(ValueError):
            field(6)


class TestAPoly:
    @pytest.mark.parametrize("make", FIELDS)
    def test_ring_axioms_smoke(self, make):
        fs = make()
        t = APoly.monomial(fs, 1)
        one = APoly.one(fs)
        assert (t + one) * (t + one) == t * t + (one + one) * t + one

    def test_divmod(self):
        fs = fq3()
        a = APoly(fs, (1, 2, 0, 1))
        b = APoly(fs, (2, 1))
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.degree() < b.degree()

    @given(data=st.data())
    @settings(max_examples=60, deadline=None)
    def test_divmod_random(self, data):
        fs = fq3()
        a = data.draw(apolys(fs))
        b = data.draw(apolys(fs))
        if b.is_zero():
            return
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero() or r.degree() < b.degree()

    @given(data=st.data())
    @settings(max_examples=40, deadline=None)
    def test_ext_gcd_bezout(self, data):
        fs = fq2()
        a = data.draw(apolys(fs))
        b = data.draw(apolys(fs))
        if a.is_zero() and b.is_zero():
            return
        g, x, y = a.ext_gcd(b)
        assert x * a + y * b == g
        assert (a % g).is_zero() and (b % g).is_zero()

    @pytest.mark.parametrize("make", FIELDS)
    def test_frobenius_is_additive(self, make):
        fs = make()
        a = APoly(fs, tuple(range(min(fs.q, 3))) + (1,))
        b = APoly.theta(fs) + APoly.one(fs)
        assert (a + b).frobenius(1) == a.frobenius(1) + b.frobenius(1)
        assert (a * b).frobenius(1) == a.frobenius(1) * b.frobenius(1)

    def test_frobenius_power(self):
        fs = fq3()
        th = APoly.theta(fs)
        assert th.frobenius(2) == th.pow(9)

    def test_monic_enumerate_count(self):
        fs = fq3()
        assert len(list(monic_enumerate(fs, 2))) == 9
        assert all(a.is_monic() and a.degree() == 2
                   for a in monic_enumerate(fs, 2))


class TestRatFunc:
    def test_inverse(self):
        fs = fq2()
        x = RatFunc.theta(fs) + RatFunc.one(fs)
        assert (x * x.inv()) == RatFunc.one(fs)

    def test_laurent_agrees_with_poly(self):
        fs = fq3()
        a = APoly(fs, (1, 0, 2))
        assert RatFunc.from_apoly(a).laurent(20) == a.laurent(20)


class TestPrecisionLaurent:
    def test_mul_precision_is_relative(self):
        fs = fq2()
        a = APoly.theta(fs).laurent(10)      # v=-1, N=10
        b = APoly.theta(fs).laurent(10)
        c = a * b
        assert c.v == -2
        assert Fraction(c.N - c.v, 1) <= Fraction(a.N - a.v + b.N - b.v, 1)

    def test_inverse_roundtrip(self):
        fs = fq3()
        x = (APoly.theta(fs) + APoly.one(fs)).laurent(30)
        y = x.inv(window=30) * x - PrecisionLaurent.one(fs)
        assert y.is_zero_to_prec()

    def test_frobenius_scales_support(self):
        fs = fq2()
        x = APoly(fs, (1, 1)).laurent(12)
        y = x.frobenius(1)
        assert y == (APoly(fs, (1, 1)) * APoly(fs, (1, 1))).laurent(y.N)

    def test_inverse_frobenius_precision(self):
        fs = fq3()
        x = APoly.theta(fs).pow(3).laurent(30)
        y = x.frobenius(-1)
        assert y.v == -1
        assert y.N == 10  # ceil(30/3)

    def test_inverse_frobenius_needs_divisible_support(self):
        fs = fq2()
        x = (APoly.theta(fs) + APoly.one(fs)).laurent(10)
        with pytest.raises(ValueError):
            x.frobenius(-1)

    def test_embed_ram_preserves_value(self):
        fs = fq3()
        x = APoly(fs, (2, 1)).laurent(15)
        y = x.embed_ram()
        assert y.ram == fs.q - 1
        assert y.v_infty() == x.v_infty()

    def test_serialization_roundtrip(self):
        fs = fq4()
        x = APoly(fs, (3, 1, 2)).laurent(9)
        assert PrecisionLaurent.from_dict(x.to_dict()) == x

    @given(data=st.data())
    @settings(max_examples=40, deadline=None)
    def test_add_associative_to_window(self, data):
        fs = fq2()
        xs = [data.draw(apolys(fs)).laurent(25) for _ in range(3)]
        d = (xs[0] + xs[1]) + xs[2] - (xs[0] + (xs[1] + xs[2]))
        assert d.is_zero_to_prec()

    @given(data=st.data())
    @settings(max_examples=30, deadline=None)
    def test_mul_inverse_to_window(self, data):
        fs = fq3()
        a = data.draw(apolys(fs))
        if a.is_zero():
            return
        x = a.laurent(25)
        d = x * x.inv(window=25) - PrecisionLaurent.one(fs)
        assert d.is_zero_to_prec()
