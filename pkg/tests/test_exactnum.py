from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from bispectral.errors import DivisionByZero, InexactDivision, PoleAtPoint
from bispectral.exactnum import GaussianRational, Poly, RatFunc, format_scalar, gr, lcm_all
from strategies import gaussians, nonzero_polys, polys, rationals

I = GaussianRational(0, 1)


class TestGaussianRational:
    def test_i_squared(self):
        assert I * I == -1

    def test_inverse(self):
        z = GaussianRational(3, 4)
        assert z * z.inverse() == 1
        assert z.inverse() == GaussianRational(mpq(3, 25), mpq(-4, 25))

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            GaussianRational(1, 1) / 0
        with pytest.raises(ZeroDivisionError):
            gr(0).inverse()

    def test_parse_and_format(self):
        z = GaussianRational("-3/4+1/2*i")
        assert z == GaussianRational(mpq(-3, 4), mpq(1, 2))
        assert GaussianRational(format_scalar(z)) == z

    def test_real_values_hash_like_mpq(self):
        assert hash(gr(mpq(2, 3))) == hash(mpq(2, 3))
        assert gr(5) == 5

    @given(gaussians, gaussians, gaussians)
    def test_field_axioms(self, a, b, c):
        a, b, c = gr(a), gr(b), gr(c)
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        if b:
            assert (a / b) * b == a

    @given(gaussians)
    def test_conjugate_norm(self, a):
        a = gr(a)
        n = a * a.conjugate()
        assert not n.im and n.re >= 0


def _frac_poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while out and not out[-1]:
        out.pop()
    return out


def _as_fracs(p):
    return [Fraction(int(c.re.numerator), int(c.re.denominator)) for c in p.coeffs]


class TestPoly:
    def test_degree_of_zero(self):
        assert Poly([]).degree == float("-inf")

    @given(polys(), polys())
    def test_mul_matches_fraction_oracle(self, a, b):
        assert _as_fracs(a * b) == _frac_poly_mul(_as_fracs(a), _as_fracs(b))

    @given(polys(max_deg=6), nonzero_polys(max_deg=3))
    def test_divrem(self, a, b):
        q, r = a.divrem(b)
        assert q * b + r == a
        assert r.degree < b.degree

    def test_exact_div_raises(self):
        with pytest.raises(InexactDivision):
            Poly([1, 0, 1]).exact_div(Poly([0, 1]))

    @given(nonzero_polys(max_deg=3), nonzero_polys(max_deg=3), nonzero_polys(max_deg=2))
    @settings(max_examples=60)
    def test_gcd_divides_and_is_maximal(self, a, b, c):
        g = (a * c).gcd(b * c)
        assert g.divides(a * c) and g.divides(b * c)
        assert c.monic().divides(g)

    def test_lcm_all(self):
        x = Poly([0, 1])
        l = lcm_all([x, x * x, Poly([-1, 1]), Poly([1])])
        assert l == x * x * Poly([-1, 1])

    @given(polys(), rationals)
    def test_taylor_shift(self, p, a):
        assert p.taylor_shift(a).eval(0) == p.eval(a)

    @given(polys())
    def test_reflect_involution(self, p):
        assert p.reflect().reflect() == p
        assert p.reflect().eval(2) == p.eval(-2)

    @given(polys(max_deg=3), polys(max_deg=2))
    @settings(max_examples=50)
    def test_compose(self, p, q):
        assert p.compose(q).eval(3) == p.eval(q.eval(3))

    def test_complex_coefficients_preserved(self):
        p = Poly([I, 1])
        assert not p.is_real()
        assert (p * Poly([-I, 1])) == Poly([1, 0, 1])


class TestRatFunc:
    def test_normalization(self):
        x = Poly([0, 1])
        r = RatFunc(x * x * 2, x * 4)
        assert r.den == Poly([1]) and r.num == x * mpq(1, 2)

    @given(polys(max_deg=3), nonzero_polys(max_deg=2), polys(max_deg=3), nonzero_polys(max_deg=2))
    @settings(max_examples=60)
    def test_field_ops_evaluate_consistently(self, a, b, c, d):
        r, s = RatFunc(a, b), RatFunc(c, d)
        pt = mpq(7, 3)
        if b.eval(pt) and d.eval(pt):
            assert (r + s).eval(pt) == r.eval(pt) + s.eval(pt)
            assert (r * s).eval(pt) == r.eval(pt) * s.eval(pt)

    @given(polys(max_deg=3), nonzero_polys(max_deg=2))
    @settings(max_examples=60)
    def test_quotient_rule(self, a, b):
        r = RatFunc(a, b)
        assert r.derivative() == RatFunc.from_poly(a.derivative()) / RatFunc.from_poly(b) - RatFunc.from_poly(a * b.derivative()) / RatFunc.from_poly(b * b)

    def test_pole(self):
        with pytest.raises(PoleAtPoint):
            RatFunc(Poly([1]), Poly([0, 1])).eval(0)

    def test_taylor_series_division(self):
        # 1/(1 - x) = 1 + x + x^2 + ...
        r = RatFunc(Poly([1]), Poly([1, -1]))
        assert r.taylor(0, 4) == [1, 1, 1, 1]

    def test_poles_within(self):
        x = Poly([0, 1])
        r = RatFunc(Poly([1]), x * x)
        assert r.poles_within(x)
        assert not r.poles_within(Poly([-1, 1]))

    @given(st.integers(-3, 3), st.integers(1, 4))
    def test_constant_value(self, a, b):
        assert RatFunc.const(mpq(a, b)).constant_value() == mpq(a, b)
