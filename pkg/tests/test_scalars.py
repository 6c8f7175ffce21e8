"""Scalar modes: canonical forms, arithmetic, parsing round-trips."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chevalley.scalars import (GaussianRational, LaurentFrac, LaurentPoly,
                               ScalarError, format_scalar, join_mode, mode_of,
                               parse_scalar)

rationals = st.fractions(min_value=-60, max_value=60, max_denominator=12)
nonzero_rationals = rationals.filter(bool)


class TestGaussian:
    def test_field_identities(self):
        i = GaussianRational(0, 1)
        assert i * i == Fraction(-1)
        z = GaussianRational(Fraction(1, 2), Fraction(-3, 4))
        assert z * z.conjugate() == z.norm() == Fraction(13, 16)
        assert (z / z) == Fraction(1)
        assert z + (-z) == 0 and not (z - z)

    def test_division_exact(self):
        a = GaussianRational(1, 2)
        b = GaussianRational(3, -1)
        assert (a / b) * b == a

    def test_pow(self):
        i = GaussianRational(0, 1)
        assert i ** 4 == 1 and i ** -1 == -i

    @given(st.tuples(rationals, rationals), st.tuples(rationals, rationals))
    @settings(max_examples=60, deadline=None)
    def test_ring_axioms(self, za, zb):
        a = GaussianRational(*za)
        b = GaussianRational(*zb)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (a + b) == a * a + a * b

    def test_parts_stay_canonical(self):
        z = GaussianRational(Fraction(2, 4), Fraction(-6, 9))
        assert z.re == Fraction(1, 2) and z.re.denominator == 2
        assert z.im == Fraction(-2, 3) and z.im.denominator == 3


class TestLaurent:
    def test_symbol_arithmetic(self):
        t = LaurentFrac.symbol("t")
        assert t * (1 / t) == 1
        assert (t + 1) * (t - 1) == t * t - 1
        assert t ** -2 * t ** 2 == 1

    def test_exact_division_reduces(self):
        t = LaurentFrac.symbol("t")
        expr = (t ** 2 - 1) / (t - 1)
        assert expr == t + 1
        assert expr.den == LaurentPoly.const(1)

    def test_monomial_denominator_folds(self):
        t = LaurentFrac.symbol("t")
        s = LaurentFrac.symbol("s")
        expr = (t * t + s) / (t * s)
        # monomial denominator folded into a Laurent numerator
        assert expr.den == LaurentPoly.const(1)
        assert expr == t / s + 1 / t

    def test_denominator_sign_and_content(self):
        t = LaurentFrac.symbol("t")
        f = LaurentFrac(LaurentPoly.const(2),
                        LaurentPoly.symbol("t") * (-2) + LaurentPoly.const(-4))
        # den normalized primitive with positive leading coefficient
        assert f.den.lead_coeff() > 0
        assert f.den.content() == 1
        assert f * (t + 2) == -1

    def test_cross_multiplication_equality(self):
        t = LaurentFrac.symbol("t")
        a = (t * t - 1) / (t + 1)
        b = t - 1
        assert a == b

    def test_evaluate_matches_rational_route(self):
        t = LaurentFrac.symbol("t")
        s = LaurentFrac.symbol("s")
        expr = (t ** 2 - s) / (t * s) + 1 / (t - s)
        for tv, sv in [(Fraction(2), Fraction(3)), (Fraction(-1, 2), Fraction(5))]:
            direct = (tv ** 2 - sv) / (tv * sv) + 1 / (tv - sv)
            assert expr.evaluate({"t": tv, "s": sv}) == direct

    def test_evaluate_rejects_vanishing_denominator(self):
        t = LaurentFrac.symbol("t")
        with pytest.raises(ZeroDivisionError):
            (1 / (t - 1)).evaluate({"t": Fraction(1)})

    @given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2),
                              st.integers(-4, 4)), min_size=1, max_size=4),
           st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2),
                              st.integers(-4, 4)), min_size=1, max_size=4))
    @settings(max_examples=100, deadline=None)
    def test_product_division_round_trip(self, pterms, qterms):
        # (p*q)/q reduces back to p for random small polynomials
        def build(terms):
            out = LaurentPoly()
            for et, es, c in terms:
                if c:
                    out = out + LaurentPoly({_mk_key(et, es): Fraction(c)})
            return out

        p = build(pterms)
        q = build(qterms)
        if not q:
            return
        prod = LaurentFrac(p * q, LaurentPoly.const(1))
        quotient = prod / LaurentFrac(q, LaurentPoly.const(1))
        assert quotient == LaurentFrac(p, LaurentPoly.const(1))
        if p:
            # exact division must collapse the denominator entirely
            assert quotient.den == LaurentPoly.const(1)

    @given(nonzero_rationals, nonzero_rationals, nonzero_rationals)
    @settings(max_examples=40, deadline=None)
    def test_canonical_after_mixed_ops(self, a, b, c):
        t = LaurentFrac.symbol("t")
        expr = (a * t + b) / (c * t) - (t ** -1) * (b / c) + t / t
        assert expr.is_canonical()
        # value check at a sample point
        pt = Fraction(7, 3)
        assert expr.evaluate({"t": pt}) == (a * pt + b) / (c * pt) - b / (c * pt) + 1


def _mk_key(et, es):
    key = []
    if et:
        key.append(("t", et))
    if es:
        key.append(("s", es))
    return tuple(key)


class TestParsing:
    @pytest.mark.parametrize("text,value", [
        ("3", Fraction(3)),
        ("-5/7", Fraction(-5, 7)),
        ("1/2+3/4 i", GaussianRational(Fraction(1, 2), Fraction(3, 4))),
        ("1/2-3/4 i", GaussianRational(Fraction(1, 2), Fraction(-3, 4))),
        ("-2 i", GaussianRational(0, -2)),
        ("i", GaussianRational(0, 1)),
    ])
    def test_parse(self, text, value):
        assert parse_scalar(text) == value

    def test_symbol_parse(self):
        v = parse_scalar("t1")
        assert isinstance(v, LaurentFrac)
        assert v == LaurentFrac.symbol("t1")

    @pytest.mark.parametrize("text", ["", "2//3", "1+2j", "t-1"])
    def test_rejects_garbage(self, text):
        with pytest.raises(ScalarError):
            parse_scalar(text)

    @given(rationals)
    @settings(max_examples=40, deadline=None)
    def test_rational_round_trip(self, q):
        assert parse_scalar(format_scalar(q)) == q

    @given(rationals, rationals)
    @settings(max_examples=40, deadline=None)
    def test_gaussian_round_trip(self, re, im):
        z = GaussianRational(re, im)
        assert parse_scalar(format_scalar(z)) == z


class TestModes:
    def test_mode_of(self):
        assert mode_of(Fraction(1)) == "rational"
        assert mode_of(GaussianRational(1)) == "gaussian"
        assert mode_of(LaurentFrac.symbol("t")) == "laurent"

    def test_join_rejects_gaussian_laurent(self):
        with pytest.raises(ScalarError):
            join_mode(["gaussian", "laurent"])
