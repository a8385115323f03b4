from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from errors import (
    DomainError,
    NonExactDivision,
    NonInvertibleSeries,
    ParseError,
    TruncationExceeded,
    ZeroAtNegativeExponent,
)
from exact_arith import (
    ONE,
    Q,
    ZERO,
    LaurentPoly,
    arith_law_check,
    expm1_over_t,
    lp_const,
    lp_deserialize,
    lp_eval_complex,
    lp_eval_rat,
    lp_exact_div,
    lp_monomial,
    lp_mul,
    lp_pow,
    lp_serialize,
    lp_to_str,
    ps_from_coeffs,
    ps_inverse,
    ps_mul,
    ps_one,
    ps_pow,
    rat_parse,
    rat_to_str,
    to_rat,
)

coefficients = st.fractions(min_value=-8, max_value=8, max_denominator=6)
laurent = st.dictionaries(st.integers(-6, 6), coefficients, max_size=5).map(LaurentPoly)
nonzero_laurent = laurent.filter(lambda p: not p.is_zero)
points = st.sampled_from([Fraction(-1), Fraction(1), Fraction(2, 3), Fraction(-1, 2)])


def _naive_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    acc: dict[int, int] = {}
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            acc[ea + eb] = acc.get(ea + eb, 0) + ca * cb
    return LaurentPoly(acc)


big_int_poly = st.builds(
    lambda cs, off: LaurentPoly({off + i: c for i, c in enumerate(cs)}),
    st.lists(st.integers(-(10**30), 10**30), min_size=20, max_size=40),
    st.integers(-50, 50),
)


class TestRationals:
    def test_fraction_with_unit_denominator_is_int(self):
        assert type(to_rat(Fraction(4, 2))) is int
        assert LaurentPoly({0: Fraction(4, 2)}).terms == ((0, 2),)

    def test_float_refused(self):
        with pytest.raises(DomainError):
            to_rat(0.5)

    def test_text_forms(self):
        assert rat_parse("-1/2") == Fraction(-1, 2)
        assert rat_parse(" 3 ") == 3
        assert rat_to_str(Fraction(6, 4)) == "3/2"
        assert rat_to_str(7) == "7"

    @pytest.mark.parametrize("bad", ["abc", "1/0", ""])
    def test_parse_errors(self, bad):
        with pytest.raises(ParseError):
            rat_parse(bad)


class TestLaurentExamples:
    def test_add_cancels(self):
        a = LaurentPoly({-1: 1, 0: 1})
        b = LaurentPoly({-1: -1, 0: 1})
        assert a + b == lp_const(2)
        assert a + ZERO == a
        assert (a - a).is_zero

    def test_mul(self):
        assert (ONE - Q) * (ONE + Q) == ONE - lp_monomial(2)
        assert lp_monomial(-2) * lp_monomial(3) == Q
        assert lp_mul(ONE + Q, LaurentPoly({0: 1, 1: 1, 2: 1})) == LaurentPoly({0: 1, 1: 2, 2: 2, 3: 1})

    def test_pow(self):
        assert lp_pow(ONE + Q, 0) == ONE
        assert lp_pow(ONE + Q, 2) == LaurentPoly({0: 1, 1: 2, 2: 1})
        with pytest.raises(DomainError):
            lp_pow(Q, -1)

    def test_exact_division(self):
        assert lp_exact_div(ONE - lp_monomial(2), ONE - Q) == ONE + Q
        assert lp_exact_div(LaurentPoly({1: 2, 2: 1}), Q) == lp_const(2) + Q
        assert lp_exact_div(ZERO, ONE + Q) == ZERO

    def test_non_exact_division(self):
        with pytest.raises(NonExactDivision):
            lp_exact_div(ONE + Q, ONE - Q)

    def test_division_by_zero_polynomial(self):
        with pytest.raises(DomainError):
            lp_exact_div(ONE, ZERO)

    def test_bounds(self):
        p = LaurentPoly({-3: 1, 2: 5})
        assert (p.min_exp, p.max_exp) == (-3, 2)
        assert not p.is_polynomial
        assert p.coeff(2) == 5 and p.coeff(0) == 0

    def test_equality_with_scalars(self):
        assert lp_const(3) == 3
        assert ZERO == 0
        assert lp_const(Fraction(1, 2)) == Fraction(1, 2)


class TestEvaluation:
    def test_rational_points(self):
        assert lp_eval_rat(LaurentPoly({1: 2, 2: 1}), -1) == -1
        assert lp_eval_rat(LaurentPoly({-3: 1, -2: 1}), 1) == 2
        assert lp_eval_rat(lp_monomial(6), -1) == 1
        assert lp_eval_rat(lp_monomial(-1), Fraction(1, 2)) == 2

    def test_zero_with_negative_exponent(self):
        with pytest.raises(ZeroAtNegativeExponent):
            lp_eval_rat(lp_monomial(-1), 0)
        with pytest.raises(ZeroAtNegativeExponent):
            lp_eval_complex(lp_monomial(-2), 0)

    def test_zero_polynomial_exponents(self):
        assert lp_eval_rat(ONE + Q, 0) == 1

    def test_complex(self):
        assert lp_eval_complex(ONE + Q, 0.5) == pytest.approx(1.5)
        assert lp_eval_complex(lp_monomial(2), 1j) == pytest.approx(-1)
        assert lp_eval_complex(ZERO, 3 + 2j) == 0


class TestSerialization:
    def test_serialize(self):
        p = LaurentPoly({1: 2, 2: 1})
        assert lp_serialize(p) == [[1, "2"], [2, "1"]]
        assert lp_deserialize([[1, "2"], [2, "1"]]) == p
        assert lp_serialize(lp_const(Fraction(-1, 3))) == [[0, "-1/3"]]
        assert lp_serialize(ZERO) == []

    @pytest.mark.parametrize(
        "bad",
        [
            "q",
            [[1]],
            [["x", "1"]],
            [[1, "1"], [1, "2"]],
            [[1.0, "1"]],
            [[0, "1/0"]],
            [[0, 1.5]],
            [[0, None]],
            [[0, True]],
        ],
    )
    def test_deserialize_rejects(self, bad):
        with pytest.raises(ParseError):
            lp_deserialize(bad)

    def test_to_str(self):
        assert lp_to_str(LaurentPoly({1: 2, 2: 1})) == "2*q + q^2"
        assert lp_to_str(LaurentPoly({-3: -2, -2: -1})) == "-2*q^-3 - q^-2"
        assert lp_to_str(-lp_monomial(-1)) == "-q^-1"
        assert lp_to_str(ZERO) == "0"
        assert lp_to_str(LaurentPoly({0: Fraction(1, 2), 1: Fraction(3, 4)})) == "1/2 + (3/4)*q"


class TestRingLaws:
    @given(a=laurent, b=laurent, c=laurent)
    def test_associativity(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)

    @given(a=laurent, b=laurent, c=laurent)
    def test_distributivity(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(a=laurent, b=laurent)
    def test_commutativity(self, a, b):
        assert a + b == b + a
        assert a * b == b * a

    @given(a=laurent)
    def test_identities(self, a):
        assert a + ZERO == a
        assert a * ONE == a
        assert (a * ZERO).is_zero

    @given(a=laurent, b=nonzero_laurent)
    def test_exact_division_inverts_product(self, a, b):
        assert lp_exact_div(a * b, b) == a

    @given(a=laurent, b=laurent, q0=points)
    def test_evaluation_is_a_ring_morphism(self, a, b, q0):
        assert lp_eval_rat(a * b, q0) == lp_eval_rat(a, q0) * lp_eval_rat(b, q0)
        assert lp_eval_rat(a + b, q0) == lp_eval_rat(a, q0) + lp_eval_rat(b, q0)

    @given(a=big_int_poly, b=big_int_poly)
    def test_packed_product_matches_schoolbook(self, a, b):
        assert lp_mul(a, b) == _naive_mul(a, b)

    def test_arith_suite(self):
        report = arith_law_check(50, seed=1)
        assert report.passed
        assert report.checks_run >= 200


class TestPowerSeries:
    def test_pow_zero_is_one(self):
        s = expm1_over_t(6)
        assert ps_pow(s, 0) == ps_one(6)

    def test_square_of_expm1(self):
        # ((e^t - 1)/t)^2 = 1 + t + (7/12) t^2 + ...
        sq = ps_pow(expm1_over_t(6), 2)
        assert sq.coeff(0) == 1
        assert sq.coeff(1) == 1
        assert sq.coeff(2) == Fraction(7, 12)

    def test_inverse(self):
        a = expm1_over_t(10)
        inv = ps_inverse(a)
        assert inv.coeff(0) == 1
        assert inv.coeff(1) == Fraction(-1, 2)
        assert ps_mul(a, inv) == ps_one(10)

    @given(
        head=coefficients.filter(bool),
        tail=st.lists(coefficients, min_size=0, max_size=7),
    )
    def test_inverse_property(self, head, tail):
        a = ps_from_coeffs([head, *tail], 8)
        assert ps_mul(a, ps_inverse(a)) == ps_one(8)

    def test_non_invertible(self):
        with pytest.raises(NonInvertibleSeries):
            ps_inverse(ps_from_coeffs([0, 1], 4))

    def test_truncation(self):
        s = ps_one(4)
        with pytest.raises(TruncationExceeded):
            s.coeff(4)
        with pytest.raises(TruncationExceeded):
            ps_mul(ps_one(4), ps_one(5))
