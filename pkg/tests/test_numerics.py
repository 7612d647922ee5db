"""BigFixed construction, truncation semantics, arithmetic, rendering."""

import random
import threading
from decimal import getcontext

import pytest

from fixpi import BigFixed, NumberParseError


def tdiv(p, q):
    # integer division truncated toward zero, the model for every op here
    sign = -1 if (p < 0) != (q < 0) else 1
    return sign * (abs(p) // abs(q))


class TestParse:
    def test_integer_pads_to_grid(self):
        x = BigFixed.parse("3", 5)
        assert x.mantissa == 300000
        assert x.frac_digits == 5

    def test_seventeen_fractional_digit_literal(self):
        x = BigFixed.parse("3.14159265358979324", 18)
        assert x.mantissa == 3141592653589793240
        assert x.frac_digits == 18

    def test_scientific_notation(self):
        x = BigFixed.parse("1.2488e-100", 105)
        assert x.mantissa == 124880
        assert x.frac_digits == 105

    def test_positive_exponent(self):
        assert BigFixed.parse("1.5e2", 1) == BigFixed(1500, 1)

    def test_truncates_toward_zero(self):
        assert BigFixed.parse("0.999999", 3).mantissa == 999
        assert BigFixed.parse("-0.999999", 3).mantissa == -999

    def test_explicit_signs(self):
        assert BigFixed.parse("+2.5", 1) == BigFixed(25, 1)
        assert BigFixed.parse("-2.5", 1) == BigFixed(-25, 1)

    @pytest.mark.parametrize(
        "text,position",
        [
            ("3.14.15", 4),
            ("", 0),
            ("abc", 0),
            ("1.2e", 4),
            ("1.", 2),
            (".5", 0),
            ("1,5", 1),
            ("1e+", 3),
            ("--1", 1),
            ("3 ", 1),
        ],
    )
    def test_malformed_numeral_positions(self, text, position):
        with pytest.raises(NumberParseError) as err:
            BigFixed.parse(text, 10)
        assert err.value.position == position

    def test_parse_needs_positive_precision(self):
        with pytest.raises(ValueError):
            BigFixed.parse("3", 0)


class TestRounding:
    def test_round_to_truncates(self):
        x = BigFixed.parse("3.14159", 5)
        assert x.round_to(2) == BigFixed(314, 2)
        assert x.round_to(2).frac_digits == 2

    def test_round_to_negative_toward_zero(self):
        assert BigFixed.parse("-1.99", 2).round_to(1) == BigFixed(-19, 1)

    def test_round_to_grows_exactly(self):
        x = BigFixed.parse("-2.71828", 5)
        grown = x.round_to(9)
        assert grown == x
        assert grown.frac_digits == 9

    def test_round_to_idempotent(self):
        x = BigFixed.parse("2.718281828", 9)
        once = x.round_to(4)
        assert once.round_to(4) == once

    def test_round_to_significant_nearest(self):
        x = BigFixed.parse("3.14159265", 8)
        assert x.round_to_significant(5) == BigFixed.parse("3.1416", 4)

    def test_round_to_significant_carry(self):
        assert BigFixed.parse("9.9999", 4).round_to_significant(3) == BigFixed(10, 0)

    def test_round_to_significant_ties_to_even(self):
        assert BigFixed.parse("1.25", 2).round_to_significant(2) == BigFixed(12, 1)
        assert BigFixed.parse("1.35", 2).round_to_significant(2) == BigFixed(14, 1)

    def test_round_to_significant_integer_scale(self):
        assert BigFixed(987, 0).round_to_significant(1) == BigFixed(1000, 0)

    def test_round_to_significant_zero(self):
        z = BigFixed(0, 7)
        assert z.round_to_significant(5) == z


class TestArithmetic:
    def test_add_alignment(self):
        a = BigFixed.parse("1.25", 2)
        b = BigFixed.parse("0.005", 3)
        total = a + b
        assert total == BigFixed(1255, 3)
        assert total.frac_digits == 3

    def test_sub_is_exact(self):
        a = BigFixed.parse("1", 1000)
        b = BigFixed(1, 1000)
        assert (a - b).mantissa == 10**1000 - 1

    def test_int_operands(self):
        assert BigFixed.parse("2.5", 1) + 1 == BigFixed(35, 1)
        assert 4 - BigFixed.parse("0.5", 1) == BigFixed(35, 1)

    def test_neg_abs(self):
        x = BigFixed.parse("-2.5", 1)
        assert -x == BigFixed(25, 1)
        assert abs(x) == BigFixed(25, 1)
        assert abs(-x) == BigFixed(25, 1)

    def test_mul_int_keeps_grid(self):
        x = BigFixed.parse("1.05", 2)
        y = x.mul_int(-3)
        assert y == BigFixed(-315, 2)
        assert y.frac_digits == 2

    def test_div_int_truncates_toward_zero(self):
        assert BigFixed(7, 0).div_int(2, 0) == BigFixed(3, 0)
        assert BigFixed(-7, 0).div_int(2, 0) == BigFixed(-3, 0)
        assert BigFixed(7, 0).div_int(-2, 0) == BigFixed(-3, 0)

    def test_div_int_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            BigFixed(1, 0).div_int(0, 5)

    def test_mul_example(self):
        a = BigFixed.parse("0.141120008059867222100744802808", 30)
        got = a.mul(a, 30)
        assert got == BigFixed.parse("0.019914856674816989727173851038", 30)

    def test_random_ops_match_integer_model(self):
        rng = random.Random(1729)
        for _ in range(400):
            da, db = rng.randrange(0, 12), rng.randrange(0, 12)
            ma = rng.randrange(-(10**15), 10**15)
            mb = rng.randrange(-(10**15), 10**15)
            a, b = BigFixed(ma, da), BigFixed(mb, db)
            f = max(da, db)
            assert (a + b).mantissa == ma * 10 ** (f - da) + mb * 10 ** (f - db)
            assert (a - b).mantissa == ma * 10 ** (f - da) - mb * 10 ** (f - db)
            d = rng.randrange(1, 20)
            assert a.mul(b, d).mantissa == tdiv(ma * mb * 10**d, 10 ** (da + db))
            m = rng.randrange(1, 1000) * rng.choice((1, -1))
            assert a.div_int(m, d).mantissa == tdiv(ma * 10**d, m * 10**da)

    def test_zero_sign_normalized(self):
        z = BigFixed.parse("-0.0001", 2)
        assert z.positional_string() == "0.00"
        assert BigFixed(-1, 3).mul_int(0).positional_string() == "0.000"


class TestMagnitudeExponent:
    def test_examples(self):
        assert BigFixed.parse("3.14", 2).magnitude_exponent() == 0
        assert BigFixed.parse("9.0827e-34", 40).magnitude_exponent() == -34
        assert BigFixed.parse("-451", 1).magnitude_exponent() == 2
        assert BigFixed.parse("0.09", 3).magnitude_exponent() == -2

    def test_zero_has_none(self):
        assert BigFixed(0, 5).magnitude_exponent() is None

    def test_matches_digit_length(self):
        rng = random.Random(4)
        for _ in range(200):
            m = rng.randrange(1, 10**18)
            d = rng.randrange(0, 25)
            x = BigFixed(m, d)
            assert x.magnitude_exponent() == len(str(m)) - 1 - d


class TestRendering:
    def test_positional_within_range(self):
        pi40 = BigFixed.parse("3.1415926535897932384626433832795028841971", 40)
        assert pi40.to_decimal_string(40) == (
            "3.141592653589793238462643383279502884197"
        )

    def test_scientific_for_small(self):
        x = BigFixed.parse("0.0004726455123", 13)
        assert x.to_decimal_string(4) == "4.726e-4"

    def test_negative_pads(self):
        assert BigFixed(-1, 0).to_decimal_string(3) == "-1.00"

    def test_scientific_for_large(self):
        assert BigFixed(12345, 1).to_decimal_string(2) == "1.2e3"

    def test_positional_just_below_one(self):
        assert BigFixed.parse("0.001234", 6).to_decimal_string(2) == "0.0012"

    def test_zero(self):
        assert BigFixed(0, 9).to_decimal_string(5) == "0"
        assert BigFixed(0, 9).significand_string(5) == "0"

    def test_significand_string_pads(self):
        x = BigFixed.parse("5.6995", 4)
        assert x.significand_string(8) == "5.6995000"

    def test_significand_string_truncates(self):
        x = BigFixed.parse("1.2488022806", 10)
        assert x.significand_string(5) == "1.2488"

    def test_positional_string_round_trip(self):
        rng = random.Random(77)
        for _ in range(200):
            m = rng.randrange(-(10**20), 10**20)
            d = rng.randrange(0, 30)
            x = BigFixed(m, d)
            back = BigFixed.parse(x.positional_string(), max(d, 1))
            assert back == x


class TestComparison:
    def test_value_equality_across_grids(self):
        assert BigFixed(300, 2) == BigFixed(3, 0)
        assert hash(BigFixed(300, 2)) == hash(BigFixed(3, 0))

    def test_ordering(self):
        a = BigFixed.parse("2.71", 2)
        b = BigFixed.parse("3.14", 2)
        assert a < b <= b and b > a >= a
        assert a != b

    def test_int_comparison(self):
        assert BigFixed.parse("4.0", 3) == 4
        assert BigFixed.parse("3.9", 1) < 4

    def test_other_types_unsupported(self):
        assert BigFixed(1, 0) != "1"
        with pytest.raises(TypeError):
            BigFixed(1, 0) < "2"  # noqa: B015


class TestThreadIsolation:
    def test_hostile_thread_context_has_no_effect(self):
        # results must not depend on the thread-local decimal context
        results = {}

        def worker():
            getcontext().prec = 5
            a = BigFixed.parse("1.23456789", 8)
            results["square"] = a.mul(a, 16).mantissa
            results["sum"] = (a + a).mantissa

        thread = threading.Thread(target=worker)
        thread.start()
        thread.join()
        b = BigFixed.parse("1.23456789", 8)
        assert results["square"] == b.mul(b, 16).mantissa
        assert results["sum"] == (b + b).mantissa
