"""Core arithmetic: construction, canonical form, precision tracking,
the ultrametric absolute value, and the text grammar."""

import random

import pytest

from congroup.errors import (
    InsufficientPrecision,
    MalformedInput,
    RingMismatch,
    SeriesSyntaxError,
)
from congroup.series import (
    EXACT,
    AbsValue,
    Modulus,
    abs_val,
    add,
    format_series,
    int_mul,
    make_series,
    negate,
    one_term,
    parse,
    ring_mul,
    shift,
    zero,
)

F2 = Modulus(2)
F3 = Modulus(3)
Z4 = Modulus(2, 2)
Z9 = Modulus(3, 2)


def rand_series(rng, ring, lo=-4, width=8, exact=False):
    start = rng.randrange(lo, lo + 4)
    n = rng.randrange(0, width)
    cs = [rng.randrange(ring.q) for _ in range(n)]
    if exact:
        return make_series(ring, start, cs)
    prec = start + n + rng.randrange(0, 3)
    return make_series(ring, start, cs, prec)


class TestModulus:
    def test_rejects_composite(self):
        with pytest.raises(MalformedInput):
            Modulus(6)

    def test_rejects_bad_exponent(self):
        with pytest.raises(MalformedInput):
            Modulus(3, 0)

    def test_q(self):
        assert Z9.q == 9 and F2.q == 2


class TestMakeSeries:
    def test_identity_construction(self):
        x = make_series(F2, 0, [1, 1], EXACT)
        assert (x.start, x.coeffs, x.prec) == (0, (1, 1), EXACT)
        assert format_series(x) == "1*t^0 + 1*t^1"

    def test_canonicalization_trims_leading_zero(self):
        x = make_series(F2, 0, [0, 1], 4)
        assert (x.start, x.prec) == (1, 4)
        assert x.coeffs == (1, 0, 0)  # window zero-filled through prec

    def test_reduction_mod_nine_then_trim(self):
        x = make_series(Z9, -1, [9, 4], 2)
        assert (x.start, x.coeffs, x.prec) == (0, (4, 0), 2)

    def test_malformed_prec(self):
        with pytest.raises(MalformedInput):
            make_series(F2, 0, [1, 1], 1)

    def test_exact_zero_convention(self):
        z = make_series(F3, 5, [0, 0], EXACT)
        assert (z.start, z.coeffs, z.prec) == (0, (), EXACT)
        assert z.is_exact_zero()

    def test_truncated_zero_keeps_prec(self):
        z = make_series(F3, 2, [0, 0], 4)
        assert (z.start, z.coeffs, z.prec) == (4, (), 4)
        assert z.is_zero() and not z.is_exact_zero()


class TestAdd:
    def test_identity(self):
        rng = random.Random(7)
        for _ in range(50):
            x = rand_series(rng, F3)
            assert add(x, zero(F3)) == x

    def test_mod_two_cancellation(self):
        x = parse(F2, "1*t^0 + 1*t^1")
        y = parse(F2, "1*t^1 + 1*t^2")
        assert add(x, y) == parse(F2, "1*t^0 + 1*t^2")

    def test_inverse(self):
        rng = random.Random(8)
        for _ in range(50):
            x = rand_series(rng, Z4)
            s = add(x, negate(x))
            assert s.is_zero()
            assert s.prec == x.prec

    def test_ring_mismatch(self):
        with pytest.raises(RingMismatch):
            add(zero(F2), zero(F3))


class TestIntMul:
    def test_mod_four(self):
        x = make_series(Z4, 0, [1, 3])
        assert int_mul(2, x) == make_series(Z4, 0, [2, 2])

    def test_ring_exponent_kills(self):
        rng = random.Random(9)
        for _ in range(30):
            x = rand_series(rng, Z9)
            y = int_mul(9, x)
            assert y.is_zero() and y.prec == x.prec

    def test_negate_zero(self):
        assert negate(zero(F2)) == zero(F2)

    def test_torsion_criterion(self):
        # p^k x = 0 iff every coefficient lies in p^(m-k) Z/p^m
        rng = random.Random(10)
        for _ in range(100):
            x = rand_series(rng, Z4, exact=True)
            k = rng.randrange(0, 3)
            killed = int_mul(2**k, x).is_exact_zero()
            divisible = all(c % 2 ** (2 - k) == 0 for _, c in x.support())
            assert killed == divisible


class TestShift:
    def test_monomial(self):
        assert shift(one_term(F2, 0), 1) == one_term(F2, 1)

    def test_identity_and_inverse(self):
        rng = random.Random(11)
        for _ in range(50):
            x = rand_series(rng, F3)
            assert shift(x, 0) == x
            assert shift(shift(x, 3), -3) == x

    def test_additive_automorphism(self):
        rng = random.Random(12)
        for _ in range(50):
            x, y = rand_series(rng, Z4), rand_series(rng, Z4)
            k = rng.randrange(-3, 4)
            assert shift(add(x, y), k) == add(shift(x, k), shift(y, k))


class TestRingMul:
    def test_unit(self):
        rng = random.Random(13)
        for _ in range(50):
            y = rand_series(rng, F3)
            assert ring_mul(one_term(F3, 0), y) == y

    def test_char_two_square(self):
        x = parse(F2, "1*t^0 + 1*t^1")
        assert ring_mul(x, x) == parse(F2, "1*t^0 + 1*t^2")

    def test_consistency_with_shift(self):
        rng = random.Random(14)
        for _ in range(50):
            x = rand_series(rng, Z4)
            assert ring_mul(one_term(Z4, 2), x) == shift(x, 2)

    def test_precision_rule(self):
        x = make_series(F2, 1, [1, 0, 1], 5)
        y = make_series(F2, -2, [1, 1], 1)
        z = ring_mul(x, y)
        assert z.prec == min(5 + (-2), 1 + 1)

    def test_exact_zero_annihilates(self):
        x = make_series(F2, 1, [1], 5)
        assert ring_mul(x, zero(F2)).is_exact_zero()

    def test_ring_axioms_at_shared_precision(self):
        rng = random.Random(19)
        for _ in range(150):
            ring = rng.choice([F2, Z4, Z9])
            x, y, z = (rand_series(rng, ring, exact=rng.random() < 0.4) for _ in range(3))
            assert ring_mul(x, y).agree(ring_mul(y, x))
            assert ring_mul(ring_mul(x, y), z).agree(ring_mul(x, ring_mul(y, z)))
            assert ring_mul(x, add(y, z)).agree(add(ring_mul(x, y), ring_mul(x, z)))


class TestAbsValue:
    def test_exact_value(self):
        x = parse(F3, "1*t^-2 + 1*t^0")
        v = abs_val(x)
        assert v.exact and v.valuation == -2 and v.value == 9

    def test_upper_bound(self):
        v = abs_val(zero(F3, 5))
        assert not v.exact and v.value == AbsValue(3, True, 5).value

    def test_exact_zero(self):
        v = abs_val(zero(F3))
        assert v.exact and v.value == 0

    def test_ultrametric_inequality_and_equality(self):
        rng = random.Random(15)
        for _ in range(200):
            x = rand_series(rng, F3, exact=True)
            y = rand_series(rng, F3, exact=True)
            vx, vy, vs = abs_val(x), abs_val(y), abs_val(add(x, y))
            assert vs.value <= max(vx.value, vy.value)
            if vy.value < vx.value:
                assert vs == vx


class TestPrecisionSoundness:
    """Extending inputs beyond prec never rewrites known output coefficients."""

    @staticmethod
    def extend(rng, x):
        if x.is_exact:
            return x
        extra = [rng.randrange(x.ring.q) for _ in range(3)]
        cs = list(x.coeffs) + extra
        lo = min(x.start, x.prec)
        return make_series(x.ring, lo, [x.coeff(i) for i in range(lo, x.prec)] + extra, x.prec + 3)

    def test_binary_ops(self):
        rng = random.Random(16)
        for _ in range(200):
            x, y = rand_series(rng, Z4), rand_series(rng, Z4)
            x2, y2 = self.extend(rng, x), self.extend(rng, y)
            for op in (add, ring_mul):
                before, after = op(x, y), op(x2, y2)
                assert before.agree(after)
                if not before.is_exact:
                    bound = before.prec
                    lo = min(before.start, after.start, bound)
                    assert all(before.coeff(i) == after.coeff(i) for i in range(lo, bound))

    def test_unary_ops(self):
        rng = random.Random(17)
        for _ in range(100):
            x = rand_series(rng, Z9)
            x2 = self.extend(rng, x)
            assert negate(x).agree(negate(x2))
            assert int_mul(3, x).agree(int_mul(3, x2))
            assert shift(x, 2).agree(shift(x2, 2))


class TestGrammar:
    def test_parse_window(self):
        x = parse(F2, "1*t^-1 + 1*t^2 + O(t^5)")
        assert (x.start, x.prec) == (-1, 5)
        assert [x.coeff(i) for i in range(-1, 5)] == [1, 0, 0, 1, 0, 0]

    def test_format_zero(self):
        assert format_series(zero(F2)) == "0"
        assert format_series(zero(F2, 5)) == "O(t^5)"

    def test_bare_power_term(self):
        assert parse(F2, "t^3") == one_term(F2, 3)

    def test_roundtrip_random(self):
        rng = random.Random(18)
        for _ in range(1000):
            ring = rng.choice([F2, F3, Z4, Z9])
            x = rand_series(rng, ring, exact=rng.random() < 0.5)
            assert parse(ring, format_series(x)) == x

    def test_syntax_errors_carry_position(self):
        for bad in ["", "1*t^", "t^2 + t^1", "t^2 + t^2", "5*t^0", "1*t^1 + O(t^1)", "O(t^2) + t^3"]:
            with pytest.raises(SeriesSyntaxError):
                parse(F3, bad)

    def test_coefficient_range_enforced(self):
        with pytest.raises(SeriesSyntaxError):
            parse(F2, "2*t^0")
        assert parse(Z4, "2*t^0") == make_series(Z4, 0, [2])


class TestCanonicalUniqueness:
    def test_equal_knowledge_equal_bits(self):
        a = make_series(Z4, -1, [0, 1, 2, 0], 3)
        b = make_series(Z4, 0, [1, 2], 3)
        assert a == b and hash(a) == hash(b)

    def test_prec_distinguishes(self):
        assert make_series(F2, 0, [1], 1) != make_series(F2, 0, [1], 2)
        assert make_series(F2, 0, [1], EXACT) != make_series(F2, 0, [1], 1)


class TestCoeffAccess:
    def test_unknown_raises(self):
        x = make_series(F2, 0, [1], 2)
        with pytest.raises(InsufficientPrecision):
            x.coeff(2)

    def test_exact_reads_everywhere(self):
        x = one_term(F2, 3)
        assert x.coeff(-10) == 0 and x.coeff(3) == 1 and x.coeff(100) == 0
