import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rotg_lab.hypot import (
    LAPACK,
    HypotVariant,
    correct_hypot,
    hypot,
    naive_scaled_hypot,
    weak_hypot,
)
from rotg_lab.oracle import reference_hypot, ulp_distance

ALL = [weak_hypot, naive_scaled_hypot, correct_hypot]
U = 2.0**-53

# 256-bit evaluations of sqrt(2) * 10^k rounded to binary64
SQRT2 = float.fromhex("0x1.6a09e667f3bcdp+0")
SQRT2_E300 = float.fromhex("0x1.0e4d50f99b211p+997")
SQRT2_EM300 = float.fromhex("0x1.e4e8d12762225p-997")

finite = st.floats(min_value=-1e300, max_value=1e300, allow_nan=False)
nonzero = finite.filter(lambda x: abs(x) > 1e-300)


def normal_pairs(n, seed):
    rng = random.Random(seed)
    return [(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(n)]


def is_power_of_two(x):
    m, _ = math.frexp(x)
    return m == 0.5


class TestLapackConstants:
    def test_powers_of_two(self):
        for x in (LAPACK.safmin, LAPACK.safmax, LAPACK.rtmin, LAPACK.rtmax):
            assert is_power_of_two(x)

    def test_relations(self):
        assert LAPACK.safmin * LAPACK.safmax == 1.0
        assert 1.0 / LAPACK.safmin == LAPACK.safmax
        assert LAPACK.rtmin < LAPACK.rtmax
        assert LAPACK.safmin == 2.0**-1022  # smallest normal

    def test_guarded_squares_stay_normal(self):
        lo = math.nextafter(LAPACK.rtmin, math.inf)
        hi = math.nextafter(LAPACK.rtmax, 0)
        assert lo * lo >= 2.0**-1022
        assert math.isfinite(hi * hi + hi * hi)


@pytest.mark.parametrize("h", ALL)
def test_pythagorean_triple(h):
    assert h(3.0, 4.0) == 5.0


@pytest.mark.parametrize("h", ALL)
def test_zero_leg(h):
    assert h(0.0, 7.0) == 7.0
    assert h(-7.0, 0.0) == 7.0


class TestWeak:
    def test_no_overflow_near_top(self):
        out = weak_hypot(1e300, 1e300)
        assert out == 1e300 * SQRT2
        assert ulp_distance(out, SQRT2_E300) <= 1

    def test_both_zero_is_nan(self):
        assert math.isnan(weak_hypot(0.0, 0.0))
        assert math.isnan(weak_hypot(0.0, math.nan))


class TestNaiveScaled:
    def test_tiny_not_flushed(self):
        assert naive_scaled_hypot(1e-300, 1e-300) == SQRT2_EM300

    def test_true_overflow(self):
        assert naive_scaled_hypot(1.7e308, 1.7e308) == math.inf

    def test_large_but_representable(self):
        # sqrt(2) * 1e308 is about 1.414e308, below the binary64 maximum
        assert naive_scaled_hypot(1e308, 1e308) == reference_hypot(1e308, 1e308)
        assert math.isfinite(naive_scaled_hypot(1e308, 1e308))

    def test_matches_unscaled_formula_in_range(self):
        for f, g in normal_pairs(2000, 5):
            assert naive_scaled_hypot(f, g) == math.sqrt(f * f + g * g)

    def test_extreme_ratio(self):
        assert naive_scaled_hypot(1e300, 1e-300) == 1e300
        assert naive_scaled_hypot(5e-324, 5e-324) == reference_hypot(5e-324, 5e-324)


class TestCorrect:
    def test_sqrt2(self):
        assert correct_hypot(1.0, 1.0) == SQRT2

    def test_extremes(self):
        assert correct_hypot(1e-300, 1e-300) == SQRT2_EM300
        assert correct_hypot(1.7e308, 1.7e308) == math.inf
        assert correct_hypot(5e-324, 0.0) == 5e-324
        assert correct_hypot(0.0, -0.0) == 0.0

    def test_matches_oracle_sample(self):
        for f, g in normal_pairs(20000, 6):
            assert correct_hypot(f, g) == reference_hypot(f, g)

    @given(nonzero, nonzero)
    def test_matches_oracle_wide_range(self, f, g):
        assert correct_hypot(f, g) == reference_hypot(f, g)


@pytest.mark.parametrize("variant", list(HypotVariant))
class TestProperties:
    @given(f=nonzero, g=nonzero)
    def test_symmetry(self, variant, f, g):
        h = hypot(f, g, variant)
        for a, b in ((g, f), (-f, g), (f, -g), (-g, -f)):
            assert hypot(a, b, variant) == h

    def test_power_of_two_scaling(self, variant):
        for f, g in normal_pairs(500, 7):
            base = hypot(f, g, variant)
            for k in range(-500, 501, 100):
                assert hypot(math.ldexp(f, k), math.ldexp(g, k), variant) == math.ldexp(base, k)

    @given(f=nonzero, g=nonzero)
    def test_bounds(self, variant, f, g):
        big = max(abs(f), abs(g))
        h = hypot(f, g, variant)
        assert big <= h <= math.sqrt(2) * big * (1 + 4 * U)

    def test_ulp_error_bounds(self, variant):
        limit = {"weak": 2, "naive": 1, "correct": 0}[variant.value]
        worst = max(
            ulp_distance(hypot(f, g, variant), reference_hypot(f, g))
            for f, g in normal_pairs(20000, 8)
        )
        assert worst <= limit


def test_accuracy_ordering():
    pairs = normal_pairs(20000, 9)
    refs = [reference_hypot(f, g) for f, g in pairs]
    exact = {
        v: sum(hypot(f, g, v) == r for (f, g), r in zip(pairs, refs)) for v in HypotVariant
    }
    assert exact[HypotVariant.CORRECT] >= exact[HypotVariant.NAIVE] >= exact[HypotVariant.WEAK]
