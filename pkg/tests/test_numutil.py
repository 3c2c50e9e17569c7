import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from zetalab.errors import ValidationError
from zetalab.numutil import (
    SmoothBump,
    arsinh,
    bump_eval,
    dist_nearest_int,
    divisor_sieve,
    sawtooth_psi,
)


class TestDivisorSieve:
    def test_small_values(self, divisors):
        assert divisors.d(1) == 1
        assert divisors.d(12) == 6
        assert divisors.d(36) == 9

    def test_primes_have_two_divisors(self, divisors):
        for p in (2, 3, 5, 7, 11, 101, 997, 9973):
            assert divisors.d(p) == 2

    def test_all_entries_at_least_one(self, divisors):
        assert int(divisors.values(1, divisors.limit).min()) >= 1

    def test_matches_trial_division(self, divisors):
        for n in (1, 2, 17, 48, 360, 1024, 5040, 9999):
            assert divisors.d(n) == oracles.divisor_count_trial(n)

    def test_multiplicative_on_coprime_pairs(self, divisors, rng):
        found = 0
        while found < 1000:
            a = int(rng.integers(1, 120))
            b = int(rng.integers(1, divisors.limit // max(a, 1) + 1))
            if a * b > divisors.limit or math.gcd(a, b) != 1:
                continue
            assert divisors.d(a * b) == divisors.d(a) * divisors.d(b)
            found += 1

    @pytest.mark.parametrize("x", [1, 10, 100, 1234, 10000])
    def test_hyperbola_partial_sums(self, divisors, x):
        direct = int(divisors.values(1, x).sum())
        assert direct == oracles.divisor_partial_sum_hyperbola(x)

    def test_rejects_out_of_range(self, divisors):
        with pytest.raises(ValidationError):
            divisors.d(0)
        with pytest.raises(ValidationError):
            divisors.d(divisors.limit + 1)


class TestArsinh:
    def test_zero(self):
        assert arsinh(0.0) == 0.0

    def test_closed_form_at_one(self):
        assert arsinh(1.0) == pytest.approx(math.log(1.0 + math.sqrt(2.0)), rel=1e-15)

    def test_odd_symmetry(self):
        assert arsinh(-0.37) == pytest.approx(-arsinh(0.37), rel=1e-15)

    @given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
    def test_sinh_roundtrip(self, x):
        back = math.sinh(arsinh(x))
        assert back == pytest.approx(x, rel=1e-12, abs=1e-12)

    def test_monotone(self):
        xs = np.linspace(-50.0, 50.0, 401)
        ys = arsinh(xs)
        assert np.all(np.diff(ys) > 0)


class TestBump:
    bump = SmoothBump(center=100.0, plateau_radius=8.0)

    def test_plateau_value(self):
        assert bump_eval(self.bump, 100.0) == 1.0
        assert bump_eval(self.bump, 100.0 + 8.0) == 1.0

    def test_support_edge(self):
        assert bump_eval(self.bump, 100.0 + 16.0) == 0.0
        assert bump_eval(self.bump, 100.0 - 16.0) == 0.0
        assert bump_eval(self.bump, 100.0 + 17.0) == 0.0

    def test_transition_matches_independent_formula(self):
        # at center + 1.5 G the right shoulder sits at u = 1/2
        val = bump_eval(self.bump, 100.0 + 1.5 * 8.0)
        assert 0.0 < val < 1.0
        assert val == pytest.approx(oracles.mollifier_transition(0.5), rel=1e-14)
        # a non-symmetric point of the same shoulder
        val = bump_eval(self.bump, 100.0 + 1.75 * 8.0)
        assert val == pytest.approx(oracles.mollifier_transition(0.25), rel=1e-13)

    def test_range_bounds(self):
        t = np.linspace(100.0 - 20.0, 100.0 + 20.0, 4001)
        vals = bump_eval(self.bump, t)
        assert np.all(vals >= 0.0)
        assert np.all(vals <= 1.0)

    def test_continuity_by_jump_scaling(self):
        # any admissible bump rises 0 -> 1 over a width-G shoulder, so on a
        # step-1e-4*G grid adjacent jumps are ~max|phi'| * step ~ 2e-4; what
        # certifies continuity is that refining the step shrinks the jump
        # linearly, which a genuine discontinuity would not do
        g = self.bump.plateau_radius
        lo, hi = self.bump.support
        for step_scale, cap in ((1e-4, 3e-4), (1e-5, 3e-5)):
            t = np.arange(lo - g, hi + g, step_scale * g)
            jumps = np.abs(np.diff(bump_eval(self.bump, t)))
            assert jumps.max() < cap
        coarse = np.abs(np.diff(bump_eval(self.bump, np.arange(lo - g, hi + g, 1e-4 * g)))).max()
        fine = np.abs(np.diff(bump_eval(self.bump, np.arange(lo - g, hi + g, 1e-5 * g)))).max()
        assert 8.0 < coarse / fine < 12.0

    def test_stitch_points_are_smooth(self):
        # at the four seams every derivative vanishes, so there the literal
        # sub-1e-6 jump criterion holds on the 1e-4*G grid
        c, g = self.bump.center, self.bump.plateau_radius
        h = 1e-4 * g
        for seam in (c - 2 * g, c - g, c + g, c + 2 * g):
            jump = abs(bump_eval(self.bump, seam + h) - bump_eval(self.bump, seam - h))
            assert jump < 1e-6

    def test_first_derivative_matches_finite_difference(self):
        c, g = self.bump.center, self.bump.plateau_radius
        h = 1e-4 * g
        for frac in (1.2, 1.4, 1.5, 1.6, 1.8, -1.2, -1.5, -1.8):
            t = c + frac * g
            fd = (bump_eval(self.bump, t + h) - bump_eval(self.bump, t - h)) / (2 * h)
            an = bump_eval(self.bump, t, order=1)
            assert an == pytest.approx(fd, rel=1e-5)

    def test_derivative_on_plateau_and_outside_is_zero(self):
        assert bump_eval(self.bump, 100.0, order=1) == 0.0
        assert bump_eval(self.bump, 100.0 + 17.0, order=2) == 0.0

    def test_derivative_constants_scale_invariant(self):
        # sup|phi^(j)| * G^j depends only on the transition shape, so it
        # must agree across G to roundoff; this pins the C_j constants
        def c_j(g, order):
            bump = SmoothBump(center=0.0, plateau_radius=g)
            t = np.linspace(g, 2.0 * g, 3001)[1:-1]
            return np.abs(bump_eval(bump, t, order=order)).max() * g**order

        for order in (1, 2, 3, 4):
            ref = c_j(5.0, order)
            for g in (20.0, 80.0):
                assert c_j(g, order) == pytest.approx(ref, rel=1e-9)

    def test_rejects_bad_orders(self):
        with pytest.raises(ValidationError):
            bump_eval(self.bump, 100.0, order=5)
        with pytest.raises(ValidationError):
            bump_eval(self.bump, 100.0, order=-1)

    def test_rejects_bad_radius(self):
        with pytest.raises(ValidationError):
            SmoothBump(center=0.0, plateau_radius=0.0)


class TestSawtooth:
    def test_quarter(self):
        res = sawtooth_psi(0.25, 50)
        assert res.exact == -0.25
        assert not res.at_integer

    def test_half_point(self):
        res = sawtooth_psi(0.5, 1001)
        assert res.exact == 0.0
        assert abs(res.fourier - 0.0) <= res.error_bound

    def test_tenth_with_large_n(self):
        res = sawtooth_psi(0.1, 10**4)
        assert abs(res.exact - res.fourier) <= res.error_bound

    def test_integer_flag(self):
        res = sawtooth_psi(3.0, 100)
        assert res.at_integer
        assert res.exact == -0.5

    def test_bound_on_random_sample(self, rng):
        xs = rng.uniform(-50.0, 50.0, size=10**5)
        ns = rng.integers(3, 60, size=10**5)
        for x, n in zip(xs, ns):
            res = sawtooth_psi(float(x), int(n))
            if res.at_integer:
                continue
            assert abs(res.exact - res.fourier) <= res.error_bound

    def test_rejects_tiny_n(self):
        with pytest.raises(ValidationError):
            sawtooth_psi(0.3, 2)


class TestDistNearestInt:
    def test_examples(self):
        assert dist_nearest_int(2.3) == pytest.approx(0.3, abs=1e-12)
        assert dist_nearest_int(2.5) == pytest.approx(0.5, abs=1e-12)
        assert dist_nearest_int(-0.2) == pytest.approx(0.2, abs=1e-12)

    @given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
    def test_range_and_symmetry(self, x):
        d = dist_nearest_int(x)
        assert 0.0 <= d <= 0.5
        assert dist_nearest_int(-x) == pytest.approx(d, abs=1e-9)
