"""Phase function, Taylor tail, and windowed divisor sums.

The phase f(t,k) = 2t arsinh sqrt(pi k/2t) + sqrt(2 pi k t + pi^2 k^2) - pi/4
drives every oscillatory sum in the package.  These tests pin its closed form,
its t-derivative, the fitted tail coefficients of the large-t expansion, and
the two windowed divisor-sum expressions against independent oracles.
"""

import dataclasses
import math

import numpy as np
import pytest

import oracles
from zetalab.errors import ValidationError
from zetalab.intervals import build_point_set, smoothed_sum
from zetalab.numutil import bump_eval, divisor_sieve
from zetalab.phase import (
    TAYLOR_A3,
    TAYLOR_A5,
    DivisorSumSpec,
    divisor_expression,
    essential_sum,
    f_phase,
    f_phase_dt,
    f_taylor,
    fit_tail_coefficients,
    k_limit,
    smoothed_main_term,
)

# Fitted once on a development grid of 24 single-window instances
# (T in [5e3, 5e4], G in [14, 35], three seeds each): the window integral
# minus its plateau main term tracks DIVISOR_EXPRESSION_MULTIPLE times the
# truncated divisor expression, and the residual stayed below
# 1.32 * G * T^0.05 on every instance.  The multiple itself is reported by
# the remainder test below but never asserted; only the residual budget is.
DIVISOR_EXPRESSION_MULTIPLE = -1.308204
REMAINDER_C = 2.0


class TestFPhase:
    def test_closed_form_at_2pi(self):
        # at t = 2*pi, k = 1 the radical collapses: arg of arsinh is 1/2 and
        # sqrt(4 pi^2 + pi^2) = pi sqrt 5, with arsinh(1/2) = log((1+sqrt 5)/2)
        want = (4.0 * math.pi * math.log((1.0 + math.sqrt(5.0)) / 2.0)
                + math.pi * math.sqrt(5.0) - math.pi / 4.0)
        got = f_phase(2.0 * math.pi, 1)
        assert got == pytest.approx(want, rel=1e-14)

    def test_cross_environment_value(self):
        got = f_phase(1e4, 3)
        want = oracles.mp_f_phase(1e4, 3)
        assert got == pytest.approx(want, rel=1e-10)

    def test_monotone_in_k(self):
        vals = [f_phase(1e3, k) for k in range(1, 102)]
        assert all(b > a for a, b in zip(vals, vals[1:]))


class TestFPhaseDt:
    def test_matches_stdlib_asinh(self):
        t, k = 123.0, 7
        want = 2.0 * math.asinh(math.sqrt(math.pi * k / (2.0 * t)))
        assert f_phase_dt(t, k) == pytest.approx(want, rel=1e-15)

    def test_vanishing_limit(self):
        # pi k / 2t -> 0 sends the derivative to 0 from above
        vals = [f_phase_dt(t, 1) for t in (1e3, 1e5, 1e7, 1e9, 1e11)]
        assert all(v > 0 for v in vals)
        assert all(b < a for a, b in zip(vals, vals[1:]))
        assert vals[-1] < 1e-5

    def test_finite_difference_at_example(self):
        t, k = 1e4, 10
        h = t * 1e-6
        fd = (f_phase(t + h, k) - f_phase(t - h, k)) / (2.0 * h)
        assert f_phase_dt(t, k) == pytest.approx(fd, rel=1e-5)

    def test_asymptotic_ratio(self):
        t, k = 1e6, 5
        ratio = f_phase_dt(t, k) / math.sqrt(2.0 * math.pi * k / t)
        assert 0.999 <= ratio <= 1.001

    def test_finite_difference_grid(self):
        for t in np.logspace(3, 6, 7):
            for k in (1, 10, 100, 1000):
                h = t * 1e-6
                fd = (f_phase(t + h, k) - f_phase(t - h, k)) / (2.0 * h)
                assert f_phase_dt(t, k) == pytest.approx(fd, rel=1e-5)


def _taylor_term(t: float, k: int, depth: int) -> float:
    # the summand added when going from depth-1 to depth, recovered through
    # the public partial sums
    return f_taylor(t, k, depth=depth) - f_taylor(t, k, depth=depth - 1)


class TestFTaylor:
    def test_three_term_error_bound(self):
        t, k = 1e6, 10
        gap = abs(f_phase(t, k) - f_taylor(t, k, depth=3))
        assert gap <= 2.0 * k**2.5 * t**-1.5

    def test_first_correction_halves_under_t_quadrupling(self):
        t, k = 2.5e5, 10
        ratio = _taylor_term(4.0 * t, k, 3) / _taylor_term(t, k, 3)
        assert ratio == pytest.approx(0.5, rel=1e-9)

    def test_a3_closed_form(self):
        assert TAYLOR_A3 == math.sqrt(2.0 * math.pi**3) / 6.0

    def test_a5_two_grid_stability(self):
        fit_default = fit_tail_coefficients()
        fit_disjoint = fit_tail_coefficients(
            k_values=(2, 3, 4, 5, 6, 7),
            t_over_k=(60.0, 90.0, 130.0, 180.0, 260.0, 380.0, 550.0),
        )
        assert abs(fit_default.a5 - fit_disjoint.a5) < 1e-6 * abs(fit_default.a5)
        assert fit_default.a5 == pytest.approx(TAYLOR_A5, rel=1e-9)

    def test_term_dominance_on_validity_window(self):
        # on k^(5/2) t^(-3/2) <= 1e-2 each correction term is at least
        # 5 times smaller than its predecessor
        for t in (1e3, 2e3, 5e3):
            k = int((1e-2 * t**1.5) ** 0.4)
            while k**2.5 * t**-1.5 > 1e-2:
                k -= 1
            assert k >= 2
            t3 = abs(_taylor_term(t, k, 3))
            t4 = abs(_taylor_term(t, k, 4))
            t5 = abs(_taylor_term(t, k, 5))
            assert t4 <= t3 / 5.0
            assert t5 <= t4 / 5.0

    def test_outside_validity_window_rejected(self):
        with pytest.raises(ValidationError):
            f_taylor(100.0, 100, depth=3)

    def test_bad_depth_rejected(self):
        with pytest.raises(ValidationError):
            f_taylor(1e5, 2, depth=1)
        with pytest.raises(ValidationError):
            f_taylor(1e5, 2, depth=6)


class TestDivisorExpression:
    def test_forced_empty_k_range(self, small_points):
        spec = DivisorSumSpec(big_t=1e4, g=20.0, k_max=0)
        assert divisor_expression(spec, small_points) == 0.0
        assert divisor_expression(spec, small_points, simplified=True) == 0.0

    def test_k_cap_enforced(self):
        with pytest.raises(ValidationError):
            DivisorSumSpec(big_t=1e4, g=20.0, k_max=10**7 + 1)

    def test_full_vs_simplified_gap(self):
        big_t = 1e4
        g = big_t ** (1.0 / 3.0)
        points = build_point_set(big_t, g, r_max=2, seed=2)
        spec = DivisorSumSpec(big_t=big_t, g=g)
        full = divisor_expression(spec, points, rel_tol=1e-7)
        simp = divisor_expression(spec, points, simplified=True, rel_tol=1e-7)
        assert abs(full - simp) <= 3.0 * (spec.k_max / big_t) * abs(full)

    def test_single_window_remainder_budget(self):
        # window integral = plateau main term + (multiple of) the divisor
        # expression + remainder; the multiple is fitted and reported, the
        # remainder is asserted against the frozen C * G * T^0.05 budget
        rows = []
        for big_t, g in ((5e3, 14.0), (5e3, 16.0), (1e4, 18.0), (1e4, 21.0),
                         (2e4, 22.0), (2e4, 25.0), (5e4, 30.0), (5e4, 35.0)):
            points = build_point_set(big_t, g, r_max=1, seed=5)
            osc = smoothed_sum(points, rel_tol=1e-8) - smoothed_main_term(points)
            spec = DivisorSumSpec(big_t=big_t, g=g)
            dx = divisor_expression(spec, points, rel_tol=1e-7)
            rows.append((big_t, g, osc, dx))
        refit = sum(o * d for _, _, o, d in rows) / sum(d * d for _, _, o, d in rows)
        print(f"divisor-expression multiple: refit {refit:+.4f}, "
              f"frozen {DIVISOR_EXPRESSION_MULTIPLE:+.4f}")
        for big_t, g, osc, dx in rows:
            resid = abs(osc - DIVISOR_EXPRESSION_MULTIPLE * dx)
            assert resid <= REMAINDER_C * g * big_t**0.05


class TestEssentialSum:
    def _single(self, big_t=1e4, g=18.0):
        points = build_point_set(big_t, g, r_max=1, seed=3)
        tau = points.centers[0] + 1.5 * g  # inside the transition shoulder
        return points, tau, k_limit(big_t, g)

    def test_plateau_center_weight_simplifies(self, divisors):
        points = build_point_set(1e4, 20.0, r_max=3, seed=2)
        got = essential_sum(points, tuple(points.centers))
        k_max = k_limit(points.big_t, points.g)
        manual = 0.0
        for c in points.centers:
            inner = math.fsum(divisors.d(k) * k**-0.25 * math.sin(f_phase(c, k))
                              for k in range(1, k_max + 1))
            manual += c**-0.25 * inner
        manual *= points.g
        assert got == pytest.approx(manual, rel=1e-12)

    def test_single_window_matches_loop_oracle(self):
        points, tau, k_max = self._single()
        got = essential_sum(points, (tau,))
        want = oracles.naive_essential_sum_single(
            points.big_t, points.g, points.centers[0], tau, k_max)
        assert got == pytest.approx(want, rel=1e-12)

    def test_negating_sines_negates_output(self):
        points, tau, k_max = self._single()
        got = essential_sum(points, (tau,))
        flipped = oracles.naive_essential_sum_single(
            points.big_t, points.g, points.centers[0], tau, k_max, sine_sign=-1.0)
        assert got == pytest.approx(-flipped, rel=1e-12)

    def test_order_swap_reassociation(self, divisors):
        points = build_point_set(2e4, 22.0, r_max=5, seed=4)
        tau = tuple(c + 0.8 * points.g for c in points.centers)
        got = essential_sum(points, tau)
        # k-outer accumulation of the identical terms
        k_max = k_limit(points.big_t, points.g)
        bumps = points.bumps()
        total = 0.0
        for k in range(1, k_max + 1):
            inner = math.fsum(
                bump_eval(b, tr) * tr**-0.25 * math.sin(f_phase(tr, k))
                for b, tr in zip(bumps, tau))
            total += divisors.d(k) * k**-0.25 * inner
        total *= points.g
        assert got == pytest.approx(total, rel=1e-10)

    def test_tau_outside_window_rejected(self):
        points, _, _ = self._single()
        with pytest.raises(ValidationError):
            essential_sum(points, (points.centers[0] + 2.5 * points.g,))


class TestWeightForms:
    def test_relative_gap_bounded_by_k_over_t(self, rng):
        # (1/4 + t/(2 pi k))^(-1/4) vs (t/(2 pi k))^(-1/4)
        for _ in range(500):
            t = 10.0 ** rng.uniform(3.0, 6.0)
            k = int(rng.integers(1, 1001))
            x = t / (2.0 * math.pi * k)
            full = (0.25 + x) ** -0.25
            simp = x**-0.25
            assert abs(full - simp) / simp <= k / t


class TestKLimit:
    def test_formula(self):
        assert k_limit(1e4, 20.0) == math.ceil(1e4**1.05 / 400.0)

    def test_monotonicity(self):
        assert k_limit(1e5, 20.0) > k_limit(1e4, 20.0)
        assert k_limit(1e4, 40.0) < k_limit(1e4, 20.0)

    def test_spec_auto_k_max(self):
        spec = DivisorSumSpec(big_t=1e4, g=20.0)
        assert spec.k_max == k_limit(1e4, 20.0)
        assert spec.k_max >= 1

    def test_spec_frozen(self):
        spec = DivisorSumSpec(big_t=1e4, g=20.0)
        with pytest.raises(dataclasses.FrozenInstanceError):
            spec.k_max = 5
