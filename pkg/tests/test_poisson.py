"""Poisson summation, Dirichlet mean squares, saddles, stationary phase.

The chain tested here: the summation identity on smooth compactly
supported test functions, the smoothed mean square of short Dirichlet
polynomials, the saddle point of F(x) = t log(1 + ell/x) + 2 pi m x,
stationary-phase evaluation against direct oscillatory quadrature, and
the end-to-end comparison of saddle-point cells against the divisor
series they are supposed to reproduce.
"""

import math

import numpy as np
import pytest

import oracles
from zetalab.errors import PrecisionError, ValidationError
from zetalab.experiments import BUILTIN_TEST_FUNCTIONS
from zetalab.poisson import (
    OscIntegralSpec,
    TestFunction,
    dirichlet_poly_meansq,
    pipeline_compare,
    poisson_check,
    saddle_point,
    smoothing_gap,
    stationary_phase_eval,
)

TestFunction.__test__ = False  # keep pytest from collecting the dataclass


class TestPoissonCheck:
    def test_no_integers_in_support(self):
        f = TestFunction("bump", center=0.5, width=0.15)  # support (0.2, 0.8)
        assert poisson_check(f, n_max=200).lhs == 0.0
        tails = [abs(poisson_check(f, n_max=nm).rhs) for nm in (50, 200, 800)]
        assert tails[1] < tails[0] and tails[2] < tails[1]
        assert tails[2] <= 1e-12

    def test_single_lattice_point(self):
        f = TestFunction("bump", center=3.0, width=0.2)  # support (2.6, 3.4)
        chk = poisson_check(f, n_max=400)
        assert chk.lhs == 1.0  # 3 sits on the plateau
        assert abs(chk.rhs - chk.lhs) <= 1e-8

    def test_generic_bump(self):
        f = TestFunction("bump", center=5.0, width=2.0)  # support (1, 9)
        chk = poisson_check(f, n_max=10**4)
        # lattice sum: plateau 3..7 plus the two shoulder midpoints at 2, 8
        assert chk.lhs == pytest.approx(6.0, abs=1e-12)
        assert abs(chk.rhs - chk.lhs) <= 1e-8

    def test_gaussian_kind(self):
        f = TestFunction("gaussian", center=6.0, width=1.2)
        chk = poisson_check(f, n_max=10**4)
        assert abs(chk.rhs - chk.lhs) <= 1e-8
        assert chk.estimate >= 0.0 and math.isfinite(chk.estimate)

    def test_all_builtins(self):
        for name, f, n_max in BUILTIN_TEST_FUNCTIONS:
            chk = poisson_check(f, n_max=n_max, oversample=8)
            assert abs(chk.lhs - chk.rhs) <= 1e-8, name

    def test_rejections(self):
        with pytest.raises(ValidationError):
            TestFunction("triangle", center=5.0, width=1.0)
        with pytest.raises(ValidationError):
            TestFunction("bump", center=5.0, width=-1.0)
        with pytest.raises(ValidationError):
            TestFunction("bump", center=0.3, width=0.2)  # support crosses 0
        with pytest.raises(ValidationError):
            poisson_check(TestFunction("bump", center=5.0, width=1.0), n_max=0)


class TestDirichletPolyMeansq:
    def test_integer_singleton(self):
        got = dirichlet_poly_meansq(1e4, 8.0, 30.0, 30.0)
        mass = oracles.quad_window_mass(1e4, 8.0)
        assert got == pytest.approx(mass / 30.0, rel=1e-10)

    def test_two_term_closed_form(self):
        got = dirichlet_poly_meansq(1e4, 8.0, 29.0, 31.0)  # terms {30, 31}
        want = oracles.quad_two_term_meansq(1e4, 8.0, 30, 31)
        assert got == pytest.approx(want, rel=1e-8)

    def test_empty_range(self):
        assert dirichlet_poly_meansq(1e4, 8.0, 30.2, 30.8) == 0.0

    def test_diagonal_dominates(self):
        # total = diagonal + off-diagonal with the off-diagonal well below
        # the diagonal on a generic window
        terms = np.arange(21, 41, dtype=float)
        diag = oracles.quad_window_mass(1e4, 8.0) * float(np.sum(1.0 / terms))
        total = dirichlet_poly_meansq(1e4, 8.0, 20.0, 40.0)
        assert abs(total - diag) < 0.5 * diag

    def test_in_regime_off_diagonal_halves_under_g_doubling(self):
        # pairs whose frequency log(n/m) clears 2 pi / G sit in the
        # repeated-integration-by-parts regime; doubling G cuts their summed
        # magnitude well below half (measured ~0.14 here)
        g = 12.0
        omega_min = 2.0 * math.pi / g
        s1, pairs = oracles.cross_term_magnitudes(1e4, g, 40.0, 80.0, omega_min)
        s2, pairs2 = oracles.cross_term_magnitudes(1e4, 2 * g, 40.0, 80.0, omega_min)
        assert pairs == pairs2 and pairs >= 40
        assert s2 <= 0.5 * s1

    def test_geometry_rejections(self):
        with pytest.raises(ValidationError):
            dirichlet_poly_meansq(1e4, 8.0, 7.0, 9.0)  # N below G^1.05
        with pytest.raises(ValidationError):
            dirichlet_poly_meansq(1e4, 8.0, 150.0, 160.0)  # N above sqrt T
        with pytest.raises(ValidationError):
            dirichlet_poly_meansq(1e4, 8.0, 30.0, 70.0)  # N1 above 2N
        with pytest.raises(ValidationError):
            dirichlet_poly_meansq(1e4, 8.0, 30.5, 30.5)  # non-integer singleton


class TestSaddlePoint:
    def test_residual_at_example(self):
        spec = OscIntegralSpec(t=1e6, ell=2, m=3, big_n=300.0, n1=400.0, g=50.0)
        res = saddle_point(spec)
        assert abs(spec.f_prime(res.x0)) <= 1e-9 * abs(res.fpp_at_x0) * res.x0
        assert res.inside

    def test_against_highprec_root(self):
        spec = OscIntegralSpec(t=1e6, ell=2, m=3, big_n=300.0, n1=400.0, g=50.0)
        res = saddle_point(spec)
        assert abs(res.x0 - oracles.mp_saddle_x0(1e6, 2, 3)) <= 1e-8

    def test_asymptotic_ratio(self):
        spec = OscIntegralSpec(t=1e8, ell=1, m=1, big_n=3500.0, n1=4500.0, g=100.0)
        res = saddle_point(spec)
        assert 0.99 <= res.x0 / math.sqrt(1e8 / (2.0 * math.pi)) <= 1.01

    def test_second_derivative_scaling(self):
        # F'' at the saddle behaves like t ell / x0^3 up to the exact
        # asymptotic constant 2: F'' = t (2 x0 ell + ell^2) / (x0 (x0+ell))^2,
        # so F'' x0^3 / (2 t ell) -> 1 from below as x0/ell grows
        spec = OscIntegralSpec(t=1e8, ell=1, m=1, big_n=3500.0, n1=4500.0, g=100.0)
        res = saddle_point(spec)
        ratio = res.fpp_at_x0 * res.x0**3 / (2.0 * 1e8 * 1)
        assert 0.9 <= ratio <= 1.1
        spec_hi = OscIntegralSpec(t=1e10, ell=1, m=1, big_n=35000.0, n1=45000.0,
                                  g=1000.0)
        res_hi = saddle_point(spec_hi)
        ratio_hi = res_hi.fpp_at_x0 * res_hi.x0**3 / (2.0 * 1e10 * 1)
        assert abs(ratio_hi - 1.0) < abs(ratio - 1.0)

    def test_amplitude_and_phase_fields(self):
        spec = OscIntegralSpec(t=1e6, ell=2, m=3, big_n=300.0, n1=400.0, g=50.0)
        res = saddle_point(spec)
        assert res.amplitude == pytest.approx(
            math.sqrt(2.0 * math.pi / res.fpp_at_x0), rel=1e-14)
        assert res.phase == pytest.approx(res.f_at_x0 + math.pi / 4.0, rel=1e-14)

    def test_outside_plateau_flagged(self):
        # saddle of (1e6, 1, 16) sits near 99, far below the plateau
        spec = OscIntegralSpec(t=1e6, ell=1, m=16, big_n=350.0, n1=450.0, g=40.0)
        assert not saddle_point(spec).inside


def _well_separated_spec():
    # m chosen so the saddle lands at the window midpoint
    n_lo, n_hi, g = 350.0, 450.0, 40.0
    x_mid = (n_lo + n_hi) / 2.0
    m = round(1e6 / (2.0 * math.pi * x_mid * (x_mid + 1.0)))
    return OscIntegralSpec(t=1e6, ell=1, m=m, big_n=n_lo, n1=n_hi, g=g)


class TestStationaryPhaseEval:
    def test_well_separated_saddle(self):
        sp = stationary_phase_eval(_well_separated_spec())
        assert sp.saddle_inside and sp.saddle_in_support
        assert sp.rel_gap <= 0.05

    def test_far_saddle_nonstationary_decay(self):
        spec = OscIntegralSpec(t=1e6, ell=1, m=16, big_n=350.0, n1=450.0, g=40.0)
        sp = stationary_phase_eval(spec)
        assert sp.sp_value == 0.0j and not sp.saddle_in_support
        assert abs(sp.direct) <= 1e-6 * (spec.n1 - spec.big_n)

    def test_linearity_in_phi(self):
        spec = _well_separated_spec()
        one = stationary_phase_eval(spec)
        two = stationary_phase_eval(spec, phi_scale=2.0)
        assert two.sp_value == pytest.approx(2.0 * one.sp_value, rel=1e-14)
        assert two.direct == pytest.approx(2.0 * one.direct, rel=1e-14)

    def test_pipeline_kernel_weight(self):
        sp = stationary_phase_eval(_well_separated_spec(), weight="phi_over_x")
        assert sp.rel_gap <= 0.05

    def test_under_separated_saddle_rejected(self):
        spec = OscIntegralSpec(t=1e6, ell=1, m=1, big_n=395.0, n1=402.0, g=30.0)
        with pytest.raises(ValidationError):
            stationary_phase_eval(spec)

    def test_unknown_weight_rejected(self):
        with pytest.raises(ValidationError):
            stationary_phase_eval(_well_separated_spec(), weight="flat")


class TestSmoothingGap:
    def test_zero_gap_when_shoulders_miss_the_lattice(self):
        # shoulders of width 0.4 around half-integer edges contain no
        # integers, so the sharp and smoothed sums agree exactly
        sg = smoothing_gap(t=1e5, ell=1, big_n=200.5, n1=300.5, g=0.4)
        assert sg.exact == sg.smoothed
        assert sg.gap == 0.0

    def test_gap_within_scale(self):
        sg = smoothing_gap(t=1e5, ell=1, big_n=200.0, n1=300.0, g=20.0)
        assert sg.scale == pytest.approx(0.1)
        assert 0.0 < sg.gap <= sg.scale
        print(f"smoothing gap / (G/N): {sg.gap / sg.scale:.3f}")


class TestPipelineCompare:
    def test_no_admissible_windows(self):
        # G^1.05 already above sqrt(T): no dyadic window, empty cell set
        report = pipeline_compare(100.0, 15.0)
        assert report.scalars["n_cells"] == 0.0
        assert report.scalars["aggregate_cells"] == 0.0
        assert report.scalars["aggregate_series_adjusted"] == 0.0

    def test_single_cell_matches_series_term(self):
        report = pipeline_compare(2e4, 2e4 ** (1.0 / 3.0), k_max=1)
        assert report.scalars["n_cells"] == 1.0
        assert report.series["rel_gap"][0] <= 0.10

    def test_series_correlation(self):
        report = pipeline_compare(1e5, 1e5 ** (1.0 / 3.0), with_direct=False)
        assert report.scalars["n_k"] >= 5.0
        assert report.scalars["correlation"] >= 0.9

    def test_domain_rejections(self):
        with pytest.raises(ValidationError):
            pipeline_compare(50.0, 5.0)
        with pytest.raises(ValidationError):
            pipeline_compare(1e4, 500.0)


class TestTaylorReplacement:
    def test_per_term_relative_error(self, rng):
        # swapping (n + ell)^(-1/2) for n^(-1/2) costs at most ell/N
        # relative when N < n <= 2N
        for _ in range(300):
            big_n = float(rng.uniform(50.0, 500.0))
            n = float(rng.uniform(big_n, 2.0 * big_n))
            ell = int(rng.integers(1, 21))
            rel = abs((n + ell) ** -0.5 - n**-0.5) / n**-0.5
            assert rel <= ell / big_n
