"""Tests for trigonometric polynomials, signals, and exact Fourier machinery."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trigdiff.basis import (
    TWO_PI,
    ExactSignal,
    SampledSignal,
    TrigPoly,
    fourier_coeffs_exact,
    fourier_coeffs_quadrature,
    l2_error_exact,
    l2_norm,
    l2_norm_sq,
    sobolev_norm_of_signal,
    sobolev_per_norm,
)

SQRT_PI = math.sqrt(math.pi)
SQRT_TWO_PI = math.sqrt(TWO_PI)


def trig_signal_from_poly(poly: TrigPoly) -> ExactSignal:
    sig = ExactSignal.constant(poly.c0 / SQRT_TWO_PI)
    for k in range(1, poly.degree + 1):
        sig = sig.plus_trig(poly.cos_coeffs[k - 1] / SQRT_PI, k, "cos")
        sig = sig.plus_trig(poly.sin_coeffs[k - 1] / SQRT_PI, k, "sin")
    return sig


class TestTrigPoly:
    def test_zero_eval(self):
        assert TrigPoly.zero(3).eval(1.234) == 0.0

    def test_constant_eval(self):
        poly = TrigPoly(SQRT_TWO_PI, np.zeros(0), np.zeros(0))
        assert poly.eval(1.0) == pytest.approx(1.0, abs=1e-15)

    def test_cos_eval_at_zero(self):
        poly = TrigPoly(0.0, np.array([SQRT_PI]), np.array([0.0]))
        assert poly.eval(0.0) == pytest.approx(1.0, abs=1e-15)

    def test_vector_round_trip(self):
        rng = np.random.default_rng(0)
        poly = TrigPoly(rng.normal(), rng.normal(size=4), rng.normal(size=4))
        back = TrigPoly.from_vector(poly.to_vector())
        assert back.c0 == poly.c0
        assert np.array_equal(back.cos_coeffs, poly.cos_coeffs)
        assert np.array_equal(back.sin_coeffs, poly.sin_coeffs)

    def test_mismatched_lengths_rejected(self):
        with pytest.raises(ValueError):
            TrigPoly(0.0, np.zeros(2), np.zeros(3))

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            TrigPoly(math.nan, np.zeros(1), np.zeros(1))

    def test_norm_is_parseval(self):
        poly = TrigPoly(3.0, np.array([4.0]), np.array([0.0]))
        assert poly.norm() == pytest.approx(5.0)


class TestFourierCoeffsExact:
    def test_constant_signal(self):
        coeffs = fourier_coeffs_exact(ExactSignal.constant(1.0), 2)
        assert coeffs.c0 == pytest.approx(SQRT_TWO_PI, rel=1e-14)
        assert np.max(np.abs(coeffs.cos_coeffs)) < 1e-14
        assert np.max(np.abs(coeffs.sin_coeffs)) < 1e-14

    def test_single_cos_term(self):
        sig = ExactSignal.zero().plus_trig(1.0, 1, "cos")
        coeffs = fourier_coeffs_exact(sig, 3)
        assert coeffs.cos_coeffs[0] == pytest.approx(SQRT_PI, rel=1e-15)
        assert coeffs.c0 == 0.0
        assert np.max(np.abs(coeffs.cos_coeffs[1:])) == 0.0

    def test_linear_ramp(self):
        # closed forms: int t dt / sqrt(2pi) = pi*sqrt(2pi); int t sin t dt = -2pi
        coeffs = fourier_coeffs_exact(ExactSignal.from_polynomial([0.0, 1.0]), 1)
        assert coeffs.c0 == pytest.approx(math.pi * SQRT_TWO_PI, rel=1e-14)
        assert coeffs.cos_coeffs[0] == pytest.approx(0.0, abs=1e-13)
        assert coeffs.sin_coeffs[0] == pytest.approx(-2.0 * SQRT_PI, rel=1e-14)

    def test_degree_cap_enforced(self):
        with pytest.raises(ValueError, match="degree"):
            ExactSignal.from_polynomial(np.ones(8))

    def test_projection_idempotent_on_catalog_piece(self):
        sig = ExactSignal.from_pieces([(0.0, math.pi, [math.pi, -1.0]),
                                       (math.pi, TWO_PI, [-math.pi, 1.0])])
        proj = fourier_coeffs_exact(sig, 16)
        again = fourier_coeffs_exact(trig_signal_from_poly(proj), 16)
        assert np.allclose(again.to_vector(), proj.to_vector(), rtol=0, atol=1e-13)

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.floats(-10, 10), min_size=2, max_size=9))
    def test_projection_idempotent_random(self, values):
        if len(values) % 2 == 0:
            values = values + [0.0]
        poly = TrigPoly.from_vector(np.array(values))
        proj = fourier_coeffs_exact(trig_signal_from_poly(poly), poly.degree)
        assert np.allclose(proj.to_vector(), poly.to_vector(), rtol=0, atol=1e-12 * (1 + poly.norm()))


class TestQuadratureCoeffs:
    def test_cos_signal(self):
        samp = SampledSignal.from_function(np.cos, 4096)
        coeffs = fourier_coeffs_quadrature(samp, 1)
        assert coeffs.cos_coeffs[0] == pytest.approx(SQRT_PI, abs=1e-8)
        assert abs(coeffs.c0) < 1e-8
        assert abs(coeffs.sin_coeffs[0]) < 1e-8

    def test_zero_signal(self):
        samp = SampledSignal(np.zeros(65))
        coeffs = fourier_coeffs_quadrature(samp, 4)
        assert coeffs.norm() == 0.0

    def test_sin3_signal(self):
        samp = SampledSignal.from_function(lambda t: np.sin(3 * t), 4096)
        coeffs = fourier_coeffs_quadrature(samp, 5)
        assert coeffs.sin_coeffs[2] == pytest.approx(SQRT_PI, abs=1e-8)
        other = coeffs.to_vector()
        other[6] = 0.0
        assert np.max(np.abs(other)) < 1e-8

    def test_insufficient_resolution(self):
        samp = SampledSignal(np.zeros(10))  # 9 intervals
        with pytest.raises(ValueError, match="resolution"):
            fourier_coeffs_quadrature(samp, 5)

    def test_matches_exact_for_periodic_signal(self):
        # trig plus constant is 2*pi-periodic, so the trapezoid rule is
        # spectrally accurate here
        sig = ExactSignal.constant(1.0)
        for k in range(1, 7):
            sig = sig.plus_trig(1.0 / k ** 2, k, "sin")
        samp = SampledSignal.from_function(sig.eval, 8192)
        for n in (0, 3, 12):
            q = fourier_coeffs_quadrature(samp, n)
            e = fourier_coeffs_exact(sig, n)
            assert np.allclose(q.to_vector(), e.to_vector(), rtol=0, atol=1e-8)


class TestL2Error:
    def test_projection_distance_zero(self):
        sig = ExactSignal.zero().plus_trig(0.7, 2, "sin").plus_trig(-0.3, 1, "cos")
        proj = fourier_coeffs_exact(sig, 3)
        assert l2_error_exact(proj, sig) < 1e-12

    def test_distance_to_pure_cos(self):
        assert l2_error_exact(TrigPoly.zero(0), ExactSignal.zero().plus_trig(1.0, 1, "cos")) \
            == pytest.approx(SQRT_PI, rel=1e-14)

    def test_distance_to_hat(self):
        hat = ExactSignal.from_pieces([(0.0, math.pi, [math.pi, -1.0]),
                                       (math.pi, TWO_PI, [-math.pi, 1.0])])
        expected = math.sqrt(2.0 * math.pi ** 3 / 3.0)
        assert l2_error_exact(TrigPoly.zero(0), hat) == pytest.approx(expected, rel=1e-13)
        assert l2_norm(hat) == pytest.approx(expected, rel=1e-13)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(1, 64), st.integers(0, 2 ** 31 - 1))
    def test_parseval_against_zero_signal(self, degree, seed):
        rng = np.random.default_rng(seed)
        poly = TrigPoly(rng.normal(), rng.normal(size=degree), rng.normal(size=degree))
        assert l2_error_exact(poly, ExactSignal.zero()) == pytest.approx(poly.norm(), abs=1e-12)

    def test_projection_tail_bound_for_hat_derivative(self):
        # the hat lies in the order-1 periodic Sobolev space, so the
        # projection error decays at least like (norm / n)
        hat = ExactSignal.from_pieces([(0.0, math.pi, [math.pi, -1.0]),
                                       (math.pi, TWO_PI, [-math.pi, 1.0])])
        norm_h1 = sobolev_norm_of_signal(hat, 1.0, 100_000)
        total_sq = l2_norm_sq(hat)
        for n in range(1, 101):
            proj = fourier_coeffs_exact(hat, n)
            tail = math.sqrt(max(total_sq - proj.norm() ** 2, 0.0))
            assert tail <= norm_h1 / n, f"projection tail bound violated at n={n}"


class TestSobolevNorm:
    def test_single_cos_mode(self):
        assert sobolev_per_norm(0.0, [1.0], [0.0], 1.0) == pytest.approx(math.sqrt(2.0))

    def test_constant_mode_unweighted(self):
        assert sobolev_per_norm(3.0, [0.0], [0.0], 7.5) == pytest.approx(3.0)

    def test_sin_mode_order_two(self):
        assert sobolev_per_norm(0.0, [0.0, 0.0], [0.0, 1.0], 2.0) == pytest.approx(5.0)

    def test_negative_smoothness_rejected(self):
        with pytest.raises(ValueError):
            sobolev_per_norm(0.0, [1.0], [0.0], -1.0)


class TestSignals:
    def test_pieces_must_tile(self):
        with pytest.raises(ValueError, match="tile|cover"):
            ExactSignal.from_pieces([(0.0, 1.0, [1.0]), (2.0, TWO_PI, [0.0])])

    def test_eval_piece_lookup(self):
        sig = ExactSignal.from_pieces([(0.0, 4.0, [0.0, 1.0]), (4.0, 6.0, [4.0]),
                                       (6.0, TWO_PI, [7.0, -0.5])])
        assert sig.eval(2.0) == pytest.approx(2.0)
        assert sig.eval(5.0) == pytest.approx(4.0)
        assert sig.eval(TWO_PI) == pytest.approx(7.0 - 0.5 * TWO_PI)

    def test_minus_polynomial(self):
        sig = ExactSignal.constant(1.0).plus_trig(1.0, 1, "sin")
        reduced = sig.minus_polynomial([1.0])
        assert reduced.eval(0.5) == pytest.approx(math.sin(0.5), abs=1e-15)

    def test_antiderivative_of_sin(self):
        sig = ExactSignal.zero().plus_trig(1.0, 1, "sin")
        anti = sig.antiderivative()
        t = np.linspace(0, TWO_PI, 17)
        assert np.allclose(anti.eval(t), 1.0 - np.cos(t), atol=1e-14)

    def test_antiderivative_accumulates_across_pieces(self):
        hat = ExactSignal.from_pieces([(0.0, math.pi, [math.pi, -1.0]),
                                       (math.pi, TWO_PI, [-math.pi, 1.0])])
        twice = hat.antiderivative(2)
        # closed form of the double integral on the second piece
        x = 4.0
        expected = x ** 3 / 6.0 - math.pi * x ** 2 / 2.0 + math.pi ** 2 * x - math.pi ** 3 / 3.0
        assert twice.eval(x) == pytest.approx(expected, rel=1e-13)
        assert twice.eval(0.0) == pytest.approx(0.0, abs=1e-15)

    def test_trig_frequency_validation(self):
        with pytest.raises(ValueError):
            ExactSignal.zero().plus_trig(1.0, 0, "sin")
        with pytest.raises(ValueError):
            ExactSignal.zero().plus_trig(1.0, 1, "tan")


class TestCsvIngestion:
    def test_round_trip(self, tmp_path):
        t = np.linspace(0.0, TWO_PI, 65)
        values = np.sin(t)
        path = tmp_path / "samples.csv"
        path.write_text("t,value\n" + "\n".join(f"{a:.17g},{b:.17g}" for a, b in zip(t, values)))
        samp = SampledSignal.from_csv(path)
        assert np.allclose(samp.samples, values)
        assert samp.n_intervals == 64

    def test_non_uniform_rejected(self, tmp_path):
        t = np.linspace(0.0, TWO_PI, 33)
        t[5] += 0.01
        path = tmp_path / "bad.csv"
        path.write_text("\n".join(f"{a:.17g},0.0" for a in t))
        with pytest.raises(ValueError, match="uniform"):
            SampledSignal.from_csv(path)

    def test_wrong_column_count_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("0.0,1.0,2.0\n")
        with pytest.raises(ValueError, match="two columns"):
            SampledSignal.from_csv(path)
