"""Tests for the dense-solve and singular-value reference paths."""

import math

import numpy as np
import pytest

import trigdiff.oracle
from trigdiff.basis import SQRT_PI, TWO_PI, TrigPoly
from trigdiff.galerkin import assemble_matrix, solve_analytic
from trigdiff.oracle import (
    IllConditionedSystem,
    inverse_operator_norm,
    solve_dense,
    volterra_apply_samples,
)


class TestSolveDense:
    def test_zero_rhs(self):
        assert solve_dense(2, 4, TrigPoly.zero(4)).norm() == 0.0

    def test_first_order_recovers_cos(self):
        rhs = TrigPoly(0.0, np.zeros(2), np.array([SQRT_PI, 0.0]))
        sol = solve_dense(1, 2, rhs)
        assert sol.cos_coeffs[0] == pytest.approx(SQRT_PI, rel=1e-13)
        assert abs(sol.c0) < 1e-13

    def test_agrees_with_analytic_third_order(self):
        rng = np.random.default_rng(11)
        rhs = TrigPoly.from_vector(rng.uniform(-1, 1, 21))
        dense = solve_dense(3, 10, rhs).to_vector()
        closed = solve_analytic(3, 10, rhs).to_vector()
        assert np.allclose(closed, dense, rtol=0, atol=1e-9 * np.max(np.abs(dense)))

    def test_residual_small(self):
        rng = np.random.default_rng(5)
        for p in (1, 2, 3):
            for n in (3, 17):
                rhs_vec = rng.uniform(-1, 1, 2 * n + 1)
                sol = solve_dense(p, n, TrigPoly.from_vector(rhs_vec))
                residual = assemble_matrix(p, n).entries @ sol.to_vector() - rhs_vec
                assert np.linalg.norm(residual) <= 1e-10 * np.linalg.norm(rhs_vec)

    def test_degree_mismatch_rejected(self):
        with pytest.raises(ValueError, match="degree"):
            solve_dense(1, 3, TrigPoly.zero(4))

    def test_condition_guard_trips(self, monkeypatch):
        monkeypatch.setattr(trigdiff.oracle, "COND_LIMIT", 1.0)
        with pytest.raises(IllConditionedSystem) as exc:
            solve_dense(3, 8, TrigPoly.zero(8))
        assert exc.value.n == 8


class TestInverseOperatorNorm:
    def test_first_order_bound_at_n1(self):
        value = inverse_operator_norm(1, 1)
        assert 0.0 < value <= math.sqrt(3.0) * (1.0 + 1e-12)

    def test_positive_lower_bound(self):
        m = assemble_matrix(1, 1).entries
        assert inverse_operator_norm(1, 1) >= 1.0 / np.linalg.norm(m, 2)

    def test_second_order_bound_at_n10(self):
        assert inverse_operator_norm(2, 10) <= 11.8040 * 100.0

    def test_inverse_iteration_branch_matches_svd(self):
        # n > 200 switches to inverse power iteration on the normal matrix
        value = inverse_operator_norm(1, 201)
        sv = np.linalg.svd(assemble_matrix(1, 201).entries, compute_uv=False)
        assert value == pytest.approx(1.0 / sv[-1], rel=1e-9)

    def test_unsupported_order(self):
        with pytest.raises(ValueError):
            inverse_operator_norm(5, 3)


class TestVolterraQuadrature:
    def test_single_integration_of_one(self):
        n = 4096
        t = np.linspace(0.0, TWO_PI, n + 1)
        out = volterra_apply_samples(1, np.ones(n + 1))
        assert np.allclose(out, t, atol=1e-12)

    def test_double_integration_of_cos(self):
        n = 8192
        t = np.linspace(0.0, TWO_PI, n + 1)
        out = volterra_apply_samples(2, np.cos(t))
        assert np.allclose(out, 1.0 - np.cos(t), atol=1e-6)

    def test_triple_integration_of_constant(self):
        # trapezoid error for the quadratic intermediate is h^2 * x / 6
        n = 8192
        t = np.linspace(0.0, TWO_PI, n + 1)
        out = volterra_apply_samples(3, np.full(n + 1, 2.0))
        assert np.allclose(out, t ** 3 / 3.0, rtol=0, atol=1e-6)
