"""The regularised differentiation pipeline.

Given noisy data for a function on (0, 2*pi) and (possibly noisy) initial
values at 0, the pipeline subtracts the Taylor polynomial built from the
initial values, projects onto a trigonometric space whose degree is chosen
by a parameter rule, and applies the closed-form Galerkin solve. The degree
acts as the regularisation parameter: raising it shrinks the approximation
error but amplifies data noise like n^p.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .basis import (
    TWO_PI,
    ExactSignal,
    SampledSignal,
    TrigPoly,
    fourier_coeffs_exact,
    fourier_coeffs_quadrature,
)
from .galerkin import ORDERS, solve_analytic

# Norm-growth factors of the discrete pseudoinverse (multiply n**p) and upper
# bounds on the out-of-band leakage operator, per differentiation order.
PINV_GROWTH = {1: math.sqrt(3.0), 2: 11.8040, 3: 345.0754}
TAIL_GAIN = {1: 0.7801, 2: 7.3729, 3: 74.8198}

# Default sweep for the prior-free rule whose prefactor must be tuned by hand.
NO_PRIOR_PREFACTORS = (0.5, 1.0, 2.0, 4.0, 8.0)


@dataclass(frozen=True)
class BoundConstants:
    """Constants of the a priori error bound for one differentiation order."""

    p: int
    pinv_growth: float        # multiplies n**p * delta in the noise term
    tail_gain: float          # norm bound for out-of-band leakage
    regularizer_gain: float   # = 1 + tail_gain
    taylor_weight: float      # sum over k < p of ||t^k||_L2 / k!
    pinv_growth_noisy: float  # = (taylor_weight + 1) * pinv_growth

    def error_bound(self, n: int, delta: float, delta_i: float,
                    smoothness: float | None = None, prior_norm: float | None = None) -> float:
        """A priori bound on the L2 error at truncation degree n.

        Without a smoothness prior only the noise terms are reported.
        """
        bound = self.pinv_growth * n ** self.p * (delta + self.taylor_weight * delta_i)
        if smoothness is not None and prior_norm is not None:
            bound += (self.regularizer_gain + 1.0) * prior_norm / n ** smoothness
        return bound


def builtin_constants(p: int) -> BoundConstants:
    if p not in ORDERS:
        raise ValueError(f"unsupported differentiation order p={p}")
    # ||t^k||_L2(0, 2pi) = sqrt((2pi)^(2k+1) / (2k+1))
    taylor_weight = sum(math.sqrt(TWO_PI ** (2 * k + 1) / (2 * k + 1)) / math.factorial(k)
                        for k in range(p))
    growth = PINV_GROWTH[p]
    gain = TAIL_GAIN[p]
    return BoundConstants(p, growth, gain, 1.0 + gain, taylor_weight, (taylor_weight + 1.0) * growth)


# ---------------------------------------------------------------------------
# parameter rules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FixedRule:
    """Use the given truncation degree unconditionally."""

    n: int

    def describe(self) -> str:
        return f"fixed:{self.n}"


@dataclass(frozen=True)
class NoPriorRule:
    """n = prefactor * delta**(a - 1/p) with tunable a in (0, 1/p).

    Guarantees convergence without smoothness information, but the prefactor
    has no closed form and must be tuned experimentally.
    """

    a: float
    prefactor: float = 1.0

    def describe(self) -> str:
        return f"noprior:a={self.a:g},prefactor={self.prefactor:g}"


@dataclass(frozen=True)
class SobolevPriorRule:
    """Degree choice balancing noise against a periodic-Sobolev prior.

    ``norm`` bounds the periodic Sobolev norm of the exact derivative at
    smoothness index ``smoothness``. With ``noisy_initial`` set, the noise
    growth constant also absorbs the Taylor-polynomial error channel.
    """

    smoothness: float
    norm: float
    noisy_initial: bool = False

    def describe(self) -> str:
        tag = ",noisy-initial" if self.noisy_initial else ""
        return f"sobolev:l={self.smoothness:g},norm={self.norm:.6g}{tag}"


@dataclass(frozen=True)
class BandlimitedRule:
    """Noise-independent choice n = max(n1, n2) for bandlimited derivatives.

    ``n1`` and ``n2`` are the highest cos and sin frequencies present in the
    exact derivative; at this degree the scheme filters all noise above the
    band exactly.
    """

    n1: int
    n2: int

    def describe(self) -> str:
        return f"band:{self.n1},{self.n2}"


ParameterRule = FixedRule | NoPriorRule | SobolevPriorRule | BandlimitedRule


def _round_half_away(x: float) -> int:
    return int(math.floor(x + 0.5)) if x >= 0 else -int(math.floor(-x + 0.5))


def choose_n(rule: ParameterRule, delta: float, p: int, consts: BoundConstants) -> int:
    """Resolve a parameter rule to a truncation degree (always >= 1).

    Real-valued rule outputs are rounded half away from zero, which keeps the
    choice deterministic for equal inputs.
    """
    if isinstance(rule, FixedRule):
        return max(1, rule.n)
    if isinstance(rule, BandlimitedRule):
        if max(rule.n1, rule.n2) < 1:
            raise ValueError("bandlimited rule needs max(n1, n2) >= 1")
        return max(rule.n1, rule.n2)
    if delta <= 0:
        raise ValueError("noise-driven parameter rules require delta > 0")
    if isinstance(rule, NoPriorRule):
        if not 0.0 < rule.a < 1.0 / p:
            raise ValueError(f"no-prior exponent must satisfy 0 < a < 1/p = {1.0 / p:g}, got {rule.a}")
        value = rule.prefactor * delta ** (rule.a - 1.0 / p)
    elif isinstance(rule, SobolevPriorRule):
        if rule.smoothness <= 0 or rule.norm <= 0:
            raise ValueError("sobolev-prior rule needs smoothness > 0 and norm > 0")
        growth = consts.pinv_growth_noisy if rule.noisy_initial else consts.pinv_growth
        base = rule.smoothness * (consts.regularizer_gain + 1.0) * rule.norm / (p * growth)
        value = base ** (1.0 / (rule.smoothness + p)) * delta ** (-1.0 / (rule.smoothness + p))
    else:
        raise TypeError(f"unknown parameter rule {rule!r}")
    return max(1, _round_half_away(value))


# ---------------------------------------------------------------------------
# the pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiffProblem:
    """Order, noisy data, initial values at 0, and the two noise bounds."""

    p: int
    noisy_signal: ExactSignal | SampledSignal
    initial_data: tuple
    delta: float = 0.0
    delta_i: float = 0.0

    def __post_init__(self):
        if self.p not in ORDERS:
            raise ValueError(f"unsupported differentiation order p={self.p}")
        data = tuple(float(v) for v in self.initial_data)
        object.__setattr__(self, "initial_data", data)
        if len(data) != self.p:
            raise ValueError(f"need exactly p={self.p} initial values, got {len(data)}")
        for name, value in (("delta", self.delta), ("delta_i", self.delta_i)):
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"{name} must be finite and >= 0")


@dataclass(frozen=True)
class DiffReport:
    """Run summary; ``r`` stays None unless the caller knows the exact derivative."""

    p: int
    n: int
    delta: float
    delta_i: float
    rule: str
    r: float | None = None
    bound: float | None = None

    def to_json(self) -> str:
        return json.dumps({"p": self.p, "n": self.n, "delta": self.delta,
                           "delta_i": self.delta_i, "rule": self.rule,
                           "r": self.r, "bound": self.bound})


@dataclass(frozen=True)
class DiffResult:
    derivative: TrigPoly
    n: int
    report: DiffReport


def taylor_coefficients(initial_data) -> np.ndarray:
    """Coefficients of sum_k initial_data[k] * t^k / k!."""
    return np.array([v / math.factorial(k) for k, v in enumerate(initial_data)])


def taylor_truncate(sig: ExactSignal, initial_data, p: int) -> ExactSignal:
    """Subtract the degree p-1 Taylor polynomial built from the initial values.

    After subtraction (with exact initial data) the signal vanishes at 0 up to
    order p-1, i.e. it lies in the range of the p-fold integration operator.
    """
    data = tuple(initial_data)
    if len(data) != p:
        raise ValueError(f"need exactly p={p} initial values, got {len(data)}")
    if all(v == 0.0 for v in data):
        return sig
    return sig.minus_polynomial(taylor_coefficients(data))


def differentiate(problem: DiffProblem, rule: ParameterRule) -> DiffResult:
    """Run the full pipeline: Taylor truncation, projection, closed-form solve."""
    consts = builtin_constants(problem.p)
    n = choose_n(rule, problem.delta, problem.p, consts)
    coeffs = taylor_coefficients(problem.initial_data)
    sig = problem.noisy_signal
    if isinstance(sig, SampledSignal):
        rhs = fourier_coeffs_quadrature(sig.minus_polynomial(coeffs), n)
    else:
        rhs = fourier_coeffs_exact(taylor_truncate(sig, problem.initial_data, problem.p), n)
    poly = solve_analytic(problem.p, n, rhs)
    if isinstance(rule, SobolevPriorRule):
        bound = consts.error_bound(n, problem.delta, problem.delta_i,
                                   rule.smoothness, rule.norm)
    else:
        bound = consts.error_bound(n, problem.delta, problem.delta_i)
    report = DiffReport(problem.p, n, problem.delta, problem.delta_i, rule.describe(), None, bound)
    return DiffResult(poly, n, report)


def divergence_probe(p: int, sig: ExactSignal, n_list) -> np.ndarray:
    """L2 norms of the regularised solution along increasing degrees.

    For signals outside the operator range (nonzero initial data, say) these
    norms blow up, which is the practical signature of the instability that
    the parameter rules guard against.
    """
    norms = []
    for n in n_list:
        poly = solve_analytic(p, n, fourier_coeffs_exact(sig, n))
        norms.append(poly.norm())
    return np.array(norms)
