"""Numerical verification of the scheme's analysis layer.

The convergence argument rests on a handful of quantitative claims: the
regularised images of high-frequency basis elements decay like 1/j with
explicit constants, the out-of-band leakage operator has order-dependent norm
bounds, and four scalar sequences inside the closed-form solver stay within
stated ranges. Everything here measures those claims numerically and reports
margins; a violated margin is a finding, not an exception.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .basis import TrigPoly
from .galerkin import ORDERS, projected_image, projected_image_batch, solve_analytic, solve_batch
from .regularize import TAIL_GAIN

_SQRT2 = math.sqrt(2.0)
_PI = math.pi

# Decay constants for the regularised images of cos(jt)/sqrt(pi) and
# sin(jt)/sqrt(pi), j >= n+1: the (constant, cos, sin) output coefficients are
# bounded by these values divided by j. The third-order constants need n >= 5.
COS_COLUMN_BOUNDS = {
    1: (0.0, 0.0, 0.0),
    2: (_SQRT2, 2.0, _PI),
    3: (11.0 * _SQRT2, 23.0, 11.0 * _PI),
}
SIN_COLUMN_BOUNDS = {
    1: (_SQRT2 / _PI, 2.0 / _PI, 0.0),
    2: (1.5 * _SQRT2, 3.0, 5.0),
    3: (44.0 * _SQRT2 / 3.0, 30.0, 48.0),
}

# Frequency cutoff used when estimating norms of operators acting on the
# orthogonal complement of the trig space: tails beyond 100n contribute O(1/n)
# of what the decay bounds allow, negligible against the margins observed.
TAIL_CUTOFF_FACTOR = 100


def _check_regime(p: int, n: int, j: int | None = None) -> None:
    if p not in ORDERS:
        raise ValueError(f"unsupported differentiation order p={p}")
    if p == 3 and n < 5:
        raise ValueError("third-order decay bounds hold only for n >= 5")
    if j is not None and j < n + 1:
        raise ValueError(f"decay analysis needs j >= n+1={n + 1}")


@dataclass(frozen=True)
class DecayRecord:
    """Regularised image of one out-of-band basis element plus its bounds."""

    p: int
    n: int
    j: int
    kind: str
    coeffs: TrigPoly
    bound_constants: tuple  # (constant-mode, cos-mode, sin-mode) decay constants


@dataclass
class CheckRow:
    check: str
    p: int
    n: int
    j: int
    value: float
    bound: float
    passed: bool


@dataclass
class BoundReport:
    """Aggregate result of a sweep; ``worst_margin`` = min(bound - |value|)."""

    passed: bool
    worst_margin: float
    rows: list = field(default_factory=list)

    def failures(self):
        return [row for row in self.rows if not row.passed]


def regularizer_column(p: int, n: int, j: int, kind: str) -> DecayRecord:
    """Coefficients of the scheme applied to the operator image of one

    high-frequency basis element, bundled with the decay constants its
    coefficients must respect.
    """
    _check_regime(p, n, j)
    coeffs = solve_analytic(p, n, projected_image(p, n, j, kind))
    consts = COS_COLUMN_BOUNDS[p] if kind == "cos" else SIN_COLUMN_BOUNDS[p]
    return DecayRecord(p, n, j, kind, coeffs, consts)


def _column_matrix(p: int, n: int, js, kind: str) -> np.ndarray:
    """(m, 2n+1) solution vectors for a batch of out-of-band frequencies."""
    f0, f, g = projected_image_batch(p, n, js, kind)
    return solve_batch(p, n, f0, f, g)


def check_decay(p: int, n_list, j_max_multiplier: int = 10) -> BoundReport:
    """Sweep the six decay bounds over n in n_list, j in n+1 .. multiplier*n."""
    rows = []
    worst = math.inf
    for n in n_list:
        _check_regime(p, n)
        js = np.arange(n + 1, j_max_multiplier * n + 1)
        if len(js) == 0:
            continue
        for kind, names in (("cos", ("decay_const_cos", "decay_cos_cos", "decay_sin_cos")),
                            ("sin", ("decay_const_sin", "decay_cos_sin", "decay_sin_sin"))):
            consts = COS_COLUMN_BOUNDS[p] if kind == "cos" else SIN_COLUMN_BOUNDS[p]
            sols = _column_matrix(p, n, js, kind)
            values = np.stack([np.abs(sols[:, 0]),
                               np.max(np.abs(sols[:, 1::2]), axis=1),
                               np.max(np.abs(sols[:, 2::2]), axis=1)])
            for idx, name in enumerate(names):
                bounds = consts[idx] / js
                margins = bounds - values[idx]
                worst = min(worst, float(np.min(margins)))
                # one row per (n, j): the measured coefficient against its bound
                for j_pos, j in enumerate(js):
                    rows.append(CheckRow(name, p, n, int(j), float(values[idx][j_pos]),
                                         float(bounds[j_pos]), bool(margins[j_pos] >= -1e-13)))
    passed = all(row.passed for row in rows)
    return BoundReport(passed, worst, rows)


def tail_map_matrix(p: int, n: int, cutoff: int | None = None) -> np.ndarray:
    """Matrix of the leakage operator restricted to frequencies n+1..cutoff.

    Column order: all cos inputs, then all sin inputs. The image lives in the
    degree-n space, so the matrix has shape (2n+1, 2*(cutoff-n)).
    """
    _check_regime(p, n)
    if cutoff is None:
        cutoff = TAIL_CUTOFF_FACTOR * n
    js = np.arange(n + 1, cutoff + 1)
    return np.concatenate([_column_matrix(p, n, js, "cos"),
                           _column_matrix(p, n, js, "sin")]).T


def estimate_kappa(p: int, n: int, trials: int = 200, rng=None, cutoff: int | None = None) -> float:
    """Randomised lower bound for the norm of the out-of-band leakage operator.

    Maximises the image norm over random unit vectors supported on
    frequencies n+1..cutoff. Being a lower bound, it can only ever
    under-report the norm, so staying below the stated gain constants is
    meaningful evidence for them.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    matrix = tail_map_matrix(p, n, cutoff)
    best = 0.0
    for _ in range(trials):
        v = rng.standard_normal(matrix.shape[1])
        v /= np.linalg.norm(v)
        best = max(best, float(np.linalg.norm(matrix @ v)))
    return best


def estimate_regularizer_norm(p: int, n: int, trials: int = 200, rng=None,
                              cutoff: int | None = None) -> float:
    """Randomised lower bound for the norm of projection-plus-leakage.

    On the degree-n space the scheme acts as the identity, so the full
    regularised composition is identity-plus-leakage; random unit vectors over
    frequencies 0..cutoff probe both parts at once.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    matrix = tail_map_matrix(p, n, cutoff)
    dim_low = 2 * n + 1
    best = 0.0
    for _ in range(trials):
        v = rng.standard_normal(dim_low + matrix.shape[1])
        v /= np.linalg.norm(v)
        image = v[:dim_low] + matrix @ v[dim_low:]
        best = max(best, float(np.linalg.norm(image)))
    return best


def spectral_norms(p: int, n: int, cutoff: int | None = None) -> tuple:
    """Exact spectral norms of the truncated leakage and regularizer maps.

    Sharper than the randomised probes: the leakage norm is the top singular
    value of the tail-map matrix, and the regularizer is identity-plus-leakage
    so its matrix is that tail map with an identity block prepended.
    """
    matrix = tail_map_matrix(p, n, cutoff)
    leak = float(np.linalg.norm(matrix, 2))
    reg = float(np.linalg.norm(np.concatenate([np.eye(matrix.shape[0]), matrix], axis=1), 2))
    return leak, reg


def check_kappa_gamma(p: int, n_list=(5, 10, 20, 40), trials: int = 200, rng=None) -> BoundReport:
    """Compare randomised and spectral norm estimates against the gain constants."""
    rng = np.random.default_rng(0) if rng is None else rng
    kappa = TAIL_GAIN[p]
    gamma = 1.0 + kappa
    rows = []
    worst = math.inf
    for n in n_list:
        est_k = estimate_kappa(p, n, trials, rng)
        est_g = estimate_regularizer_norm(p, n, trials, rng)
        spec_k, spec_g = spectral_norms(p, n)
        rows.append(CheckRow("leakage_norm", p, n, 0, est_k, kappa, est_k <= kappa))
        rows.append(CheckRow("regularizer_norm", p, n, 0, est_g, gamma, est_g <= gamma))
        rows.append(CheckRow("leakage_norm_spectral", p, n, 0, spec_k, kappa, spec_k <= kappa))
        rows.append(CheckRow("regularizer_norm_spectral", p, n, 0, spec_g, gamma, spec_g <= gamma))
        worst = min(worst, kappa - spec_k, gamma - spec_g)
    return BoundReport(all(r.passed for r in rows), worst, rows)


def check_prop_c1(n_max: int = 2000) -> BoundReport:
    """Range checks for the four scalar sequences of the closed-form solver.

    The reciprocal second-order pivot stays within [10n, 36n], the feedback
    factor within [-2/n, -1/(2n)], the mixing factor within
    [sqrt(2), 4*sqrt(2)]/(n(2n+1)), and (for n >= 5) the third-order pivot
    within [1/396, 3/40]/(n(2n+1)).
    """
    ns = np.arange(1, n_max + 1, dtype=float)
    inv_sq = np.cumsum(1.0 / np.arange(1, n_max + 1, dtype=float) ** 2)
    two_np1 = 2.0 * ns + 1.0
    pivot_2 = 1.0 / 6.0 + inv_sq / (2.0 * _PI ** 2) - 0.25 * (2.0 * ns / two_np1)
    pivot_3 = 1.0 / 12.0 + inv_sq / (two_np1 * _PI ** 2) - (2.0 * ns / two_np1) / 3.0 + ns ** 2 / two_np1 ** 2
    mix = 4.0 * _SQRT2 * _PI ** 2 * pivot_2 / two_np1
    feedback = -2.0 * _PI ** 2 * pivot_2

    rows = []
    worst = math.inf

    def sweep(name, values, los, his, start=1):
        nonlocal worst
        for i in range(start - 1, n_max):
            margin = min(values[i] - los[i], his[i] - values[i])
            worst = min(worst, float(margin))
            if margin < 0:
                rows.append(CheckRow(name, 0, i + 1, 0, float(values[i]),
                                     float(los[i] if values[i] < los[i] else his[i]), False))

    sweep("pivot2_reciprocal", 1.0 / pivot_2, 10.0 * ns, 36.0 * ns)
    sweep("feedback_range", feedback, -2.0 / ns, -0.5 / ns)
    sweep("mix_range", mix, _SQRT2 / (ns * two_np1), 4.0 * _SQRT2 / (ns * two_np1))
    sweep("pivot3_range", pivot_3, 1.0 / (396.0 * ns * two_np1), 3.0 / (40.0 * ns * two_np1), start=5)
    return BoundReport(not rows, worst, rows)


def report_to_csv(report: BoundReport, include_passes: bool = True) -> str:
    """CSV with columns (check, p, n, j, value, bound, pass)."""
    lines = ["check,p,n,j,value,bound,pass"]
    for row in report.rows:
        if include_passes or not row.passed:
            lines.append(f"{row.check},{row.p},{row.n},{row.j},{row.value:.17g},{row.bound:.17g},{row.passed}")
    return "\n".join(lines) + "\n"
