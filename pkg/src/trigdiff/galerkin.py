"""Galerkin discretisation of p-fold integration on the trigonometric basis.

``assemble_matrix`` builds the dense (2n+1) x (2n+1) system matrix for
p = 1, 2, 3; ``solve_analytic`` inverts it through closed-form expressions
whose cost is O(n) per right-hand side. ``projected_image`` gives the
projection of the integration operator applied to basis elements whose
frequency exceeds the truncation degree, which is what feeds the
out-of-band analysis in :mod:`trigdiff.bounds`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import TrigPoly

ORDERS = (1, 2, 3)

_PI = math.pi
_SQRT2 = math.sqrt(2.0)


def _check_order(p: int) -> None:
    if p not in ORDERS:
        raise ValueError(f"unsupported differentiation order p={p}; closed forms exist for p in {ORDERS}")


@dataclass(frozen=True)
class GalerkinMatrix:
    """Dense system matrix in basis order (1, cos t, sin t, ..., cos nt, sin nt)."""

    p: int
    n: int
    entries: np.ndarray


@dataclass(frozen=True)
class SolveConstants:
    """Scalars entering the closed-form inverse at truncation degree n.

    ``inv_sq_sum`` is sum_{k<=n} 1/k^2 accumulated smallest-term-first.
    ``pivot_2`` and ``pivot_3`` are the constant-mode pivots of the second-
    and third-order systems (both provably positive); ``mix_3`` and
    ``feedback`` couple frequency modes back into the constant mode, and
    ``zero_mode_weights[k-1]`` spreads the third-order constant mode across
    the cos(kt) directions.
    """

    n: int
    inv_sq_sum: float
    pivot_2: float
    pivot_3: float
    mix_3: float
    feedback: float
    zero_mode_weights: np.ndarray


def solver_constants(n: int) -> SolveConstants:
    if n < 1:
        raise ValueError("truncation degree must be >= 1")
    k = np.arange(n, 0, -1, dtype=float)
    inv_sq_sum = float(np.sum(1.0 / k ** 2))
    two_np1 = 2 * n + 1
    pivot_2 = 1.0 / 6.0 + inv_sq_sum / (2.0 * _PI ** 2) - 0.25 * (2.0 * n / two_np1)
    pivot_3 = (1.0 / 12.0 + inv_sq_sum / (two_np1 * _PI ** 2)
               - (2.0 * n / two_np1) / 3.0 + n ** 2 / two_np1 ** 2)
    mix_3 = 4.0 * _SQRT2 * _PI ** 2 * pivot_2 / two_np1
    feedback = -2.0 * _PI ** 2 * pivot_2
    ks = np.arange(1, n + 1, dtype=float)
    zero_mode_weights = _SQRT2 * (1.0 + 2.0 * ks ** 2 * feedback / two_np1)
    return SolveConstants(n, inv_sq_sum, pivot_2, pivot_3, mix_3, feedback, zero_mode_weights)


def assemble_matrix(p: int, n: int) -> GalerkinMatrix:
    """Dense Galerkin matrix of the p-fold integration operator at degree n."""
    _check_order(p)
    if n < 1:
        raise ValueError("truncation degree must be >= 1")
    k = np.arange(1, n + 1, dtype=float)
    size = 2 * n + 1
    m = np.zeros((size, size))
    if p == 1:
        m[0, 0] = _PI
        m[0, 2::2] = _SQRT2 / k          # first row against sin columns
        m[2::2, 0] = -_SQRT2 / k
        cs = np.diag(-1.0 / k)
        sc = np.diag(1.0 / k)
        m[1::2, 2::2] = cs
        m[2::2, 1::2] = sc
    elif p == 2:
        m[0, 0] = 2.0 * _PI ** 2 / 3.0
        m[0, 1::2] = _SQRT2 / k ** 2
        m[0, 2::2] = _SQRT2 * _PI / k
        m[1::2, 0] = _SQRT2 / k ** 2
        m[2::2, 0] = -_SQRT2 * _PI / k
        m[1::2, 1::2] = np.diag(-1.0 / k ** 2)
        # off-diagonal sin-sin coupling is -2/(i*j): (x/j - sin(jx)/j^2, sin(ix))
        # integrates to -2pi/(ij), checked against quadrature of the operator
        ss = -2.0 / np.outer(k, k)
        np.fill_diagonal(ss, -3.0 / k ** 2)
        m[2::2, 2::2] = ss
    else:
        m[0, 0] = _PI ** 3 / 3.0
        m[0, 1::2] = _SQRT2 * _PI / k ** 2
        m[0, 2::2] = 2.0 * _SQRT2 * _PI ** 2 / (3.0 * k) - _SQRT2 / k ** 3
        m[1::2, 0] = _SQRT2 * _PI / k ** 2
        m[2::2, 0] = -2.0 * _SQRT2 * _PI ** 2 / (3.0 * k) + _SQRT2 / k ** 3
        i = k[:, None]
        j = k[None, :]
        cs = 2.0 / (i ** 2 * j)
        np.fill_diagonal(cs, 3.0 / k ** 3)
        sc = -2.0 / (i * j ** 2)
        np.fill_diagonal(sc, -3.0 / k ** 3)
        m[1::2, 2::2] = cs
        m[2::2, 1::2] = sc
        m[2::2, 2::2] = -2.0 * _PI / (i * j)
    return GalerkinMatrix(p, n, m)


def apply_matrix(p: int, n: int, poly: TrigPoly) -> TrigPoly:
    """Image of a degree-n trig polynomial under the discretised operator."""
    if poly.degree != n:
        raise ValueError("polynomial degree must match the truncation degree")
    return TrigPoly.from_vector(assemble_matrix(p, n).entries @ poly.to_vector())


# ---------------------------------------------------------------------------
# closed-form solve
# ---------------------------------------------------------------------------

def solve_batch(p: int, n: int, f0, f, g) -> np.ndarray:
    """Closed-form solve for a batch of right-hand sides.

    ``f0`` has shape (m,); ``f`` and ``g`` have shape (m, n) and hold the
    cos- and sin-coefficients of each right-hand side. Returns an
    (m, 2n+1) array of solution vectors in basis order. Sums over the
    frequency index run in descending order to add small terms first.
    """
    _check_order(p)
    if n < 1:
        raise ValueError("truncation degree must be >= 1")
    f0 = np.atleast_1d(np.asarray(f0, dtype=float))
    f = np.asarray(f, dtype=float).reshape(len(f0), n)
    g = np.asarray(g, dtype=float).reshape(len(f0), n)
    k = np.arange(1, n + 1, dtype=float)
    two_np1 = 2 * n + 1

    def desc_sum(arr):
        return arr[:, ::-1].sum(axis=1)

    sum_f = desc_sum(f)
    out = np.empty((len(f0), 2 * n + 1))
    if p == 1:
        c0 = (f0 + _SQRT2 * sum_f) / _PI
        cos = _SQRT2 * c0[:, None] + k * g
        sin = -k * f
    elif p == 2:
        c = solver_constants(n)
        sum_kg = desc_sum(k * g)
        c0 = (f0 + _SQRT2 * sum_f + _SQRT2 * _PI * sum_kg / two_np1) / (c.pivot_2 * 4.0 * _PI ** 2)
        cos = _SQRT2 * c0[:, None] - k ** 2 * f
        sin = (2.0 * k / two_np1) * sum_kg[:, None] - k ** 2 * g \
            - (_SQRT2 * _PI * k / two_np1) * c0[:, None]
    else:
        c = solver_constants(n)
        sum_kg = desc_sum(k * g)
        sum_k2f = desc_sum(k ** 2 * f)
        c0 = (f0 + _SQRT2 * sum_f + _SQRT2 * _PI * sum_kg / two_np1
              - c.mix_3 * sum_k2f) / (c.pivot_3 * 4.0 * _PI ** 3)
        cos = -k ** 3 * g + (2.0 * k ** 2 / two_np1) * sum_kg[:, None] \
            - (2.0 * _PI * k ** 2 / two_np1 ** 2) * sum_k2f[:, None] \
            + c.zero_mode_weights * c0[:, None]
        sin = k ** 3 * f - (2.0 * k / two_np1) * sum_k2f[:, None] \
            - (_SQRT2 * _PI * k / two_np1) * c0[:, None]
    out[:, 0] = c0
    out[:, 1::2] = cos
    out[:, 2::2] = sin
    return out


def solve_analytic(p: int, n: int, rhs: TrigPoly) -> TrigPoly:
    """Unique solution of the degree-n Galerkin system via the closed forms.

    The system is provably nonsingular for every n >= 1, so this coincides
    with the minimum-norm least-squares solution.
    """
    if rhs.degree != n:
        raise ValueError(f"right-hand side degree {rhs.degree} must equal truncation degree {n}")
    vec = solve_batch(p, n, np.array([rhs.c0]), rhs.cos_coeffs[None, :], rhs.sin_coeffs[None, :])
    return TrigPoly.from_vector(vec[0])


# ---------------------------------------------------------------------------
# projections of out-of-band basis images
# ---------------------------------------------------------------------------

def projected_image_batch(p: int, n: int, js, kind: str):
    """Right-hand sides P_n A (cos(jt)/sqrt(pi)) or P_n A (sin(jt)/sqrt(pi)).

    Valid for frequencies j >= n+1 only (below that the operator image is
    encoded in the matrix columns). Returns (f0, f, g) batch arrays.
    """
    _check_order(p)
    if kind not in ("cos", "sin"):
        raise ValueError(f"kind must be 'cos' or 'sin', got {kind!r}")
    js = np.atleast_1d(np.asarray(js, dtype=float))
    if np.any(js < n + 1):
        raise ValueError(f"projected_image requires j >= n+1={n + 1}; use the matrix column for in-band j")
    m = len(js)
    k = np.arange(1, n + 1, dtype=float)
    f0 = np.zeros(m)
    f = np.zeros((m, n))
    g = np.zeros((m, n))
    if kind == "cos":
        if p == 2:
            f0 = _SQRT2 / js ** 2
        elif p == 3:
            f0 = _SQRT2 * _PI / js ** 2
            g = -2.0 / (k[None, :] * js[:, None] ** 2)
    else:
        if p == 1:
            f0 = _SQRT2 / js
        elif p == 2:
            f0 = _SQRT2 * _PI / js
            g = -2.0 / (k[None, :] * js[:, None])
        else:
            f0 = 2.0 * _SQRT2 * _PI ** 2 / (3.0 * js) - _SQRT2 / js ** 3
            f = 2.0 / (k[None, :] ** 2 * js[:, None])
            g = -2.0 * _PI / (k[None, :] * js[:, None])
    return f0, f, g


def projected_image(p: int, n: int, j: int, kind: str) -> TrigPoly:
    """Projection of the operator applied to a single high-frequency basis element."""
    if n < 1:
        raise ValueError("truncation degree must be >= 1")
    f0, f, g = projected_image_batch(p, n, [j], kind)
    return TrigPoly(float(f0[0]), f[0], g[0])
