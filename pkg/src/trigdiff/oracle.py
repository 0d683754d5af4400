"""Independent brute-force checks for the Galerkin machinery.

Nothing here touches the closed-form solution expressions: the linear system
is solved by LU factorisation with partial pivoting, operator norms come from
singular values, and the integration operator itself can be applied by
iterated cumulative trapezoid quadrature on a fine grid. These are the
reference answers the analytic paths are validated against.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .basis import TWO_PI, TrigPoly
from .galerkin import ORDERS, assemble_matrix

COND_LIMIT = 1e14


class IllConditionedSystem(RuntimeError):
    """Raised when the dense factorisation cannot be trusted."""

    def __init__(self, p: int, n: int, cond: float):
        super().__init__(f"system p={p}, n={n} too ill-conditioned for a dense solve (cond ~ {cond:.3e})")
        self.p = p
        self.n = n
        self.cond = cond


def solve_dense(p: int, n: int, rhs: TrigPoly) -> TrigPoly:
    """Solve the degree-n system by LU with partial pivoting.

    One step of iterative refinement keeps the forward error near machine
    precision even when the condition number grows like n^p.
    """
    if rhs.degree != n:
        raise ValueError(f"right-hand side degree {rhs.degree} must equal truncation degree {n}")
    m = assemble_matrix(p, n).entries
    sv = scipy.linalg.svdvals(m)
    cond = sv[0] / sv[-1] if sv[-1] > 0 else np.inf
    if cond > COND_LIMIT:
        raise IllConditionedSystem(p, n, cond)
    b = rhs.to_vector()
    lu, piv = scipy.linalg.lu_factor(m)
    u = scipy.linalg.lu_solve((lu, piv), b)
    u += scipy.linalg.lu_solve((lu, piv), b - m @ u)
    return TrigPoly.from_vector(u)


def inverse_operator_norm(p: int, n: int) -> float:
    """Spectral norm of the inverse system matrix, i.e. 1/sigma_min.

    In the orthonormal basis this equals the L2 operator norm of the
    pseudoinverse of the discretised operator. Uses a full SVD up to n = 200
    and inverse power iteration on the normal matrix beyond that.
    """
    if p not in ORDERS:
        raise ValueError(f"unsupported differentiation order p={p}")
    m = assemble_matrix(p, n).entries
    if n <= 200:
        sv = scipy.linalg.svdvals(m)
        smallest = sv[-1]
        if not np.isfinite(smallest) or smallest <= 0.0:
            raise ArithmeticError(f"singular value computation failed for p={p}, n={n}")
        return 1.0 / smallest
    return _sigma_min_inverse_iteration(m)


def _sigma_min_inverse_iteration(m: np.ndarray, iters: int = 200, tol: float = 1e-13) -> float:
    # power iteration on (M^T M)^-1 through two triangular solves per step
    lu, piv = scipy.linalg.lu_factor(m)
    rng = np.random.default_rng(0)
    v = rng.standard_normal(m.shape[0])
    v /= np.linalg.norm(v)
    prev = 0.0
    for _ in range(iters):
        w = scipy.linalg.lu_solve((lu, piv), v)
        w = scipy.linalg.lu_solve((lu, piv), w, trans=1)
        growth = np.linalg.norm(w)
        v = w / growth
        if abs(growth - prev) <= tol * growth:
            prev = growth
            break
        prev = growth
    return float(np.sqrt(prev))


def volterra_apply_samples(p: int, samples: np.ndarray) -> np.ndarray:
    """p-fold running integral of uniformly sampled data on [0, 2*pi].

    Iterated cumulative trapezoid rule, O(h^2) accurate. This reproduces the
    integration operator without using any of its closed-form expansions, so
    it serves as the quadrature cross-check for them.
    """
    if p not in ORDERS:
        raise ValueError(f"unsupported differentiation order p={p}")
    values = np.asarray(samples, dtype=float)
    h = TWO_PI / (len(values) - 1)
    for _ in range(p):
        inner = np.cumsum((values[1:] + values[:-1]) * (0.5 * h))
        values = np.concatenate(([0.0], inner))
    return values
