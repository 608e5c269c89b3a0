"""Dense linear-algebra kernels shared by the solvers.

Everything here operates on plain float64 numpy arrays with atoms stored
as columns.  All functions are pure; tolerances are fixed module constants
rather than knobs.
"""

import numpy as np
from dataclasses import dataclass
from scipy.linalg import solve_triangular

# Frobenius tolerance for re-checking L @ L.T against the Gram matrix.
GRAM_FACTOR_TOL = 1e-10
# Smallest acceptable new Cholesky pivot; anything at or below signals a
# (near-)linearly-dependent atom selection.
MIN_PIVOT = 1e-12
# Residual orthogonality tolerance guaranteed by project_residual.
ORTHO_TOL = 1e-8
# Power iteration settings for sym_op_norm.
POWER_TOL = 1e-10
POWER_MAX_ITERS = 10_000
SYMMETRY_TOL = 1e-10
_POWER_RESTART_SEED = 0x5EED


class RankDegeneracyError(RuntimeError):
    """Raised when a new atom is numerically dependent on the selected ones."""


class PowerIterationError(RuntimeError):
    """Power iteration failed to converge; carries the last iterate."""

    def __init__(self, message, estimate, iterate):
        super().__init__(message)
        self.estimate = estimate
        self.iterate = iterate


def as_matrix(a):
    """Coerce to a float64 2-D array, rejecting NaN/Inf entries."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D array, got ndim={m.ndim}")
    if not np.isfinite(m).all():
        raise ValueError("matrix entries must be finite")
    return m


def as_vector(a, length=None):
    """Coerce to a finite float64 1-D array, optionally of fixed length."""
    v = np.asarray(a, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D array, got ndim={v.ndim}")
    if not np.isfinite(v).all():
        raise ValueError("vector entries must be finite")
    if length is not None and v.shape[0] != length:
        raise ValueError(f"expected length {length}, got {v.shape[0]}")
    return v


def _check_indices(n_cols, indices):
    idx = [int(j) for j in indices]
    if len(idx) == 0:
        raise ValueError("index set must be non-empty")
    if len(set(idx)) != len(idx):
        raise ValueError(f"duplicate indices in {idx}")
    for j in idx:
        if not 0 <= j < n_cols:
            raise ValueError(f"column index {j} out of range [0, {n_cols})")
    return idx


def gram(matrix, indices):
    """Gram matrix of the selected columns.

    Returns the |J| x |J| symmetric matrix of pairwise inner products of
    ``matrix[:, J]`` in the order given by ``indices``.
    """
    m = as_matrix(matrix)
    idx = _check_indices(m.shape[1], indices)
    sub = m[:, idx]
    g = sub.T @ sub
    return 0.5 * (g + g.T)


@dataclass(frozen=True)
class CholeskyState:
    """Lower-triangular factor of the Gram matrix of the selected columns.

    ``lower @ lower.T`` equals ``gram(matrix, indices)`` to GRAM_FACTOR_TOL
    (Frobenius); the diagonal of ``lower`` is strictly positive.
    """

    indices: tuple
    lower: np.ndarray

    @classmethod
    def empty(cls):
        return cls(indices=(), lower=np.zeros((0, 0)))

    @property
    def size(self):
        return len(self.indices)

    def factor_error(self, matrix):
        """Frobenius distance between lower @ lower.T and the true Gram."""
        if self.size == 0:
            return 0.0
        g = gram(matrix, self.indices)
        return float(np.linalg.norm(self.lower @ self.lower.T - g))


def cholesky_append(state, matrix, j):
    """Extend the factor with one more column in O(k^2).

    Equivalent (to GRAM_FACTOR_TOL) to recomputing the Cholesky factor of
    the enlarged Gram matrix from scratch.  Raises RankDegeneracyError when
    the new pivot falls at or below MIN_PIVOT, i.e. the new column is
    numerically in the span of the selected ones.
    """
    m = as_matrix(matrix)
    j = int(j)
    if not 0 <= j < m.shape[1]:
        raise ValueError(f"column index {j} out of range [0, {m.shape[1]})")
    if j in state.indices:
        raise ValueError(f"column {j} already selected")

    col = m[:, j]
    gjj = float(col @ col)
    k = state.size
    if k == 0:
        pivot = np.sqrt(gjj)
        if pivot <= MIN_PIVOT:
            raise RankDegeneracyError(f"zero-norm column {j}")
        return CholeskyState(indices=(j,), lower=np.array([[pivot]]))

    cross = m[:, state.indices].T @ col
    w = solve_triangular(state.lower, cross, lower=True, check_finite=False)
    pivot_sq = gjj - float(w @ w)
    pivot = np.sqrt(pivot_sq) if pivot_sq > 0.0 else 0.0
    if pivot <= MIN_PIVOT:
        raise RankDegeneracyError(
            f"column {j} is numerically dependent on selection {state.indices}"
        )
    lower = np.zeros((k + 1, k + 1))
    lower[:k, :k] = state.lower
    lower[k, :k] = w
    lower[k, k] = pivot
    return CholeskyState(indices=state.indices + (j,), lower=lower)


def project_residual(state, matrix, y):
    """Least-squares fit of ``y`` on the selected columns.

    Returns ``(residual, coeffs)`` where ``coeffs`` minimises
    ``||matrix[:, J] @ x - y||_2`` (computed through the Cholesky factor)
    and ``residual = y - matrix[:, J] @ coeffs``.  The residual is
    orthogonal to every selected column to ORTHO_TOL.
    """
    m = as_matrix(matrix)
    y = as_vector(y, m.shape[0])
    if state.size == 0:
        return y.copy(), np.zeros(0)
    sub = m[:, state.indices]
    rhs = sub.T @ y
    z = solve_triangular(state.lower, rhs, lower=True, check_finite=False)
    coeffs = solve_triangular(state.lower.T, z, lower=False, check_finite=False)
    residual = y - sub @ coeffs
    return residual, coeffs


def _power_iterate(m, v):
    """Power iteration returning (estimate, converged, last iterate)."""
    est = 0.0
    stable = 0
    for _ in range(POWER_MAX_ITERS):
        w = m @ v
        nw = float(np.linalg.norm(w))
        if nw < 1e-300:
            # v is (numerically) in the null space; only the zero matrix
            # legitimately converges here.
            return 0.0, bool(np.abs(m).max() == 0.0), v
        new_est = nw
        v = w / nw
        if abs(new_est - est) <= POWER_TOL * max(1.0, new_est):
            stable += 1
            if stable >= 3:
                return new_est, True, v
        else:
            stable = 0
        est = new_est
    return est, False, v


def sym_op_norm(m):
    """Largest absolute eigenvalue of a symmetric matrix.

    Power iteration with a deterministic all-ones start vector and one
    seeded random restart on stagnation (POWER_TOL / POWER_MAX_ITERS).
    Raises ValueError for asymmetric input and PowerIterationError (with
    the last iterate attached) on non-convergence.
    """
    m = as_matrix(m)
    n, c = m.shape
    if n != c:
        raise ValueError(f"matrix must be square, got {n}x{c}")
    if n > 0 and np.abs(m - m.T).max() > SYMMETRY_TOL:
        raise ValueError("matrix is not symmetric")
    if n == 0:
        return 0.0

    v0 = np.ones(n) / np.sqrt(n)
    est, ok, it = _power_iterate(m, v0)
    if ok:
        return est
    rng = np.random.default_rng(_POWER_RESTART_SEED)
    v1 = rng.standard_normal(n)
    v1 /= np.linalg.norm(v1)
    est2, ok, it2 = _power_iterate(m, v1)
    if ok:
        return est2
    best_est, best_it = (est2, it2) if est2 >= est else (est, it)
    raise PowerIterationError(
        f"power iteration did not converge in {POWER_MAX_ITERS} iterations",
        estimate=best_est,
        iterate=best_it,
    )
