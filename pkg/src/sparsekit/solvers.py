"""Recovery algorithms: orthogonal matching pursuit, basis pursuit via a
primal-dual interior point method, one-shot thresholding, and an
exhaustive-search oracle for small instances.

All solvers are deterministic: argmax/sort ties are broken by lowest
index everywhere.
"""

import enum
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .linops import (
    CholeskyState,
    RankDegeneracyError,
    as_vector,
    cholesky_append,
    project_residual,
)

# Basis pursuit contract: feasibility ||Dx - y||_2, l1 optimality slack
# against any feasible point, and the Newton iteration cap.
BP_FEAS_TOL = 1e-8
BP_OPT_TOL = 1e-6
BP_MAX_ITERS = 50_000

# Guard for the exhaustive oracle: number of candidate supports.
EXHAUSTIVE_GUARD = 10 ** 6


class SolveStatus(enum.Enum):
    COMPLETED = "completed"
    RANK_DEGENERATE = "rank-degenerate"
    NOT_CONVERGED = "not-converged"


@dataclass(frozen=True, eq=False)
class SolveResult:
    """Recovered support (in selection or magnitude order), the final
    least-squares coefficients on it, and the residual-norm trace."""

    support: tuple
    coeffs: np.ndarray
    residual_norms: tuple
    status: SolveStatus = SolveStatus.COMPLETED

    @property
    def final_residual_norm(self):
        return self.residual_norms[-1]


@dataclass(frozen=True, eq=False)
class BpSolution:
    """Minimum-l1 representation: full-length coefficient vector plus
    feasibility/optimality diagnostics."""

    x_hat: np.ndarray
    primal_feasibility: float
    l1_value: float
    iterations: int
    status: SolveStatus = SolveStatus.COMPLETED
    duality_gap: float = float("nan")


def omp(dictionary, y, max_iters, residual_tol=0.0):
    """Greedy pursuit: repeatedly select the atom most correlated with the
    residual and re-project.

    Runs until ``max_iters`` selections or the residual norm drops to
    ``residual_tol``.  A numerically dependent selection ends the run with
    status RANK_DEGENERATE and the partial result.
    """
    matrix = dictionary.matrix
    d, K = matrix.shape
    y = as_vector(y, d)
    max_iters = int(max_iters)
    if not 0 <= max_iters <= d:
        raise ValueError(f"max_iters must lie in [0, d={d}], got {max_iters}")
    if residual_tol < 0:
        raise ValueError(f"residual_tol must be >= 0, got {residual_tol}")

    state = CholeskyState.empty()
    residual = y.copy()
    coeffs = np.zeros(0)
    norms = [float(np.linalg.norm(y))]
    status = SolveStatus.COMPLETED
    selected = np.zeros(K, dtype=bool)

    for _ in range(max_iters):
        if norms[-1] <= residual_tol:
            break
        score = np.abs(matrix.T @ residual)
        # Selected atoms are orthogonal to the residual anyway; mask them
        # out so rounding noise near convergence cannot re-pick one.
        score[selected] = -1.0
        j = int(np.argmax(score))
        try:
            state = cholesky_append(state, matrix, j)
        except RankDegeneracyError:
            status = SolveStatus.RANK_DEGENERATE
            break
        selected[j] = True
        residual, coeffs = project_residual(state, matrix, y)
        norms.append(float(np.linalg.norm(residual)))

    return SolveResult(
        support=state.indices,
        coeffs=coeffs,
        residual_norms=tuple(norms),
        status=status,
    )


def thresholding(dictionary, y, S):
    """One-shot selection of the S atoms most correlated with the signal,
    followed by a least-squares fit on that support.

    Support is returned in decreasing order of |<y, atom>| (ties by lowest
    index).
    """
    matrix = dictionary.matrix
    d, K = matrix.shape
    y = as_vector(y, d)
    S = int(S)
    if not 0 <= S <= K:
        raise ValueError(f"sparsity must lie in [0, K={K}], got {S}")

    score = np.abs(matrix.T @ y)
    order = np.argsort(-score, kind="stable")[:S]

    state = CholeskyState.empty()
    status = SolveStatus.COMPLETED
    for j in order:
        try:
            state = cholesky_append(state, matrix, int(j))
        except RankDegeneracyError:
            status = SolveStatus.RANK_DEGENERATE
            break
    residual, coeffs = project_residual(state, matrix, y)
    return SolveResult(
        support=state.indices,
        coeffs=coeffs,
        residual_norms=(float(np.linalg.norm(y)), float(np.linalg.norm(residual))),
        status=status,
    )


def bp_support(solution, S):
    """Indices of the S largest |x_hat| entries, ties by lowest index."""
    x = np.asarray(solution.x_hat, dtype=float)
    S = int(S)
    if not 0 <= S <= x.size:
        raise ValueError(f"sparsity must lie in [0, K={x.size}], got {S}")
    order = np.argsort(-np.abs(x), kind="stable")[:S]
    return tuple(int(j) for j in order)


def _feasibility_projector(matrix):
    """Return f(x, y) -> x + A^T (AA^T)^-1 (y - Ax) with A^T (AA^T)^-1
    precomputed (AA^T is small and well conditioned for our dictionaries)."""
    pinv_t = matrix.T @ np.linalg.inv(matrix @ matrix.T)

    def project(x, y):
        return x + pinv_t @ (y - matrix @ x)

    return project


def bp_solve(dictionary, y, feas_tol=BP_FEAS_TOL, opt_tol=BP_OPT_TOL, max_iters=BP_MAX_ITERS):
    """Minimum-l1 solution of ``matrix @ x = y`` (basis pursuit).

    Primal-dual interior point method on the split formulation
    min 1'u s.t. -u <= x <= u, Ax = y.  Termination is certificate-based:
    the iterate is projected onto the affine constraint and accepted once
    its l1 value is within ``opt_tol`` of the lower bound y'w produced by
    the scaled dual vector w (||A'w||_inf <= 1).  That makes the contract
    ``||x_hat||_1 <= ||x*||_1 + opt_tol`` hold against every feasible x*.
    """
    matrix = dictionary.matrix
    d, K = matrix.shape
    y = as_vector(y, d)

    if float(np.linalg.norm(y)) == 0.0:
        return BpSolution(
            x_hat=np.zeros(K), primal_feasibility=0.0, l1_value=0.0,
            iterations=0, status=SolveStatus.COMPLETED, duality_gap=0.0,
        )

    project = _feasibility_projector(matrix)
    at = matrix.T

    def dual_bound(v):
        scale = max(1.0, float(np.abs(at @ v).max()))
        return abs(float(y @ v)) / scale

    def support_candidate(x_raw):
        """Exactly sparse candidate read off the large entries of x_raw,
        plus the lower bound from its interpolation dual certificate.

        If the least-squares fit on the candidate support reproduces y and
        the minimum-norm v solving Phi_I' v = sign(x_I) keeps all other
        correlations at or below 1, the candidate is optimal to rounding.
        """
        absx = np.abs(x_raw)
        cutoff = max(1e2 * np.finfo(float).eps, 1e-4 * float(absx.max()))
        idx = np.flatnonzero(absx > cutoff)
        if idx.size == 0 or idx.size > d:
            return None
        sub = matrix[:, idx]
        coeffs, _, _, _ = np.linalg.lstsq(sub, y, rcond=None)
        if float(np.linalg.norm(sub @ coeffs - y)) > 1e-10 * max(1.0, float(np.linalg.norm(y))):
            return None
        try:
            v = sub @ np.linalg.solve(sub.T @ sub, np.sign(coeffs))
        except np.linalg.LinAlgError:
            return None
        x_cand = np.zeros(K)
        x_cand[idx] = coeffs
        feas = float(np.linalg.norm(matrix @ x_cand - y))
        return x_cand, feas, float(np.abs(coeffs).sum()), dual_bound(v)

    def certify(x_raw, v):
        """Best feasible iterate and its certified optimality gap."""
        x_f = project(x_raw, y)
        feas = float(np.linalg.norm(matrix @ x_f - y))
        l1 = float(np.abs(x_f).sum())
        lower = dual_bound(v)
        x_best, feas_best, l1_best = x_f, feas, l1
        sparse = support_candidate(x_f)
        if sparse is not None:
            x_c, feas_c, l1_c, lower_c = sparse
            lower = max(lower, lower_c)
            if l1_c < l1_best:
                x_best, feas_best, l1_best = x_c, feas_c, l1_c
        return x_best, feas_best, l1_best, l1_best - lower

    # Strictly feasible start: least-norm solution, box opened slightly.
    x = project(np.zeros(K), y)
    absx = np.abs(x)
    u = 0.95 * absx + 0.10 * absx.max()
    f1 = x - u
    f2 = -x - u
    lam1 = -1.0 / f1
    lam2 = -1.0 / f2
    v = matrix @ (lam2 - lam1)
    mu = 10.0
    alpha, beta, biter = 0.01, 0.5, 48

    best = certify(x, v)
    iterations = 0
    status = SolveStatus.NOT_CONVERGED

    while iterations < max_iters:
        if best[1] <= feas_tol and best[3] <= opt_tol:
            status = SolveStatus.COMPLETED
            break
        iterations += 1

        sdg = -(f1 @ lam1 + f2 @ lam2)
        tau = mu * 2 * K / sdg
        oot = 1.0 / tau

        atv = at @ v
        w1 = -oot * (-1.0 / f1 + 1.0 / f2) - atv
        w2 = -1.0 - oot * (1.0 / f1 + 1.0 / f2)
        w3 = -(matrix @ x - y)

        lam1of1 = lam1 / f1
        lam2of2 = lam2 / f2
        sig1 = -lam1of1 - lam2of2
        sig2 = lam1of1 - lam2of2
        sigx = sig1 - sig2 ** 2 / sig1
        if np.abs(sigx).min() == 0.0 or not np.isfinite(sigx).all():
            break

        w1p = -(w3 - matrix @ (w1 / sigx - w2 * sig2 / (sigx * sig1)))
        h11p = matrix @ (at * (1.0 / sigx)[:, None])
        try:
            dv = np.linalg.solve(h11p, w1p)
        except np.linalg.LinAlgError:
            break
        dx = (w1 - w2 * sig2 / sig1 - at @ dv) / sigx
        du = (w2 - sig2 * dx) / sig1
        dlam1 = lam1of1 * (du - dx) - lam1 - oot / f1
        dlam2 = lam2of2 * (dx + du) - lam2 - oot / f2

        # Longest step keeping lam > 0 and f < 0.
        s = 1.0
        for val, dval in ((lam1, dlam1), (lam2, dlam2)):
            neg = dval < 0.0
            if neg.any():
                s = min(s, float((-val[neg] / dval[neg]).min()))
        for fval, dfval in ((f1, dx - du), (f2, -dx - du)):
            pos = dfval > 0.0
            if pos.any():
                s = min(s, float((-fval[pos] / dfval[pos]).min()))
        s *= 0.99

        rdual = np.concatenate([lam1 - lam2 + atv, 1.0 - lam1 - lam2])
        rcent = np.concatenate([-lam1 * f1, -lam2 * f2]) - oot
        rpri = matrix @ x - y
        resnorm = np.sqrt(
            np.linalg.norm(rdual) ** 2 + np.linalg.norm(rcent) ** 2 + np.linalg.norm(rpri) ** 2
        )

        ok = False
        for _ in range(biter):
            xp = x + s * dx
            up = u + s * du
            lam1p = lam1 + s * dlam1
            lam2p = lam2 + s * dlam2
            vp = v + s * dv
            f1p = xp - up
            f2p = -xp - up
            atvp = at @ vp
            rdp = np.concatenate([lam1p - lam2p + atvp, 1.0 - lam1p - lam2p])
            rcp = np.concatenate([-lam1p * f1p, -lam2p * f2p]) - oot
            rpp = matrix @ xp - y
            newnorm = np.sqrt(
                np.linalg.norm(rdp) ** 2 + np.linalg.norm(rcp) ** 2 + np.linalg.norm(rpp) ** 2
            )
            if (f1p < 0).all() and (f2p < 0).all() and newnorm <= (1 - alpha * s) * resnorm:
                ok = True
                break
            s *= beta
        if not ok:
            break

        x, u, v = xp, up, vp
        f1, f2, lam1, lam2 = f1p, f2p, lam1p, lam2p
        cand = certify(x, v)
        if cand[3] < best[3] or (cand[3] == best[3] and cand[1] < best[1]):
            best = cand

    if best[1] <= feas_tol and best[3] <= opt_tol:
        status = SolveStatus.COMPLETED
    x_f, feas, l1, gap = best
    return BpSolution(
        x_hat=x_f,
        primal_feasibility=feas,
        l1_value=l1,
        iterations=iterations,
        status=status,
        duality_gap=gap,
    )


def exhaustive_best(dictionary, y, S):
    """Best S-term approximation by brute force over all supports.

    Test oracle only: guarded to at most EXHAUSTIVE_GUARD candidate
    subsets.  Ties are resolved by lexicographic subset order (strict
    improvement keeps the earlier subset).
    """
    matrix = dictionary.matrix
    d, K = matrix.shape
    y = as_vector(y, d)
    S = int(S)
    if not 0 <= S <= K:
        raise ValueError(f"sparsity must lie in [0, K={K}], got {S}")
    n_subsets = math.comb(K, S)
    if n_subsets > EXHAUSTIVE_GUARD:
        raise ValueError(
            f"C({K},{S}) = {n_subsets} exceeds the exhaustive-search guard {EXHAUSTIVE_GUARD}"
        )
    if S == 0:
        return SolveResult(
            support=(), coeffs=np.zeros(0),
            residual_norms=(float(np.linalg.norm(y)),),
            status=SolveStatus.COMPLETED,
        )

    best_subset = None
    best_coeffs = None
    best_norm = np.inf
    for subset in combinations(range(K), S):
        sub = matrix[:, subset]
        coeffs, _, _, _ = np.linalg.lstsq(sub, y, rcond=None)
        rn = float(np.linalg.norm(y - sub @ coeffs))
        if rn < best_norm:
            best_subset, best_coeffs, best_norm = subset, coeffs, rn

    return SolveResult(
        support=tuple(best_subset),
        coeffs=best_coeffs,
        residual_norms=(float(np.linalg.norm(y)), best_norm),
        status=SolveStatus.COMPLETED,
    )
