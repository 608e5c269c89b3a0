"""Monte Carlo harness: noiseless full-support-recovery phase diagrams and
noisy partial-recovery grids over (sparsity, decay) cells, with seeded
per-trial streams and deterministic CSV output.

Reproducibility contract: every trial draws its signal from a stream keyed
by (master_seed, namespace, S, alpha, trial), so results are identical for
any parallelism degree, and noisy runs share their signals with noiseless
runs under the same master seed.
"""

import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .dictionaries import (
    CUSTOM,
    DIRAC_DCT,
    DIRAC_DCT_RANDOM,
    Dictionary,
    build_dirac_dct,
    build_dirac_dct_random,
)
from .signals import add_noise, draw_signs, draw_support, geometric_profile, snr_to_nu, stream, synthesize
from .solvers import SolveStatus, bp_solve, bp_support, omp, thresholding
from .theory import recoverable_count

ALGORITHMS = ("bp", "omp", "thr")
CSV_HEADER = "experiment,dict,d,K,S,alpha,algorithm,metric,value,trials,master_seed"

# Residual tolerance for the per-trial OMP runs in the noiseless experiment.
NOISELESS_RESIDUAL_TOL = 1e-9

# Stream namespaces under the master seed.
_NS_DICTIONARY = 0
_NS_SIGNAL = 1
_NS_NOISE = 2

SEED_SCHEME = (
    "Philox(SeedSequence(master_seed, spawn_key=(ns, S, round(alpha*1e9), trial))) "
    "with ns: 0=dictionary (key (0,)), 1=signal, 2=noise"
)


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    d: int
    dict_kind: str
    alpha_grid: tuple
    s_grid: tuple
    trials: int
    master_seed: int
    snr: float = None
    algorithms: tuple = ALGORITHMS
    custom_dictionary: Dictionary = None

    def __post_init__(self):
        object.__setattr__(self, "alpha_grid", tuple(float(a) for a in self.alpha_grid))
        object.__setattr__(self, "s_grid", tuple(int(s) for s in self.s_grid))
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        if self.dict_kind not in (DIRAC_DCT, DIRAC_DCT_RANDOM, CUSTOM):
            raise ValueError(f"unknown dictionary kind {self.dict_kind!r}")
        if self.dict_kind == CUSTOM:
            if self.custom_dictionary is None:
                raise ValueError("custom dictionary kind requires custom_dictionary")
            if self.custom_dictionary.d != self.d:
                raise ValueError(
                    f"custom dictionary has d={self.custom_dictionary.d}, config says {self.d}"
                )
        elif self.custom_dictionary is not None:
            raise ValueError("custom_dictionary is only valid with the custom kind")
        if not self.alpha_grid or not self.s_grid:
            raise ValueError("alpha and sparsity grids must be non-empty")
        for a in self.alpha_grid:
            if not 0.0 < a <= 1.0:
                raise ValueError(f"alpha values must lie in (0, 1], got {a}")
        for s in self.s_grid:
            if not 1 <= s <= self.d:
                raise ValueError(f"sparsity values must lie in [1, d={self.d}], got {s}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        for alg in self.algorithms:
            if alg not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {alg!r}")
        if self.snr is not None and not self.snr > 0:
            raise ValueError(f"SNR must be positive, got {self.snr}")


@dataclass
class CellResult:
    metrics: dict
    trials: int
    diagnostics: dict = field(default_factory=dict)


@dataclass
class PhaseGrid:
    """(S, alpha, algorithm) -> per-cell statistics, plus seed provenance."""

    config: ExperimentConfig
    K: int
    cells: dict
    seed_scheme: str = SEED_SCHEME

    def value(self, S, alpha, algorithm, metric):
        return self.cells[(int(S), float(alpha), algorithm)].metrics[metric]


@lru_cache(maxsize=8)
def dictionary_for(kind, d, master_seed):
    """One dictionary realization per (kind, d, master_seed).

    Random atoms come from the dictionary namespace of the master seed, so
    a run's realization is reproducible from its CSV metadata.
    """
    if kind == DIRAC_DCT:
        return build_dirac_dct(d)
    return build_dirac_dct_random(d, stream(master_seed, _NS_DICTIONARY))


def experiment_dictionary(cfg):
    """The single dictionary realization used for every trial of a run."""
    if cfg.dict_kind == CUSTOM:
        return cfg.custom_dictionary
    return dictionary_for(cfg.dict_kind, cfg.d, cfg.master_seed)


def _alpha_key(alpha):
    return int(round(alpha * 1e9))


def trial_signal(cfg, dictionary, S, alpha, profile, t):
    rng = stream(cfg.master_seed, _NS_SIGNAL, S, _alpha_key(alpha), t)
    support = draw_support(dictionary.K, S, rng)
    signs = draw_signs(S, rng)
    return synthesize(dictionary, profile, support, signs)


def leading_correct(selection_order, true_support):
    """Number of correct selections before the first incorrect one."""
    good = set(true_support)
    n = 0
    for j in selection_order:
        if j not in good:
            break
        n += 1
    return n


def _noiseless_cell(cfg, S, alpha):
    dictionary = experiment_dictionary(cfg)
    profile = geometric_profile(S, alpha)
    successes = {alg: 0 for alg in cfg.algorithms}
    diagnostics = {"rank_degenerate": 0, "not_converged": 0}
    for t in range(cfg.trials):
        sig = trial_signal(cfg, dictionary, S, alpha, profile, t)
        truth = set(sig.support)
        for alg in cfg.algorithms:
            if alg == "omp":
                res = omp(dictionary, sig.clean, max_iters=S, residual_tol=NOISELESS_RESIDUAL_TOL)
                if res.status is SolveStatus.RANK_DEGENERATE:
                    diagnostics["rank_degenerate"] += 1
                ok = set(res.support) == truth
            elif alg == "thr":
                res = thresholding(dictionary, sig.clean, S)
                if res.status is SolveStatus.RANK_DEGENERATE:
                    diagnostics["rank_degenerate"] += 1
                ok = set(res.support) == truth
            else:
                sol = bp_solve(dictionary, sig.clean)
                if sol.status is not SolveStatus.COMPLETED:
                    diagnostics["not_converged"] += 1
                    ok = False
                else:
                    ok = set(bp_support(sol, S)) == truth
            if ok:
                successes[alg] += 1
    payload = {}
    for alg in cfg.algorithms:
        payload[alg] = CellResult(
            metrics={"success": successes[alg] / cfg.trials},
            trials=cfg.trials,
            diagnostics=dict(diagnostics),
        )
    return payload


def _noisy_cell(cfg, S, alpha):
    dictionary = experiment_dictionary(cfg)
    profile = geometric_profile(S, alpha)
    nu = snr_to_nu(cfg.snr, cfg.d)
    correct_sum = 0
    diagnostics = {"rank_degenerate": 0, "not_converged": 0}
    for t in range(cfg.trials):
        sig = trial_signal(cfg, dictionary, S, alpha, profile, t)
        noisy = add_noise(sig, nu, stream(cfg.master_seed, _NS_NOISE, S, _alpha_key(alpha), t))
        res = omp(dictionary, noisy.observed, max_iters=S, residual_tol=0.0)
        if res.status is SolveStatus.RANK_DEGENERATE:
            diagnostics["rank_degenerate"] += 1
        correct_sum += leading_correct(res.support, sig.support)
    recoverable = recoverable_count(profile, nu, dictionary.K) / S
    return {
        "omp": CellResult(
            metrics={
                "recovered_fraction": correct_sum / (S * cfg.trials),
                "recoverable_fraction": recoverable,
            },
            trials=cfg.trials,
            diagnostics=diagnostics,
        )
    }


def _cell_worker(args):
    cfg, S, alpha, noisy = args
    if noisy:
        return (S, alpha), _noisy_cell(cfg, S, alpha)
    return (S, alpha), _noiseless_cell(cfg, S, alpha)


def _run(cfg, noisy, jobs):
    tasks = [(cfg, S, alpha, noisy) for S in cfg.s_grid for alpha in cfg.alpha_grid]
    if jobs is None or jobs <= 1 or len(tasks) == 1:
        results = map(_cell_worker, tasks)
    else:
        executor = ProcessPoolExecutor(max_workers=jobs)
        try:
            results = list(executor.map(_cell_worker, tasks, chunksize=1))
        finally:
            executor.shutdown()
    cells = {}
    for (S, alpha), payload in results:
        for alg, cell in payload.items():
            cells[(S, alpha, alg)] = cell
    return PhaseGrid(config=cfg, K=experiment_dictionary(cfg).K, cells=cells)


def run_noiseless(cfg, jobs=1):
    """Full-support recovery rates for every configured algorithm.

    Success is exact support-set equality; OMP runs for exactly S
    iterations (residual tolerance NOISELESS_RESIDUAL_TOL), basis pursuit
    supports are the S largest |x_hat| entries.
    """
    if cfg.snr is not None:
        raise ValueError("noiseless run requires a config without SNR")
    return _run(cfg, noisy=False, jobs=jobs)


def run_noisy(cfg, jobs=1):
    """Partial-recovery fractions for OMP under Gaussian noise.

    Per trial, the score is the number of correct selections before the
    first wrong one, divided by S; each cell also reports the fraction of
    coefficients above the noise level.
    """
    if cfg.snr is None:
        raise ValueError("noisy run requires a config with SNR")
    if tuple(cfg.algorithms) != ("omp",):
        raise ValueError("noisy runs support only the omp algorithm")
    return _run(cfg, noisy=True, jobs=jobs)


def _fmt(x):
    return f"{x:.6g}"


def write_csv(grid, path):
    """Deterministic CSV dump: one row per cell metric.

    Header is exactly CSV_HEADER; floats carry 6 significant digits; rows
    are sorted by (S, alpha, algorithm, metric).
    """
    cfg = grid.config
    experiment = "noiseless" if cfg.snr is None else "noisy"
    lines = [CSV_HEADER]
    for (S, alpha, alg) in sorted(grid.cells):
        cell = grid.cells[(S, alpha, alg)]
        for metric in sorted(cell.metrics):
            lines.append(
                ",".join(
                    [
                        experiment,
                        cfg.dict_kind,
                        str(cfg.d),
                        str(grid.K),
                        str(S),
                        _fmt(alpha),
                        alg,
                        metric,
                        _fmt(cell.metrics[metric]),
                        str(cell.trials),
                        str(cfg.master_seed),
                    ]
                )
            )
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"failed to write phase grid to {path}: {exc}") from exc


def read_csv(path):
    """Parse a write_csv file back into typed row dicts."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise OSError(f"failed to read phase grid from {path}: {exc}") from exc
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: line 1: expected header {CSV_HEADER!r}")
    rows = []
    for i, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 11:
            raise ValueError(f"{path}: line {i}: expected 11 columns, got {len(parts)}")
        try:
            rows.append(
                {
                    "experiment": parts[0],
                    "dict": parts[1],
                    "d": int(parts[2]),
                    "K": int(parts[3]),
                    "S": int(parts[4]),
                    "alpha": float(parts[5]),
                    "algorithm": parts[6],
                    "metric": parts[7],
                    "value": float(parts[8]),
                    "trials": int(parts[9]),
                    "master_seed": int(parts[10]),
                }
            )
        except ValueError as exc:
            raise ValueError(f"{path}: line {i}: {exc}") from exc
    return rows


def binomial_band(p, n, n_sigma=3):
    """Half-width of the +/- n_sigma binomial band around a rate p."""
    return n_sigma * np.sqrt(max(p * (1.0 - p), 0.0) / n)


def bp_alpha_spread(grid, S):
    """(max - min) of BP success across the alpha grid at fixed S, and the
    pooled binomial band it is expected to stay within.

    The band is two-sided: 2 * 3 * sqrt(p_pool (1 - p_pool) / N).  Intended
    as a flag (warning) at small trial counts rather than a hard failure.
    """
    rates = [grid.value(S, a, "bp", "success") for a in grid.config.alpha_grid]
    pooled = float(np.mean(rates))
    band = 2.0 * binomial_band(pooled, grid.config.trials)
    spread = max(rates) - min(rates)
    return spread, band


def warn_bp_alpha_dependence(grid):
    """Emit a warning for every S whose BP rates vary more than the band."""
    flagged = []
    if "bp" not in grid.config.algorithms:
        return flagged
    for S in grid.config.s_grid:
        spread, band = bp_alpha_spread(grid, S)
        if spread > band:
            flagged.append(S)
            warnings.warn(
                f"BP success varies with alpha at S={S}: spread {spread:.4f} > band {band:.4f}"
            )
    return flagged
