"""sparsekit: sparse approximation over coherent dictionaries.

Recovery algorithms (OMP, basis pursuit, thresholding), the Dirac-DCT
dictionary constructions, geometric sparse-signal models, evaluators for
the coherence-based success conditions, and a seeded Monte Carlo harness
for (sparsity, decay) phase diagrams.
"""

from .dictionaries import (
    Dictionary,
    build_dirac_dct,
    build_dirac_dct_random,
    coherence,
    delta,
    dirac_dct_coherence,
    read_dictionary_csv,
    write_dictionary_csv,
)
from .estimators import SparseCoder
from .experiments import (
    ExperimentConfig,
    PhaseGrid,
    read_csv,
    run_noiseless,
    run_noisy,
    write_csv,
)
from .linops import (
    CholeskyState,
    PowerIterationError,
    RankDegeneracyError,
    cholesky_append,
    gram,
    project_residual,
    sym_op_norm,
)
from .signals import (
    CoefficientProfile,
    SparseSignal,
    add_noise,
    draw_signs,
    draw_support,
    geometric_profile,
    snr_to_nu,
    stream,
    synthesize,
)
from .solvers import (
    BpSolution,
    SolveResult,
    SolveStatus,
    bp_solve,
    bp_support,
    exhaustive_best,
    omp,
    thresholding,
)
from .theory import (
    BoundReport,
    DecayParams,
    geometric_to_decay_params,
    noiseless_condition,
    noisy_conditions,
    recoverable_count,
    worst_case_conditions,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BpSolution",
    "CholeskyState",
    "CoefficientProfile",
    "DecayParams",
    "Dictionary",
    "ExperimentConfig",
    "PhaseGrid",
    "PowerIterationError",
    "RankDegeneracyError",
    "SolveResult",
    "SolveStatus",
    "SparseCoder",
    "SparseSignal",
    "add_noise",
    "bp_solve",
    "bp_support",
    "build_dirac_dct",
    "build_dirac_dct_random",
    "cholesky_append",
    "coherence",
    "delta",
    "dirac_dct_coherence",
    "draw_signs",
    "draw_support",
    "exhaustive_best",
    "geometric_profile",
    "geometric_to_decay_params",
    "gram",
    "noiseless_condition",
    "noisy_conditions",
    "omp",
    "project_residual",
    "read_csv",
    "read_dictionary_csv",
    "recoverable_count",
    "run_noiseless",
    "run_noisy",
    "snr_to_nu",
    "stream",
    "sym_op_norm",
    "synthesize",
    "thresholding",
    "worst_case_conditions",
    "write_csv",
    "write_dictionary_csv",
]
