"""Random-projection sketching with Tracy-Widom success-rate predictions."""

from ._backend import BACKEND
from ._version import __version__
from .datasets import load_dataset, synth_dataset, synth_problem
from .embedding import (
    EmbeddingTrialSet,
    LeverageSummary,
    OrthonormalFactor,
    bootstrap_rows,
    distortion,
    empirical_embedding_cdf,
    leverage_summary,
    simulate_wishart_trials,
    sketch_embedding_trials,
    thin_svd_factor,
)
from .errors import (
    ConfigError,
    DataFileError,
    DomainError,
    RankError,
    ShapeError,
)
from .experiments import ExperimentConfig, ResultRecord, run_experiment
from .matrix import DenseMatrix
from .rmt import (
    AsymptoticRegime,
    TWApproxConstants,
    UniformEmbeddingBound,
    constants_max,
    constants_min,
    convergence_prob_approx,
    eigenvalue_limits,
    embedding_prob_approx,
    uniform_embedding_lower_bound,
)
from .sketch import (
    SketchKind,
    SketchOperator,
    SketchSpec,
    apply_sketch,
    build_sketch,
    fwht_inplace,
    hadamard_matrix,
)
from .solver import (
    ConvergenceRate,
    LeastSquaresProblem,
    SolveReport,
    convergence_experiment,
    exact_solve,
    iterate_gram,
    iterate_least_squares,
    sketched_solve,
    wilson_interval,
)
from .tracywidom import TWTable, get_table, tw_cdf, tw_quantile

__all__ = [
    "BACKEND",
    "__version__",
    "AsymptoticRegime",
    "ConfigError",
    "ConvergenceRate",
    "DataFileError",
    "DenseMatrix",
    "DomainError",
    "EmbeddingTrialSet",
    "ExperimentConfig",
    "LeastSquaresProblem",
    "LeverageSummary",
    "OrthonormalFactor",
    "RankError",
    "ResultRecord",
    "ShapeError",
    "SketchKind",
    "SketchOperator",
    "SketchSpec",
    "SolveReport",
    "TWApproxConstants",
    "TWTable",
    "UniformEmbeddingBound",
    "apply_sketch",
    "bootstrap_rows",
    "build_sketch",
    "constants_max",
    "constants_min",
    "convergence_experiment",
    "convergence_prob_approx",
    "distortion",
    "eigenvalue_limits",
    "embedding_prob_approx",
    "empirical_embedding_cdf",
    "exact_solve",
    "fwht_inplace",
    "get_table",
    "hadamard_matrix",
    "iterate_gram",
    "iterate_least_squares",
    "leverage_summary",
    "load_dataset",
    "run_experiment",
    "simulate_wishart_trials",
    "sketch_embedding_trials",
    "sketched_solve",
    "synth_dataset",
    "synth_problem",
    "thin_svd_factor",
    "tw_cdf",
    "tw_quantile",
    "uniform_embedding_lower_bound",
    "wilson_interval",
]
