"""Randomized extended block Kaczmarz solvers for general linear systems.

The library converges to the minimum Euclidean-norm least squares solution
of any real linear system, consistent or not, full rank or not, through a
family of randomized row/column-action methods, together with the
theoretical rate constants that govern them, synthetic problem generators,
MatrixMarket IO, and a benchmark CLI.
"""

from .factorizations import Svd, numerical_rank, pinv_apply, residual_split, svd
from .matrix import BlockView, Matrix, full_block
from .matrix_io import read_matrix_market, read_vector, write_matrix_market, write_vector
from .problems import ProblemInstance, ProblemMeta, gen_type1, gen_type2, make_rhs
from .rates import (
    RateConstants,
    TheoremBounds,
    compute_beta_max,
    compute_delta,
    compute_eta_rho,
    default_bound_epsilon,
    optimal_alpha,
    rate_constants,
    theorem_bounds,
)
from .sampling import (
    BlockSampler,
    Partition,
    Rng,
    WeightedSampler,
    build_sampler,
    contiguous_partition,
    singleton_partition,
)
from .solvers import (
    ALGORITHMS,
    RunTrace,
    SolverConfig,
    SolverContext,
    SolverState,
    StoppingRule,
    default_partitions,
    prepare,
    run,
    step_dsbgs,
    step_rabk,
    step_rbk,
    step_rdbk,
    step_rebk,
    step_rek,
    step_rk,
)

__all__ = [
    "ALGORITHMS",
    "BlockSampler",
    "BlockView",
    "Matrix",
    "Partition",
    "ProblemInstance",
    "ProblemMeta",
    "RateConstants",
    "Rng",
    "RunTrace",
    "SolverConfig",
    "SolverContext",
    "SolverState",
    "StoppingRule",
    "Svd",
    "TheoremBounds",
    "WeightedSampler",
    "build_sampler",
    "compute_beta_max",
    "compute_delta",
    "compute_eta_rho",
    "contiguous_partition",
    "default_bound_epsilon",
    "default_partitions",
    "full_block",
    "gen_type1",
    "gen_type2",
    "make_rhs",
    "numerical_rank",
    "optimal_alpha",
    "pinv_apply",
    "prepare",
    "rate_constants",
    "read_matrix_market",
    "read_vector",
    "residual_split",
    "run",
    "singleton_partition",
    "step_dsbgs",
    "step_rabk",
    "step_rbk",
    "step_rdbk",
    "step_rebk",
    "step_rek",
    "step_rk",
    "svd",
    "theorem_bounds",
    "write_matrix_market",
    "write_vector",
]

__version__ = "0.1.0"
