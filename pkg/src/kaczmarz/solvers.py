"""Seven randomized row- and column-action solvers behind one stepping interface.

Algorithms: rk, rek, rbk, rdbk, rabk, dsbgs, rebk.  The extended variants
(rek, rdbk, rebk) carry a second sequence z estimating the component of b
orthogonal to range(A), which is what lets them reach the least-squares
solution of inconsistent systems.

Stream layout: every iteration consumes exactly two draws from the run's
stream, a column-position draw followed by a row-position draw, whether or
not the algorithm uses both.  Algorithms without a column sweep discard the
first draw.  The fixed layout makes runs of different algorithms on the same
seed replay-comparable: iteration k selects the same row block everywhere.

Per-block data (materialized blocks, squared norms, scaled stepsizes, and
for the projection variants the block SVDs) is computed once at setup and
shared read-only; a run itself is strictly sequential.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .factorizations import Svd, pinv_apply, svd
from .matrix import Matrix
from .problems import ProblemInstance
from .rates import compute_beta_max
from .sampling import (
    Partition,
    Rng,
    WeightedSampler,
    build_sampler,
    contiguous_partition,
    singleton_partition,
)

ALGORITHMS = ("rk", "rek", "rbk", "rdbk", "rabk", "dsbgs", "rebk")

_EXTENDED = frozenset({"rek", "rdbk", "rebk"})
_NEEDS_COL_PARTITION = frozenset({"rdbk", "dsbgs", "rebk"})
_NEEDS_ROW_PARTITION = frozenset({"rbk", "rdbk", "rabk", "dsbgs", "rebk"})
_PROJECTION = frozenset({"rbk", "rdbk"})
_STEPSIZE_RATE_ALGOS = frozenset({"rk", "rek", "rabk", "rebk"})

OutOfRegimeWarning = "stepsize at or beyond 2/beta_max: outside the guaranteed mean-square regime"


@dataclass
class StoppingRule:
    """When to declare a run converged.

    oracle_error compares ||x - x*|| against tol; residual_proxy compares
    ||A^T (A x - b + z)|| / (||A||_F ||b||) (z = 0 for non-extended
    algorithms); max_iters_only never stops early.  Checks happen every
    check_stride iterations and at iteration zero.
    """

    mode: str = "oracle_error"
    tol: float = 1e-5
    check_stride: int = 1

    def __post_init__(self):
        if self.mode not in ("oracle_error", "residual_proxy", "max_iters_only"):
            raise ValueError(f"unknown stopping mode {self.mode!r}")
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        if self.check_stride < 1:
            raise ValueError("check_stride must be at least 1")


@dataclass
class SolverConfig:
    algorithm: str
    alpha: float = 1.0
    row_partition: Partition | None = None
    col_partition: Partition | None = None
    seed: int = 0
    max_iters: int = 1_000_000
    stop: StoppingRule = field(default_factory=StoppingRule)
    x0: np.ndarray | None = None
    z0: np.ndarray | None = None
    record_errors: bool = False
    beta_max: float | None = None  # precomputed, skips the setup-time estimate


@dataclass
class SolverState:
    x: np.ndarray
    z: np.ndarray | None
    k: int
    rng: Rng


@dataclass
class RunTrace:
    """Outcome of one run.

    iters is the first iteration whose check satisfied the rule (the ITER
    statistic), or max_iters when it never did.  errors/checkpoints hold the
    per-check history when recording was requested.  wall_time covers the
    iteration loop only; per-block setup is excluded.
    """

    iters: int
    converged: bool
    wall_time: float
    final_error: float | None
    errors: np.ndarray | None = None
    checkpoints: np.ndarray | None = None
    warnings: tuple[str, ...] = ()


def _materialize_blocks(a: Matrix, p: Partition):
    blocks = [a.block_matrix(a.block(p.axis, idx)) for idx in p.blocks]
    selectors = [
        slice(idx.start, idx.stop) if isinstance(idx, range) else idx for idx in p.blocks
    ]
    return blocks, selectors


class SolverContext:
    """Prepared, immutable per-run data shared by the step functions."""

    def __init__(self, problem: ProblemInstance, config: SolverConfig):
        algo = config.algorithm.lower()
        if algo not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {config.algorithm!r}")
        if config.alpha <= 0.0:
            raise ValueError("alpha must be positive")
        if algo in _PROJECTION and config.alpha != 1.0:
            raise ValueError(f"{algo} applies exact projections and has no stepsize")
        if config.max_iters < 0:
            raise ValueError("max_iters must be nonnegative")

        self.problem = problem
        self.config = config
        self.algorithm = algo
        self.a = problem.a
        self.b = np.asarray(problem.b, dtype=np.float64)
        if self.b.shape != (self.a.rows,):
            raise ValueError("right-hand side length does not match the matrix")
        self.alpha = float(config.alpha)
        self.extended = algo in _EXTENDED

        row_p = self._resolve_partition(config.row_partition, "row", self.a.rows)
        self.row_partition = row_p
        self.row_blocks, self.row_selectors = _materialize_blocks(self.a, row_p)
        self.row_sampler = build_sampler(self.a, row_p)
        self.row_scales = [float(self.alpha / w) for w in self.row_sampler.weights]
        self.b_blocks = [self.b[sel] for sel in self.row_selectors]

        self.col_partition = None
        self.col_blocks = None
        self.col_selectors = None
        self.col_sampler = None
        self.col_scales = None
        if algo in _NEEDS_COL_PARTITION or algo == "rek":
            col_p = self._resolve_partition(config.col_partition, "col", self.a.cols)
            self.col_partition = col_p
            self.col_blocks, self.col_selectors = _materialize_blocks(self.a, col_p)
            self.col_sampler = build_sampler(self.a, col_p)
            self.col_scales = [float(self.alpha / w) for w in self.col_sampler.weights]

        self.row_svds: list[Svd] | None = None
        self.col_range_bases: list[np.ndarray] | None = None
        if algo in ("rbk", "rdbk"):
            self.row_svds = [svd(block) for block in self.row_blocks]
        if algo == "rdbk":
            self.col_range_bases = [svd(block).u for block in self.col_blocks]

        self.dsbgs_conditionals = None
        self.dsbgs_submatrices = None
        self.dsbgs_scales = None
        if algo == "dsbgs":
            self._build_dsbgs_tables()

        self.warnings: list[str] = []
        self.beta_max = config.beta_max
        if self.beta_max is None and algo in _STEPSIZE_RATE_ALGOS:
            col_p = self.col_partition or singleton_partition(self.a.cols, "col")
            self.beta_max = compute_beta_max(self.a, row_p, col_p)[2]
        if self.beta_max is not None and self.alpha >= 2.0 / self.beta_max:
            self.warnings.append(OutOfRegimeWarning)

        self._step = _STEPPERS[algo]

    def _resolve_partition(self, p: Partition | None, axis: str, axis_len: int) -> Partition:
        algo = self.algorithm
        if algo in ("rk", "rek"):
            if p is None:
                return singleton_partition(axis_len, axis)
            if not p.is_singleton():
                raise ValueError(f"{algo} uses singleton partitions; got blocks of size > 1")
        elif p is None:
            raise ValueError(f"{algo} needs a {axis} partition")
        if p.axis != axis:
            raise ValueError(f"partition axis {p.axis!r} where {axis!r} expected")
        if p.axis_len != axis_len:
            raise ValueError(f"partition covers {p.axis_len} {axis}s, matrix has {axis_len}")
        return p

    def _build_dsbgs_tables(self):
        """Joint submatrix law P(i, j) ~ ||A[I_i, J_j]||_F^2, factored as the
        column marginal (the standard column sampler) times a per-column
        conditional over row blocks, so the two-draw stream layout holds."""
        s, t = len(self.row_partition), len(self.col_partition)
        subs = [[None] * t for _ in range(s)]
        weights = np.zeros((s, t))
        for i, rsel in enumerate(self.row_selectors):
            for j, csel in enumerate(self.col_selectors):
                sub = self.row_blocks[i][:, csel]
                subs[i][j] = sub
                if hasattr(sub, "toarray"):
                    w = float(sub.data @ sub.data) if sub.nnz else 0.0
                else:
                    flat = np.ravel(sub)
                    w = float(flat @ flat)
                weights[i, j] = w
        self.dsbgs_submatrices = subs
        self.dsbgs_scales = [
            [float(self.alpha / w) if w > 0.0 else None for w in row] for row in weights
        ]
        conditionals = []
        for j in range(t):
            alive = np.flatnonzero(weights[:, j] > 0.0)
            conditionals.append((WeightedSampler(weights[alive, j]), alive))
        self.dsbgs_conditionals = conditionals

    def initial_state(self) -> SolverState:
        n, m = self.a.cols, self.a.rows
        if self.config.x0 is None:
            x = np.zeros(n)
        else:
            x = np.array(self.config.x0, dtype=np.float64, copy=True)
            if x.shape != (n,):
                raise ValueError(f"x0 must have length {n}")
            self._check_start_hypotheses(x=x)
        z = None
        if self.extended:
            if self.config.z0 is None:
                z = self.b.copy()
            else:
                z = np.array(self.config.z0, dtype=np.float64, copy=True)
                if z.shape != (m,):
                    raise ValueError(f"z0 must have length {m}")
                self._check_start_hypotheses(z=z)
        return SolverState(x=x, z=z, k=0, rng=Rng(self.config.seed))

    def _check_start_hypotheses(self, x=None, z=None):
        # flagged, not rejected: the expected-error theory permits any start
        f = self.problem.oracle
        if f is None:
            return
        if x is not None and np.any(x):
            drift = np.linalg.norm(x - f.v @ (f.v.T @ x))
            if drift > 1e-8 * np.linalg.norm(x):
                self.warnings.append("x0 outside range(A^T): convergence hypotheses not met")
        if z is not None:
            w = z - self.b
            if np.any(w):
                drift = np.linalg.norm(w - f.u @ (f.u.T @ w))
                if drift > 1e-8 * np.linalg.norm(w):
                    self.warnings.append("z0 outside b + range(A): convergence hypotheses not met")

    def step(self, state: SolverState) -> SolverState:
        return self._step(state, self)


def prepare(problem: ProblemInstance, config: SolverConfig) -> SolverContext:
    """Validate a configuration and cache every per-block quantity it needs."""
    return SolverContext(problem, config)


# -- update kernels ----------------------------------------------------------
#
# All weighted updates go through these two helpers so that degenerate cases
# coincide bit for bit: rek with singleton blocks retraces rebk, and rebk
# with z identically zero retraces rabk on the same stream.


def _weighted_col_update(z: np.ndarray, block, scale: float) -> None:
    """z <- z - scale * B (B^T z) for a column block B."""
    u = block.T @ z
    z -= scale * (block @ u)


def _weighted_row_update(x: np.ndarray, block, scale: float, b_blk, z_blk=None) -> None:
    """x <- x - scale * B^T (B x - b_I [+ z_I]) for a row block B."""
    r = block @ x
    r -= b_blk
    if z_blk is not None:
        r += z_blk
    x -= scale * (block.T @ r)


def _discard_col_draw(state: SolverState) -> None:
    # keeps the two-draw iteration layout for algorithms without a column sweep
    state.rng.uniform()


# -- step functions ----------------------------------------------------------


def step_rk(state: SolverState, ctx: SolverContext) -> SolverState:
    """One row projection scaled by alpha, row sampled by squared norm."""
    _discard_col_draw(state)
    i = ctx.row_sampler.sample(state.rng)
    _weighted_row_update(state.x, ctx.row_blocks[i], ctx.row_scales[i], ctx.b_blocks[i])
    state.k += 1
    return state


def step_rabk(state: SolverState, ctx: SolverContext) -> SolverState:
    """Norm-weighted average of the row projections in one block."""
    _discard_col_draw(state)
    i = ctx.row_sampler.sample(state.rng)
    _weighted_row_update(state.x, ctx.row_blocks[i], ctx.row_scales[i], ctx.b_blocks[i])
    state.k += 1
    return state


def step_rebk(state: SolverState, ctx: SolverContext) -> SolverState:
    """Column-block sweep on z, then row-block sweep on x against b - z."""
    j = ctx.col_sampler.sample(state.rng)
    _weighted_col_update(state.z, ctx.col_blocks[j], ctx.col_scales[j])
    i = ctx.row_sampler.sample(state.rng)
    _weighted_row_update(
        state.x,
        ctx.row_blocks[i],
        ctx.row_scales[i],
        ctx.b_blocks[i],
        state.z[ctx.row_selectors[i]],
    )
    state.k += 1
    return state


def step_rek(state: SolverState, ctx: SolverContext) -> SolverState:
    """Single-column z sweep then single-row x sweep (the singleton case)."""
    return step_rebk(state, ctx)


def step_rbk(state: SolverState, ctx: SolverContext) -> SolverState:
    """Exact projection onto the sampled row block's solution set."""
    _discard_col_draw(state)
    i = ctx.row_sampler.sample(state.rng)
    r = ctx.row_blocks[i] @ state.x
    r -= ctx.b_blocks[i]
    state.x -= pinv_apply(ctx.row_svds[i], r)
    state.k += 1
    return state


def step_rdbk(state: SolverState, ctx: SolverContext) -> SolverState:
    """Projection of z off the sampled column block's range, then a block
    least-squares correction of x against b - z."""
    j = ctx.col_sampler.sample(state.rng)
    basis = ctx.col_range_bases[j]
    state.z -= basis @ (basis.T @ state.z)
    i = ctx.row_sampler.sample(state.rng)
    r = ctx.row_blocks[i] @ state.x
    r -= ctx.b_blocks[i]
    r += state.z[ctx.row_selectors[i]]
    state.x -= pinv_apply(ctx.row_svds[i], r)
    state.k += 1
    return state


def step_dsbgs(state: SolverState, ctx: SolverContext) -> SolverState:
    """Update the sampled column coordinates from the sampled row residuals."""
    j = ctx.col_sampler.sample(state.rng)
    conditional, alive = ctx.dsbgs_conditionals[j]
    i = int(alive[conditional.sample(state.rng)])
    r = ctx.row_blocks[i] @ state.x
    r -= ctx.b_blocks[i]
    u = ctx.dsbgs_submatrices[i][j].T @ r
    state.x[ctx.col_selectors[j]] -= ctx.dsbgs_scales[i][j] * u
    state.k += 1
    return state


_STEPPERS = {
    "rk": step_rk,
    "rek": step_rek,
    "rbk": step_rbk,
    "rdbk": step_rdbk,
    "rabk": step_rabk,
    "dsbgs": step_dsbgs,
    "rebk": step_rebk,
}


# -- driving a run -----------------------------------------------------------


def _error_fn(ctx: SolverContext):
    stop = ctx.config.stop
    if stop.mode == "oracle_error":
        x_star = ctx.problem.x_star
        if x_star is None:
            raise ValueError("oracle_error stopping needs a problem with x_star")
        x_star = np.asarray(x_star, dtype=np.float64)

        def oracle_error(state: SolverState) -> float:
            return float(np.linalg.norm(state.x - x_star))

        return oracle_error
    if stop.mode == "residual_proxy":
        scale = float(np.sqrt(ctx.a.frobenius_sq()) * np.linalg.norm(ctx.b))
        if scale == 0.0:
            scale = 1.0

        def residual_proxy(state: SolverState) -> float:
            r = ctx.a.matvec(state.x) - ctx.b
            if state.z is not None:
                r += state.z
            return float(np.linalg.norm(ctx.a.rmatvec(r))) / scale

        return residual_proxy
    return None


def run(problem: ProblemInstance, config: SolverConfig) -> RunTrace:
    """Iterate until the stopping rule fires or max_iters is reached."""
    ctx = prepare(problem, config)
    state = ctx.initial_state()
    stop = config.stop
    error_of = _error_fn(ctx)
    record = config.record_errors and error_of is not None
    errors: list[float] = []
    checkpoints: list[int] = []

    def check(k: int) -> tuple[float | None, bool]:
        if error_of is None:
            return None, False
        err = error_of(state)
        if record:
            errors.append(err)
            checkpoints.append(k)
        return err, err <= stop.tol

    final_error, converged = check(0)
    iters = 0
    start = time.perf_counter()
    if not converged:
        step = ctx.step
        stride = stop.check_stride
        for k in range(1, config.max_iters + 1):
            step(state)
            if k % stride == 0:
                err, done = check(k)
                final_error = err
                if done:
                    converged = True
                    iters = k
                    break
        else:
            iters = config.max_iters
            if error_of is not None and config.max_iters % stride != 0:
                final_error, converged = check(config.max_iters)
                if converged:
                    iters = config.max_iters
    wall = time.perf_counter() - start
    return RunTrace(
        iters=iters,
        converged=converged,
        wall_time=wall,
        final_error=final_error,
        errors=np.asarray(errors) if record else None,
        checkpoints=np.asarray(checkpoints, dtype=np.int64) if record else None,
        warnings=tuple(ctx.warnings),
    )


def default_partitions(a: Matrix, tau_row: int, tau_col: int | None = None):
    """Contiguous row and column partitions with the benchmark block size."""
    row = contiguous_partition(a.rows, min(tau_row, a.rows), "row")
    col = contiguous_partition(a.cols, min(tau_col or tau_row, a.cols), "col")
    return row, col
