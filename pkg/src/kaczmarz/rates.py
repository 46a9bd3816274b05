"""Theoretical convergence-rate constants and closed-form error bounds.

Conventions: F2 is the squared Frobenius norm of the system matrix,
sigma1_sq / sigma_r_sq its largest and smallest positive squared singular
values, and the per-partition beta is the worst spectral-to-Frobenius
squared-norm ratio over blocks.  Stepsizes below 2 / beta_max sit in the
guaranteed mean-square convergence window; larger ones are allowed but
flagged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .factorizations import Svd, svd
from .matrix import Matrix
from .sampling import Partition


@dataclass(frozen=True)
class RateConstants:
    sigma1_sq: float
    sigma_r_sq: float
    fro_sq: float
    beta_max_rows: float
    beta_max_cols: float
    beta_max: float
    alpha: float
    delta: float
    eta: float
    rho: float
    rho_hat: float
    guaranteed: bool


@dataclass(frozen=True)
class TheoremBounds:
    """Closed-form error bounds at iteration k.

    expected_error_norm bounds the norm of the expected error;
    mean_square is the exact-sum bound on the expected squared error and
    mean_square_closed_form its looser geometric simplification.
    """

    expected_error_norm: float
    mean_square: float
    mean_square_closed_form: float


def compute_delta(f: Svd, fro_sq: float, alpha: float) -> float:
    """max_i |1 - alpha sigma_i^2 / F2| over the positive spectrum.

    The maximum is attained at the extreme singular values, so only the two
    endpoints are evaluated.
    """
    if alpha <= 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    s1 = float(f.sigma[0]) ** 2
    sr = float(f.sigma[-1]) ** 2
    return max(abs(1.0 - alpha * s1 / fro_sq), abs(1.0 - alpha * sr / fro_sq))


def optimal_alpha(f: Svd, fro_sq: float) -> tuple[float, float]:
    """Stepsize minimizing delta, and the minimized delta.

    alpha* = 2 F2 / (sigma_1^2 + sigma_r^2),
    delta* = (sigma_1^2 - sigma_r^2) / (sigma_1^2 + sigma_r^2).
    """
    s1 = float(f.sigma[0]) ** 2
    sr = float(f.sigma[-1]) ** 2
    return 2.0 * fro_sq / (s1 + sr), (s1 - sr) / (s1 + sr)


def _block_beta(a: Matrix, partition: Partition) -> float:
    """Worst spectral-over-Frobenius squared-norm ratio over the blocks."""
    worst = 0.0
    for idx in partition.blocks:
        if len(idx) == 1:
            # a single row or column: both norms coincide, the ratio is 1
            worst = max(worst, 1.0)
            continue
        block = a.block(partition.axis, idx)
        fro = a.block_frobenius_sq(block)
        if fro <= 0.0:
            raise ValueError("zero block has no spectral-to-Frobenius ratio")
        top = float(svd(block.materialize()).sigma[0]) ** 2
        worst = max(worst, top / fro)
    return worst


def compute_beta_max(a: Matrix, row_p: Partition, col_p: Partition) -> tuple[float, float, float]:
    """(beta over row blocks, beta over column blocks, their max)."""
    beta_rows = _block_beta(a, row_p)
    beta_cols = _block_beta(a, col_p)
    return beta_rows, beta_cols, max(beta_rows, beta_cols)


def compute_eta_rho(
    beta_rows: float,
    beta_cols: float,
    sigma_r_sq: float,
    fro_sq: float,
    alpha: float,
) -> tuple[float, float, float]:
    """Mean-square rates (eta from the row sweep, rho from the column sweep).

    eta = 1 - (2 alpha - alpha^2 beta_rows) sigma_r^2 / F2, rho likewise with
    beta_cols, and rho_hat = max(eta, rho).  Values for alpha at or beyond
    2 / beta are computed as stated, not rejected; callers consult the
    guaranteed flag of RateConstants.
    """
    if alpha <= 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    eta = 1.0 - (2.0 * alpha - alpha**2 * beta_rows) * sigma_r_sq / fro_sq
    rho = 1.0 - (2.0 * alpha - alpha**2 * beta_cols) * sigma_r_sq / fro_sq
    return eta, rho, max(eta, rho)


def rate_constants(
    a: Matrix,
    row_p: Partition,
    col_p: Partition,
    alpha: float,
    oracle: Svd | None = None,
) -> RateConstants:
    """Assemble every constant for one (matrix, partitions, stepsize) choice."""
    f = oracle if oracle is not None else svd(a)
    fro_sq = a.frobenius_sq()
    beta_rows, beta_cols, beta_max = compute_beta_max(a, row_p, col_p)
    delta = compute_delta(f, fro_sq, alpha)
    eta, rho, rho_hat = compute_eta_rho(beta_rows, beta_cols, float(f.sigma[-1]) ** 2, fro_sq, alpha)
    return RateConstants(
        sigma1_sq=float(f.sigma[0]) ** 2,
        sigma_r_sq=float(f.sigma[-1]) ** 2,
        fro_sq=fro_sq,
        beta_max_rows=beta_rows,
        beta_max_cols=beta_cols,
        beta_max=beta_max,
        alpha=alpha,
        delta=delta,
        eta=eta,
        rho=rho,
        rho_hat=rho_hat,
        guaranteed=alpha < 2.0 / beta_max,
    )


def default_bound_epsilon(rho_hat: float) -> float:
    """epsilon = (1 - rho_hat) / (2 rho_hat), keeping (1 + eps) rho_hat < 1."""
    if not 0.0 < rho_hat < 1.0:
        raise ValueError(f"default epsilon needs rho_hat in (0, 1), got {rho_hat}")
    return (1.0 - rho_hat) / (2.0 * rho_hat)


def theorem_bounds(
    consts: RateConstants,
    x0_err: float,
    z0_perp_err: float,
    k: int,
    epsilon: float,
    at_z0_norm: float = 0.0,
) -> TheoremBounds:
    """Evaluate the two convergence bounds at iteration k.

    x0_err is ||x0 - x*||, z0_perp_err is ||z0 - b_perp||, and at_z0_norm is
    ||A^T z0||, which the expected-error bound needs separately (it is not a
    function of z0_perp_err).

    expected_error_norm = delta^k (x0_err + alpha k at_z0_norm / F2).
    mean_square         = (1+eps)^k eta^k x0_err^2
                          + (1 + 1/eps) (alpha^2 beta_rows / F2) z0_perp_err^2
                            * sum_{l=0}^{k-1} rho^(k-l) (1+eps)^l eta^l.
    The closed form replaces the sum with its geometric upper bound.
    """
    if epsilon <= 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    expected = consts.delta**k * (x0_err + consts.alpha * k * at_z0_norm / consts.fro_sq)

    z_coef = consts.alpha**2 * consts.beta_max_rows * z0_perp_err**2 / consts.fro_sq
    with np.errstate(over="ignore"):
        ell = np.arange(k, dtype=np.float64)
        tail_terms = consts.rho ** (k - ell) * ((1.0 + epsilon) * consts.eta) ** ell
        mean_square = ((1.0 + epsilon) * consts.eta) ** k * x0_err**2
        mean_square += (1.0 + 1.0 / epsilon) * z_coef * float(tail_terms.sum())

        growth = ((1.0 + epsilon) * consts.rho_hat) ** k
        closed = growth * (x0_err**2 + (1.0 + epsilon) * z_coef / epsilon**2)
    return TheoremBounds(
        expected_error_norm=float(expected),
        mean_square=float(mean_square),
        mean_square_closed_form=float(closed),
    )
