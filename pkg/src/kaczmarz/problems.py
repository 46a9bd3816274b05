"""Synthetic test systems and inconsistent right-hand sides.

Two generator families: orthogonal-factor matrices with prescribed rank and
a condition bound (type 1), and plain standard-normal matrices (type 2).
Right-hand sides are b = A x + r with the residual r lying in null(A^T), so
the ground truth minimum-norm solution comes straight from the
pseudoinverse oracle.

Everything is a pure function of (arguments, seed): the same inputs
reproduce the same instance bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .factorizations import Svd, numerical_rank, pinv_apply, residual_split, svd
from .matrix import Matrix
from .sampling import Rng

CONSISTENCY_RTOL = 1e-8


@dataclass
class ProblemMeta:
    declared_rank: int
    kappa_bound: float | None
    consistent: bool
    seed: int
    residual_norm: float


@dataclass
class ProblemInstance:
    """A system (A, b) bundled with its oracle ground truth.

    x_star is the minimum-norm least squares solution A^+ b and b_perp the
    component of b orthogonal to range(A); both may be None for instances
    loaded without an oracle (call ensure_oracle to fill them in).
    """

    a: Matrix
    b: np.ndarray
    x_star: np.ndarray | None
    b_perp: np.ndarray | None
    meta: ProblemMeta
    oracle: Svd | None = None

    def ensure_oracle(self) -> Svd:
        """Compute and cache the SVD, x_star, and b_perp if missing."""
        if self.oracle is None:
            self.oracle = svd(self.a)
        if self.x_star is None:
            self.x_star = pinv_apply(self.oracle, self.b)
        if self.b_perp is None:
            self.b_perp = residual_split(self.oracle, self.b)[1]
        return self.oracle


def gen_type1(m: int, n: int, r: int, kappa: float, seed: int) -> Matrix:
    """Rank-r matrix U D V^T with singular values drawn uniformly in (1, kappa).

    U and V are orthonormalized standard-normal factors, so the condition
    number is bounded by kappa.
    """
    if m < 1 or n < 1 or not 1 <= r <= min(m, n):
        raise ValueError(f"need 1 <= r <= min(m, n); got m={m}, n={n}, r={r}")
    if not kappa > 1.0:
        raise ValueError(f"kappa must exceed 1, got {kappa}")
    rng = Rng(seed)
    u = np.linalg.qr(rng.standard_normal((m, r)), mode="reduced")[0]
    v = np.linalg.qr(rng.standard_normal((n, r)), mode="reduced")[0]
    d = 1.0 + (kappa - 1.0) * rng.uniforms(r)
    return Matrix.from_dense((u * d) @ v.T)


def gen_type2(m: int, n: int, seed: int) -> Matrix:
    """Standard-normal matrix; full rank almost surely."""
    if m < 1 or n < 1:
        raise ValueError(f"matrix shape must be positive, got {m}x{n}")
    return Matrix.from_dense(Rng(seed).standard_normal((m, n)))


def make_rhs(
    a: Matrix,
    seed: int,
    inconsistent: bool = False,
    perp_scale: float = 1.0,
    kappa_bound: float | None = None,
    oracle: Svd | None = None,
) -> ProblemInstance:
    """Build b = A x_gen (+ residual in null(A^T)) and attach the oracle truth.

    The inconsistency residual is perp_scale times the projection of a fresh
    standard-normal vector onto null(A^T); its norm is recorded in the
    metadata so experiments stay comparable.  Requesting an inconsistent
    system when A has full row rank raises ValueError: no residual is
    possible.
    """
    f = oracle if oracle is not None else svd(a)
    rank = numerical_rank(f)
    rng = Rng(seed)
    x_gen = rng.standard_normal(a.cols)
    b = a.matvec(x_gen)
    residual_norm = 0.0
    if inconsistent:
        if rank >= a.rows:
            raise ValueError(
                "no residual possible: A has full row rank, so null(A^T) is trivial"
            )
        w = rng.standard_normal(a.rows)
        r = perp_scale * residual_split(f, w)[1]
        residual_norm = float(np.linalg.norm(r))
        b = b + r
    x_star = pinv_apply(f, b)
    b_perp = residual_split(f, b)[1]
    consistent = float(np.linalg.norm(b_perp)) <= CONSISTENCY_RTOL * float(np.linalg.norm(b))
    meta = ProblemMeta(
        declared_rank=rank,
        kappa_bound=kappa_bound,
        consistent=consistent,
        seed=int(seed),
        residual_norm=residual_norm,
    )
    return ProblemInstance(a=a, b=b, x_star=x_star, b_perp=b_perp, meta=meta, oracle=f)
