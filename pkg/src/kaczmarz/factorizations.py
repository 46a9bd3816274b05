"""Thin SVD, pseudoinverse oracle, numerical rank, and range projections.

The factorization is a one-sided Jacobi iteration: column pairs are rotated
until mutually orthogonal, at which point the column norms are the singular
values.  Pairs are scheduled round-robin so every round rotates disjoint
pairs in one vectorized step.  Accuracy is near machine precision, which is
what the solver acceptance tests lean on.

Sparse matrices are densified here only; the oracle is test-time machinery
and the benchmark problems are capped at sizes where that is cheap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .matrix import Matrix

_EPS = float(np.finfo(np.float64).eps)
_MAX_SWEEPS = 60


@dataclass(frozen=True)
class Svd:
    """Thin SVD truncated at numerical rank: A ~ u @ diag(sigma) @ v.T."""

    u: np.ndarray        # (m, r), orthonormal columns
    sigma: np.ndarray    # (r,), positive nonincreasing
    v: np.ndarray        # (n, r), orthonormal columns
    rank_tol: float      # truncation threshold used

    @property
    def rank(self) -> int:
        return self.sigma.size


def _round_robin_rounds(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """n-1 rounds of disjoint index pairs covering every pair exactly once."""
    slots = list(range(n)) + ([None] if n % 2 else [])
    k = len(slots)
    rounds = []
    for _ in range(max(k - 1, 0)):
        p, q = [], []
        for i in range(k // 2):
            a, b = slots[i], slots[k - 1 - i]
            if a is not None and b is not None:
                p.append(a)
                q.append(b)
        rounds.append((np.asarray(p, dtype=np.intp), np.asarray(q, dtype=np.intp)))
        slots = [slots[0], slots[-1]] + slots[1:-1]  # rotate all but the first
    return rounds


def _one_sided_jacobi(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthogonalize the columns of w; returns (w, v) with w = (input) @ v.

    Internally the working matrix is kept transposed so each rotation reads
    and writes contiguous rows.  Columns whose norm falls below
    eps * ||A||_F are frozen: they sit below the rank tolerance and rotating
    them against pure rounding noise would never settle.
    """
    m, n = w.shape
    wt = np.array(w.T, order="C", copy=True)  # never alias the caller's storage
    vt = np.eye(n)
    if n == 1:
        return wt.T, vt.T
    tol = max(m, n) * _EPS
    floor_sq = (_EPS * float(np.linalg.norm(wt))) ** 2
    rounds = _round_robin_rounds(n)
    for _ in range(_MAX_SWEEPS):
        off = 0.0
        for p, q in rounds:
            wp = wt[p]
            wq = wt[q]
            app = np.einsum("ij,ij->i", wp, wp)
            aqq = np.einsum("ij,ij->i", wq, wq)
            apq = np.einsum("ij,ij->i", wp, wq)
            denom_sq = app * aqq
            alive = (app > floor_sq) & (aqq > floor_sq)
            rel = np.zeros_like(apq)
            np.divide(np.abs(apq), np.sqrt(denom_sq, where=alive, out=np.ones_like(denom_sq)),
                      out=rel, where=alive)
            rotate = alive & (rel > tol)
            if rel.size:
                off = max(off, float(rel.max()))
            if not rotate.any():
                continue
            zeta = np.zeros_like(apq)
            np.divide(aqq - app, 2.0 * apq, out=zeta, where=rotate)
            t = np.where(zeta >= 0.0, 1.0, -1.0) / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = c * t
            c = np.where(rotate, c, 1.0)[:, None]
            s = np.where(rotate, s, 0.0)[:, None]
            wt[p] = wp * c - wq * s
            wt[q] = wp * s + wq * c
            vp = vt[p]
            vq = vt[q]
            vt[p] = vp * c - vq * s
            vt[q] = vp * s + vq * c
        if off <= tol:
            return wt.T, vt.T
    raise ArithmeticError(f"Jacobi SVD did not converge in {_MAX_SWEEPS} sweeps")


def svd(matrix: Matrix | np.ndarray) -> Svd:
    """Thin SVD truncated at rank_tol = max(m, n) * eps * sigma_1."""
    if isinstance(matrix, Matrix):
        a = matrix.to_dense()
    elif sp.issparse(matrix):
        a = np.asarray(matrix.todense(), dtype=np.float64)
    else:
        a = np.asarray(matrix, dtype=np.float64)
    if a.ndim != 2 or a.size == 0:
        raise ValueError("svd needs a nonempty 2-D matrix")
    if not np.all(np.isfinite(a)):
        raise ValueError("svd needs finite entries")
    if not np.any(a):
        raise ValueError("svd of the zero matrix is not defined here")
    m, n = a.shape
    transposed = m < n
    w, rot = _one_sided_jacobi(a.T if transposed else a)
    sigma = np.linalg.norm(w, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    rank_tol = max(m, n) * _EPS * float(sigma[0])
    keep = sigma > rank_tol
    sigma = sigma[keep]
    left = w[:, order][:, keep] / sigma
    right = rot[:, order][:, keep]
    if transposed:
        u, v = right, left
    else:
        u, v = left, right
    return Svd(u=u, sigma=sigma, v=v, rank_tol=rank_tol)


def pinv_apply(f: Svd, b: np.ndarray) -> np.ndarray:
    """Minimum Euclidean-norm least squares solution x = V diag(1/sigma) U^T b."""
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (f.u.shape[0],):
        raise ValueError(f"pinv_apply needs a length-{f.u.shape[0]} vector, got {b.shape}")
    return f.v @ ((f.u.T @ b) / f.sigma)


def residual_split(f: Svd, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split b into its projection onto range(A) and the leftover in null(A^T)."""
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (f.u.shape[0],):
        raise ValueError(f"residual_split needs a length-{f.u.shape[0]} vector, got {b.shape}")
    b_range = f.u @ (f.u.T @ b)
    b_perp = b - b_range
    return b_range, b_perp


def range_project_rows(f: Svd, x: np.ndarray) -> np.ndarray:
    """Projection of x onto range(A^T) = span of the right singular vectors."""
    return f.v @ (f.v.T @ x)


def numerical_rank(f: Svd) -> int:
    """Number of singular values above the truncation threshold."""
    return int(np.count_nonzero(f.sigma > f.rank_tol))
