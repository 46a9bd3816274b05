"""Dense and compressed-sparse-row matrix storage with block extraction.

A :class:`Matrix` is immutable after construction and safe to share across
threads.  Sparse matrices keep a compressed-sparse-column twin built once at
load, because the extended solvers sweep by rows and by columns in the same
iteration.  Block extraction for contiguous index ranges slices without
copying on the dense path; general index sets copy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .sampling import Axis, _normalize_indices


def _as_slice(indices: range | np.ndarray):
    if isinstance(indices, range):
        return slice(indices.start, indices.stop)
    return indices


class Matrix:
    """Real m-by-n matrix, dense (row major) or CSR with a CSC twin.

    Sparse storage is normalized at construction: duplicates summed, explicit
    zeros stripped, column indices sorted within each row.
    """

    def __init__(self, dense: np.ndarray | None = None, csr: sp.csr_matrix | None = None):
        if (dense is None) == (csr is None):
            raise ValueError("exactly one of dense or csr storage required")
        if dense is not None:
            dense = np.ascontiguousarray(dense, dtype=np.float64)
            if dense.ndim != 2 or dense.size == 0:
                raise ValueError("matrix must be 2-D and nonempty")
            if not np.all(np.isfinite(dense)):
                raise ValueError("matrix entries must be finite")
            self._dense = dense
            self._csr = None
            self._csc = None
            self.rows, self.cols = dense.shape
        else:
            csr = sp.csr_matrix(csr, dtype=np.float64, copy=True)
            if csr.shape[0] == 0 or csr.shape[1] == 0:
                raise ValueError("matrix must be 2-D and nonempty")
            csr.sum_duplicates()
            csr.eliminate_zeros()
            csr.sort_indices()
            if csr.nnz and not np.all(np.isfinite(csr.data)):
                raise ValueError("matrix entries must be finite")
            self._dense = None
            self._csr = csr
            self._csc = csr.tocsc()
            self.rows, self.cols = csr.shape

    # -- construction ------------------------------------------------------

    @classmethod
    def from_dense(cls, array) -> "Matrix":
        return cls(dense=np.asarray(array, dtype=np.float64))

    @classmethod
    def from_sparse(cls, matrix) -> "Matrix":
        """From any scipy sparse matrix (converted to CSR)."""
        return cls(csr=sp.csr_matrix(matrix))

    @classmethod
    def from_coo(cls, rows, cols, values, shape) -> "Matrix":
        coo = sp.coo_matrix((values, (rows, cols)), shape=shape, dtype=np.float64)
        return cls(csr=coo.tocsr())

    # -- basic queries -----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_sparse(self) -> bool:
        return self._csr is not None

    @property
    def nnz(self) -> int:
        if self._csr is not None:
            return int(self._csr.nnz)
        return int(np.count_nonzero(self._dense))

    def to_dense(self) -> np.ndarray:
        if self._dense is not None:
            return self._dense
        return self._csr.toarray()

    # -- products ----------------------------------------------------------

    def matvec(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.cols,):
            raise ValueError(f"matvec needs a length-{self.cols} vector, got {v.shape}")
        if self._dense is not None:
            return self._dense @ v
        return self._csr @ v

    def rmatvec(self, v: np.ndarray) -> np.ndarray:
        """Transpose product A^T v."""
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.rows,):
            raise ValueError(f"rmatvec needs a length-{self.rows} vector, got {v.shape}")
        if self._dense is not None:
            return self._dense.T @ v
        return self._csc.T @ v

    # -- norms ---------------------------------------------------------------

    def frobenius_sq(self) -> float:
        """Sum of squared entries; zero iff the matrix is zero."""
        if self._dense is not None:
            flat = self._dense.ravel()
            return float(flat @ flat)
        data = self._csr.data
        return float(data @ data)

    def row_norms_sq(self) -> np.ndarray:
        if self._dense is not None:
            return np.einsum("ij,ij->i", self._dense, self._dense)
        out = np.zeros(self.rows)
        np.add.at(out, np.repeat(np.arange(self.rows), np.diff(self._csr.indptr)),
                  self._csr.data ** 2)
        return out

    def col_norms_sq(self) -> np.ndarray:
        if self._dense is not None:
            return np.einsum("ij,ij->j", self._dense, self._dense)
        out = np.zeros(self.cols)
        np.add.at(out, np.repeat(np.arange(self.cols), np.diff(self._csc.indptr)),
                  self._csc.data ** 2)
        return out

    def spectral_norm_sq(self) -> float:
        """Largest squared singular value, via the SVD oracle."""
        from .factorizations import svd

        return float(svd(self).sigma[0] ** 2)

    # -- blocks --------------------------------------------------------------

    def block(self, axis: Axis, indices) -> "BlockView":
        return BlockView(self, axis, indices)

    def block_matrix(self, block: "BlockView"):
        """The materialized 2-D block: rows give |I| x n, cols give m x |J|.

        Dense contiguous blocks are views; sparse slices are CSR/CSC (row
        blocks slice the CSR side, column blocks the CSC twin).
        """
        if block.parent is not self:
            raise ValueError("block belongs to a different matrix")
        sel = _as_slice(block.indices)
        if block.axis == "row":
            if self._dense is not None:
                return self._dense[sel, :]
            return self._csr[sel, :]
        if self._dense is not None:
            return self._dense[:, sel]
        return self._csc[:, sel]

    def block_frobenius_sq(self, block: "BlockView") -> float:
        """Squared Frobenius norm of the block, without densifying sparse storage."""
        if block.parent is not self:
            raise ValueError("block belongs to a different matrix")
        if self._dense is not None:
            sub = self.block_matrix(block)
            flat = np.ravel(sub)
            return float(flat @ flat)
        store = self._csr if block.axis == "row" else self._csc
        indptr, data = store.indptr, store.data
        idx = block.indices
        if isinstance(idx, range):
            # contiguous: one slice of the value array, no per-index loop
            chunk = data[indptr[idx.start]:indptr[idx.stop]]
            return float(chunk @ chunk)
        total = 0.0
        for i in idx:
            chunk = data[indptr[i]:indptr[i + 1]]
            total += float(chunk @ chunk)
        return total

    def block_apply(self, block: "BlockView", v: np.ndarray, transposed: bool = False) -> np.ndarray:
        """Product of the materialized block (or its transpose) with v.

        For a row block B = A[I, :]: plain apply maps R^n -> R^|I|; the
        transposed apply scatters R^|I| -> R^n, touching only columns with
        nonzeros in those rows on the sparse path.
        """
        v = np.asarray(v, dtype=np.float64)
        b = self.block_matrix(block)
        expect = b.shape[0] if transposed else b.shape[1]
        if v.shape != (expect,):
            raise ValueError(
                f"block_apply needs a length-{expect} vector for this "
                f"{'transposed ' if transposed else ''}block, got {v.shape}"
            )
        out = b.T @ v if transposed else b @ v
        return np.asarray(out, dtype=np.float64)

    def __repr__(self) -> str:  # pragma: no cover
        kind = "sparse" if self.is_sparse else "dense"
        return f"Matrix({self.rows}x{self.cols}, {kind}, nnz={self.nnz})"


@dataclass(frozen=True)
class BlockView:
    """An ordered, duplicate-free selection of rows or columns of a matrix."""

    parent: Matrix
    axis: Axis
    indices: range | np.ndarray

    def __post_init__(self):
        if self.axis not in ("row", "col"):
            raise ValueError(f"axis must be 'row' or 'col', got {self.axis!r}")
        idx = _normalize_indices(self.indices)
        object.__setattr__(self, "indices", idx)
        arr = np.asarray(idx, dtype=np.int64)
        limit = self.parent.rows if self.axis == "row" else self.parent.cols
        if arr.min() < 0 or arr.max() >= limit:
            raise ValueError(f"block index out of range for axis length {limit}")
        if not isinstance(idx, range) and np.unique(arr).size != arr.size:
            raise ValueError("block indices must be duplicate-free")

    def __len__(self) -> int:
        return len(self.indices)

    def materialize(self):
        return self.parent.block_matrix(self)


def full_block(m: Matrix, axis: Axis) -> BlockView:
    n = m.rows if axis == "row" else m.cols
    return BlockView(m, axis, range(0, n))
