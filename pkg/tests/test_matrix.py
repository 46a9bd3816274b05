import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kaczmarz import Matrix, contiguous_partition, full_block

DIAG34 = Matrix.from_dense([[3.0, 0.0], [0.0, 4.0]])


def random_matrix(rng, m, n, sparse=False, density=0.3):
    a = rng.standard_normal((m, n))
    if sparse:
        a[rng.random((m, n)) > density] = 0.0
    return a


class TestFrobenius:
    def test_identity(self):
        assert Matrix.from_dense(np.eye(2)).frobenius_sq() == 2.0

    def test_diag(self):
        assert DIAG34.frobenius_sq() == 25.0

    def test_zero(self):
        assert Matrix.from_dense(np.zeros((3, 5))).frobenius_sq() == 0.0

    def test_zero_iff(self):
        rng = np.random.default_rng(0)
        a = random_matrix(rng, 7, 4)
        assert Matrix.from_dense(a).frobenius_sq() > 0.0


class TestBlockFrobenius:
    def test_single_row(self):
        assert DIAG34.block_frobenius_sq(DIAG34.block("row", [0])) == 9.0

    def test_single_col(self):
        assert DIAG34.block_frobenius_sq(DIAG34.block("col", [1])) == 16.0

    def test_full_axis_equals_whole(self):
        rng = np.random.default_rng(1)
        a = Matrix.from_dense(random_matrix(rng, 9, 6))
        assert a.block_frobenius_sq(full_block(a, "row")) == a.frobenius_sq()

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            DIAG34.block("row", [2])

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            DIAG34.block("row", np.array([0, 0]))


class TestBlockApply:
    def test_identity_full(self):
        a = Matrix.from_dense(np.eye(2))
        out = a.block_apply(a.block("row", range(0, 2)), np.array([1.0, 2.0]))
        assert np.array_equal(out, [1.0, 2.0])

    def test_single_row_dot(self):
        out = DIAG34.block_apply(DIAG34.block("row", [1]), np.array([1.0, 1.0]))
        assert np.array_equal(out, [4.0])

    def test_transposed_scatter(self):
        out = DIAG34.block_apply(DIAG34.block("row", [1]), np.array([5.0]), transposed=True)
        assert np.array_equal(out, [0.0, 20.0])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            DIAG34.block_apply(DIAG34.block("row", [1]), np.array([1.0, 2.0, 3.0]))

    def test_full_block_matches_matvec(self):
        rng = np.random.default_rng(2)
        for m, n in [(3, 5), (40, 17), (200, 60)]:
            a = Matrix.from_dense(random_matrix(rng, m, n))
            v = rng.standard_normal(n)
            got = a.block_apply(full_block(a, "row"), v)
            want = a.to_dense() @ v
            assert np.linalg.norm(got - want) <= 1e-14 * max(np.linalg.norm(want), 1.0)


class TestSpectral:
    def test_identity(self):
        assert Matrix.from_dense(np.eye(2)).spectral_norm_sq() == pytest.approx(1.0, rel=1e-12)

    def test_diag(self):
        assert DIAG34.spectral_norm_sq() == pytest.approx(16.0, rel=1e-12)

    def test_rank_one(self):
        u = np.array([0.6, 0.8])
        v = np.array([1.0, 0.0, 0.0])
        a = Matrix.from_dense(np.outer(u, v))
        assert a.spectral_norm_sq() == pytest.approx(1.0, rel=1e-12)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            Matrix.from_dense(np.zeros((2, 2))).spectral_norm_sq()

    def test_below_frobenius(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            a = Matrix.from_dense(random_matrix(rng, 12, 8))
            assert a.spectral_norm_sq() <= a.frobenius_sq() * (1 + 1e-12)


@settings(max_examples=40, deadline=None)
@given(
    m=st.integers(min_value=1, max_value=24),
    n=st.integers(min_value=1, max_value=24),
    tau=st.integers(min_value=1, max_value=24),
    axis=st.sampled_from(["row", "col"]),
    gen_seed=st.integers(min_value=0, max_value=2**31),
)
def test_partition_block_norms_sum_to_total(m, n, tau, axis, gen_seed):
    rng = np.random.default_rng(gen_seed)
    a = Matrix.from_dense(rng.standard_normal((m, n)))
    axis_len = m if axis == "row" else n
    p = contiguous_partition(axis_len, min(tau, axis_len), axis)
    total = sum(a.block_frobenius_sq(a.block(axis, idx)) for idx in p.blocks)
    assert total == pytest.approx(a.frobenius_sq(), rel=1e-12)


class TestSparseDenseAgreement:
    @pytest.mark.parametrize("shape", [(6, 9), (30, 12), (11, 11)])
    def test_all_operations(self, shape):
        rng = np.random.default_rng(5)
        raw = random_matrix(rng, *shape, sparse=True)
        if not raw.any():
            raw[0, 0] = 1.0
        dense = Matrix.from_dense(raw)
        import scipy.sparse as sp

        sparse = Matrix.from_sparse(sp.csr_matrix(raw))
        assert sparse.is_sparse and not dense.is_sparse
        rtol = 1e-13

        assert sparse.frobenius_sq() == pytest.approx(dense.frobenius_sq(), rel=rtol)
        assert sparse.spectral_norm_sq() == pytest.approx(dense.spectral_norm_sq(), rel=rtol)

        m, n = shape
        for axis, stop in (("row", m), ("col", n)):
            idx = range(0, max(1, stop // 2))
            bd, bs = dense.block(axis, idx), sparse.block(axis, idx)
            assert sparse.block_frobenius_sq(bs) == pytest.approx(
                dense.block_frobenius_sq(bd), rel=rtol)
            vec_len = len(idx)
            v = rng.standard_normal(n if axis == "row" else vec_len)
            got = sparse.block_apply(bs, v)
            want = dense.block_apply(bd, v)
            assert np.allclose(got, want, rtol=rtol, atol=1e-15)

        v = rng.standard_normal(n)
        assert np.allclose(sparse.matvec(v), dense.matvec(v), rtol=rtol)
        w = rng.standard_normal(m)
        assert np.allclose(sparse.rmatvec(w), dense.rmatvec(w), rtol=rtol)
        assert np.allclose(sparse.row_norms_sq(), dense.row_norms_sq(), rtol=rtol)
        assert np.allclose(sparse.col_norms_sq(), dense.col_norms_sq(), rtol=rtol)


class TestConstruction:
    def test_sparse_normalization(self):
        import scipy.sparse as sp

        coo = sp.coo_matrix(([1.0, 2.0, 0.0, -1.0], ([0, 0, 1, 0], [1, 1, 0, 2])), shape=(2, 3))
        m = Matrix.from_sparse(coo)
        # duplicates summed, explicit zero stripped, indices sorted
        assert m.nnz == 2
        csr = m._csr
        assert np.all(np.diff(csr.indptr) >= 0)
        for i in range(m.rows):
            row_cols = csr.indices[csr.indptr[i]:csr.indptr[i + 1]]
            assert np.all(np.diff(row_cols) > 0)
        assert np.array_equal(m.to_dense(), [[0.0, 3.0, -1.0], [0.0, 0.0, 0.0]])

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            Matrix.from_dense([[1.0, np.nan]])
        with pytest.raises(ValueError):
            Matrix.from_dense([[np.inf, 1.0]])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            Matrix.from_dense(np.zeros((0, 3)))

    def test_contiguous_dense_block_is_view(self):
        rng = np.random.default_rng(6)
        a = Matrix.from_dense(random_matrix(rng, 8, 5))
        block = a.block_matrix(a.block("row", range(2, 5)))
        assert block.base is a.to_dense()
