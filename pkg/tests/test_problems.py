import numpy as np
import pytest

from kaczmarz import (
    Matrix,
    gen_type1,
    gen_type2,
    make_rhs,
    numerical_rank,
    pinv_apply,
    svd,
)


class TestGenType1:
    @pytest.mark.parametrize(
        "m,n,r,kappa",
        [(5, 5, 5, 1.5), (20, 12, 7, 2.0), (12, 20, 9, 10.0), (30, 30, 5, 3.0), (8, 40, 8, 2.0)],
    )
    def test_rank_and_condition(self, m, n, r, kappa):
        a = gen_type1(m, n, r, kappa, seed=31)
        f = svd(a)
        assert numerical_rank(f) == r
        assert f.sigma[0] / f.sigma[-1] <= kappa * (1 + 1e-10)
        assert np.all(f.sigma > 1.0 - 1e-10) and np.all(f.sigma < kappa + 1e-10)

    def test_nearly_orthogonal_limit(self):
        a = gen_type1(5, 5, 5, 1 + 1e-9, seed=2)
        f = svd(a)
        assert f.sigma[0] / f.sigma[-1] <= 1 + 1e-9 + 1e-12

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            gen_type1(4, 4, 5, 2.0, seed=0)
        with pytest.raises(ValueError):
            gen_type1(4, 4, 0, 2.0, seed=0)
        with pytest.raises(ValueError):
            gen_type1(4, 4, 2, 1.0, seed=0)

    def test_deterministic(self):
        a = gen_type1(9, 6, 4, 2.0, seed=77).to_dense()
        b = gen_type1(9, 6, 4, 2.0, seed=77).to_dense()
        assert np.array_equal(a, b)
        c = gen_type1(9, 6, 4, 2.0, seed=78).to_dense()
        assert not np.array_equal(a, c)


class TestGenType2:
    def test_full_rank(self):
        a = gen_type2(40, 25, seed=1)
        assert numerical_rank(svd(a)) == 25

    def test_scalar(self):
        a = gen_type2(1, 1, seed=5)
        assert a.shape == (1, 1) and a.to_dense()[0, 0] != 0.0

    def test_condition_in_marchenko_pastur_regime(self):
        # aspect ratio 2: sqrt-law predicts sigma_1/sigma_r near 5.8
        a = gen_type2(500, 250, seed=11)
        f = svd(a)
        ratio = f.sigma[0] / f.sigma[-1]
        assert 5.73 * 0.85 <= ratio <= 5.73 * 1.15

    def test_deterministic(self):
        assert np.array_equal(gen_type2(7, 3, 9).to_dense(), gen_type2(7, 3, 9).to_dense())


class TestMakeRhs:
    def test_consistent_construction(self):
        a = gen_type1(18, 10, 6, 2.0, seed=3)
        p = make_rhs(a, seed=4, inconsistent=False)
        assert p.meta.consistent
        assert np.linalg.norm(p.b_perp) <= 1e-8 * np.linalg.norm(p.b)
        assert np.array_equal(p.x_star, pinv_apply(p.oracle, p.b))

    def test_inconsistent_construction(self):
        a = gen_type1(18, 10, 6, 2.0, seed=3)
        p = make_rhs(a, seed=4, inconsistent=True)
        assert not p.meta.consistent
        assert p.meta.residual_norm > 0.0
        fro = np.sqrt(a.frobenius_sq())
        assert np.linalg.norm(a.rmatvec(p.b_perp)) <= 1e-8 * fro * np.linalg.norm(p.b)

    def test_x_star_in_row_space(self):
        a = gen_type1(20, 14, 8, 3.0, seed=6)
        p = make_rhs(a, seed=7, inconsistent=True)
        f = p.oracle
        drift = p.x_star - f.v @ (f.v.T @ p.x_star)
        assert np.linalg.norm(drift) <= 1e-8 * np.linalg.norm(p.x_star)

    def test_full_row_rank_rejects_inconsistent(self):
        a = Matrix.from_dense(np.eye(2))
        with pytest.raises(ValueError, match="no residual possible"):
            make_rhs(a, seed=0, inconsistent=True)

    def test_perp_scale_scales_residual(self):
        a = gen_type1(18, 10, 6, 2.0, seed=3)
        p1 = make_rhs(a, seed=4, inconsistent=True, perp_scale=1.0)
        p2 = make_rhs(a, seed=4, inconsistent=True, perp_scale=2.5)
        assert p2.meta.residual_norm == pytest.approx(2.5 * p1.meta.residual_norm, rel=1e-12)

    def test_deterministic_bit_for_bit(self):
        a = gen_type1(18, 10, 6, 2.0, seed=3)
        p1 = make_rhs(a, seed=44, inconsistent=True)
        p2 = make_rhs(a, seed=44, inconsistent=True)
        assert np.array_equal(p1.b, p2.b)
        assert np.array_equal(p1.x_star, p2.x_star)
        assert np.array_equal(p1.b_perp, p2.b_perp)

    def test_hand_example_shape(self):
        # projections for A = [[1], [1]]: x* recovers the mean of b
        a = Matrix.from_dense(np.array([[1.0], [1.0]]))
        p = make_rhs(a, seed=12, inconsistent=True)
        assert p.x_star[0] == pytest.approx(np.mean(p.b), rel=1e-12)
        assert p.b_perp[0] == pytest.approx(-p.b_perp[1], rel=1e-12)
