"""Tests for SparseMatrix 与范数核函数"""

import pickle

import numpy as np
import pytest
import scipy.sparse as sp

from folp.core.exceptions import DimensionMismatchError, EmptyMatrixError, UnsupportedNormError
from folp.core.result import KktPassLedger
from folp.core.sparse import SparseMatrix, axis_norms, estimate_spectral_norm, max_abs_entry

DENSE = [[1.0, 0.0, -2.0], [0.0, 0.0, 0.0], [3.0, 4.0, 0.0]]


class TestConstruction:
    """构造测试"""

    def test_from_dense(self) -> None:
        """测试由稠密矩阵构造"""
        K = SparseMatrix.from_dense(DENSE)

        assert K.shape == (3, 3)
        assert K.nnz == 4
        np.testing.assert_array_equal(K.to_dense(), DENSE)

    def test_from_triplets_sums_duplicates(self) -> None:
        """测试重复的三元组求和"""
        K = SparseMatrix.from_triplets([0, 0, 1], [1, 1, 0], [2.0, 3.0, 1.0], shape=(2, 2))

        assert K.nnz == 2
        assert K.to_dense()[0, 1] == 5.0

    def test_from_triplets_drops_cancelled_entries(self) -> None:
        """测试相消为零的项被删除"""
        K = SparseMatrix.from_triplets([0, 0], [0, 0], [1.0, -1.0], shape=(1, 1))
        assert K.nnz == 0

    def test_from_scipy(self) -> None:
        """测试由 scipy 稀疏矩阵构造"""
        K = SparseMatrix(sp.csc_matrix(np.array(DENSE)))
        assert K == SparseMatrix.from_dense(DENSE)

    def test_zeros(self) -> None:
        """测试全零矩阵"""
        K = SparseMatrix.zeros(2, 3)
        assert K.shape == (2, 3)
        assert K.nnz == 0

    def test_values_are_read_only(self) -> None:
        """测试存储不可修改"""
        K = SparseMatrix.from_dense(DENSE)
        with pytest.raises(ValueError):
            K.values[0] = 10.0

    def test_to_scipy_is_copy(self) -> None:
        """测试 to_scipy 返回副本"""
        K = SparseMatrix.from_dense(DENSE)
        copy = K.to_scipy()
        copy.data[0] = 100.0
        assert K.to_dense()[0, 0] == 1.0

    def test_pickle_round_trip(self) -> None:
        """测试可以序列化（进程池传参）"""
        K = SparseMatrix.from_dense(DENSE)
        restored = pickle.loads(pickle.dumps(K))
        assert restored == K
        np.testing.assert_allclose(restored.multiply_transpose([1.0, 1.0, 1.0]), [4.0, 4.0, -2.0])


class TestStructure:
    """结构查询测试"""

    def test_row_and_column_counts(self) -> None:
        """测试每行、每列的非零元个数"""
        K = SparseMatrix.from_dense(DENSE)
        np.testing.assert_array_equal(K.row_nnz(), [2, 0, 2])
        np.testing.assert_array_equal(K.col_nnz(), [2, 1, 1])

    def test_row_and_column_access(self) -> None:
        """测试按行、按列读取"""
        K = SparseMatrix.from_dense(DENSE)
        cols, values = K.row(2)
        np.testing.assert_array_equal(cols, [0, 1])
        np.testing.assert_array_equal(values, [3.0, 4.0])

        rows, values = K.column(0)
        np.testing.assert_array_equal(rows, [0, 2])
        np.testing.assert_array_equal(values, [1.0, 3.0])

    def test_submatrix(self) -> None:
        """测试子矩阵保持原顺序"""
        K = SparseMatrix.from_dense(DENSE)
        sub = K.submatrix([0, 2], [0, 2])
        np.testing.assert_array_equal(sub.to_dense(), [[1.0, -2.0], [3.0, 0.0]])

    def test_triplets(self) -> None:
        """测试行主序三元组"""
        rows, cols, values = SparseMatrix.from_dense(DENSE).triplets()
        assert list(rows) == [0, 0, 2, 2]
        assert list(cols) == [0, 2, 0, 1]
        assert list(values) == [1.0, -2.0, 3.0, 4.0]


class TestMultiply:
    """乘法测试"""

    def test_multiply(self) -> None:
        """测试 K·x"""
        K = SparseMatrix.from_dense(DENSE)
        np.testing.assert_allclose(K.multiply([1.0, 1.0, 1.0]), [-1.0, 0.0, 7.0])

    def test_multiply_transpose(self) -> None:
        """测试 K⊤·y"""
        K = SparseMatrix.from_dense(DENSE)
        np.testing.assert_allclose(K.multiply_transpose([1.0, 5.0, 2.0]), [7.0, 8.0, -2.0])

    @pytest.mark.parametrize("seed", range(5))
    def test_adjoint_identity(self, seed: int) -> None:
        """测试 ⟨Kx, y⟩ = ⟨x, K⊤y⟩"""
        rng = np.random.default_rng(seed)
        matrix = sp.random(30, 20, density=0.2, format="csr", random_state=rng)
        K = SparseMatrix(matrix)
        x = rng.standard_normal(20)
        y = rng.standard_normal(30)

        left = float(K.multiply(x) @ y)
        right = float(x @ K.multiply_transpose(y))
        magnitude = float(np.abs(y) @ (abs(matrix) @ np.abs(x)))
        assert abs(left - right) <= 1e-12 * max(magnitude, 1.0)

    def test_dimension_mismatch(self) -> None:
        """测试维度不符"""
        K = SparseMatrix.from_dense(DENSE)
        with pytest.raises(DimensionMismatchError):
            K.multiply([1.0, 2.0])
        with pytest.raises(DimensionMismatchError):
            K.multiply_transpose([1.0])

    def test_ledger_counts(self) -> None:
        """测试乘法计入 KKT pass"""
        K = SparseMatrix.from_dense(DENSE)
        ledger = KktPassLedger()
        K.multiply([1.0, 1.0, 1.0], ledger)
        K.multiply_transpose([1.0, 1.0, 1.0], ledger)
        K.multiply_transpose([1.0, 1.0, 1.0], ledger)

        assert ledger.k_multiplies == 1
        assert ledger.kt_multiplies == 2
        assert ledger.kkt_passes == 1.5

    def test_scale(self) -> None:
        """测试 diag(d1)·K·diag(d2) 保持稀疏结构"""
        K = SparseMatrix.from_dense(DENSE)
        scaled = K.scale([1.0, 2.0, 0.5], [2.0, 1.0, 1.0])

        expected = np.diag([1.0, 2.0, 0.5]) @ np.array(DENSE) @ np.diag([2.0, 1.0, 1.0])
        np.testing.assert_allclose(scaled.to_dense(), expected)
        assert scaled.nnz == K.nnz


class TestNorms:
    """范数与谱估计测试"""

    def test_max_abs_entry(self) -> None:
        """测试最大绝对值"""
        assert max_abs_entry(SparseMatrix.from_dense(DENSE)) == 4.0

    def test_max_abs_entry_empty(self) -> None:
        """测试没有非零元时报错"""
        with pytest.raises(EmptyMatrixError):
            max_abs_entry(SparseMatrix.zeros(2, 2))

    def test_inf_norms(self) -> None:
        """测试 ℓ∞ 行范数，全零行为 0"""
        K = SparseMatrix.from_dense(DENSE)
        np.testing.assert_allclose(axis_norms(K, "rows", np.inf), [2.0, 0.0, 4.0])
        np.testing.assert_allclose(axis_norms(K, "cols", np.inf), [3.0, 4.0, 2.0])

    def test_one_and_two_norms(self) -> None:
        """测试 ℓ1 与 ℓ2 列范数"""
        K = SparseMatrix.from_dense(DENSE)
        np.testing.assert_allclose(axis_norms(K, "cols", 1.0), [4.0, 4.0, 2.0])
        np.testing.assert_allclose(axis_norms(K, "rows", 2.0), [np.sqrt(5.0), 0.0, 5.0])

    def test_zero_norm_counts_nonzeros(self) -> None:
        """测试 p = 0 按非零元个数计"""
        K = SparseMatrix.from_dense(DENSE)
        np.testing.assert_allclose(axis_norms(K, "rows", 0.0), [2.0, 0.0, 2.0])

    def test_negative_norm_rejected(self) -> None:
        """测试负的 p"""
        with pytest.raises(UnsupportedNormError):
            axis_norms(SparseMatrix.from_dense(DENSE), "rows", -1.0)

    def test_spectral_norm_diagonal(self) -> None:
        """测试对角矩阵的谱范数"""
        K = SparseMatrix.from_dense(np.diag([1.0, 3.0, 2.0]))
        assert estimate_spectral_norm(K, relative_tol=1e-10) == pytest.approx(3.0, rel=1e-4)

    def test_spectral_norm_matches_svd(self) -> None:
        """测试与 SVD 的结果一致"""
        rng = np.random.default_rng(3)
        dense = rng.standard_normal((6, 4))
        K = SparseMatrix.from_dense(dense)
        expected = np.linalg.norm(dense, 2)

        estimate = estimate_spectral_norm(K, relative_tol=1e-12, max_iterations=5000)
        assert estimate == pytest.approx(expected, rel=1e-4)
        assert estimate <= expected * (1.0 + 1e-9)

    def test_spectral_norm_charges_ledger(self) -> None:
        """测试幂迭代计入 KKT pass"""
        ledger = KktPassLedger()
        estimate_spectral_norm(SparseMatrix.from_dense(DENSE), ledger=ledger)
        assert ledger.k_multiplies >= 1
        assert ledger.k_multiplies == ledger.kt_multiplies
