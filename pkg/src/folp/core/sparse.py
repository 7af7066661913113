"""SparseMatrix - 约束矩阵 K 的稀疏存储与核函数

同时保存 CSR 和转置后的 CSR（即 CSC 视图），
使 K·x 与 K⊤·y 都是 O(nnz) 的按行遍历。
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Literal

import numpy as np
import scipy.sparse as sp

from folp.core.exceptions import DimensionMismatchError, EmptyMatrixError, UnsupportedNormError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import ArrayLike, NDArray

    from folp.core.result import KktPassLedger

Axis = Literal["rows", "cols"]


def _canonical_csr(matrix: sp.csr_matrix) -> sp.csr_matrix:
    """合并重复项、删除显式零并排序列索引"""
    csr = sp.csr_matrix(matrix, dtype=np.float64, copy=True)
    csr.sum_duplicates()
    csr.eliminate_zeros()
    csr.sort_indices()
    for array in (csr.data, csr.indices, csr.indptr):
        array.flags.writeable = False
    return csr


class SparseMatrix:
    """不可变的稀疏矩阵

    Attributes:
        num_rows: 行数
        num_cols: 列数
        nnz: 存储的非零元个数
    """

    __slots__ = ("_csr", "_csr_t")

    def __init__(self, matrix: sp.spmatrix | sp.sparray | ArrayLike) -> None:
        if sp.issparse(matrix):
            csr = sp.csr_matrix(matrix)
        else:
            dense = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
            csr = sp.csr_matrix(dense)
        self._csr = _canonical_csr(csr)
        self._csr_t = _canonical_csr(self._csr.transpose().tocsr())

    # ------------------------------------------------------------------
    # 构造
    # ------------------------------------------------------------------

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[float]] | NDArray[np.float64]) -> SparseMatrix:
        """由稠密二维数组构造"""
        return cls(np.asarray(rows, dtype=np.float64))

    @classmethod
    def from_triplets(
        cls,
        rows: ArrayLike,
        cols: ArrayLike,
        values: ArrayLike,
        shape: tuple[int, int],
    ) -> SparseMatrix:
        """由 (row, col, value) 三元组构造，重复项求和"""
        coo = sp.coo_matrix(
            (np.asarray(values, dtype=np.float64), (np.asarray(rows), np.asarray(cols))),
            shape=shape,
        )
        return cls(coo.tocsr())

    @classmethod
    def zeros(cls, num_rows: int, num_cols: int) -> SparseMatrix:
        """全零矩阵"""
        return cls(sp.csr_matrix((num_rows, num_cols), dtype=np.float64))

    # ------------------------------------------------------------------
    # 属性
    # ------------------------------------------------------------------

    @property
    def num_rows(self) -> int:
        return int(self._csr.shape[0])

    @property
    def num_cols(self) -> int:
        return int(self._csr.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.num_rows, self.num_cols)

    @property
    def nnz(self) -> int:
        return int(self._csr.nnz)

    @property
    def values(self) -> NDArray[np.float64]:
        """按行主序存储的非零值（只读）"""
        return self._csr.data

    def has_finite_values(self) -> bool:
        return bool(np.all(np.isfinite(self._csr.data)))

    def row_nnz(self) -> NDArray[np.int64]:
        """每行的非零元个数"""
        return np.diff(self._csr.indptr).astype(np.int64)

    def col_nnz(self) -> NDArray[np.int64]:
        """每列的非零元个数"""
        return np.diff(self._csr_t.indptr).astype(np.int64)

    def row(self, index: int) -> tuple[NDArray[np.int32], NDArray[np.float64]]:
        """第 index 行的 (列索引, 值)"""
        start, end = self._csr.indptr[index], self._csr.indptr[index + 1]
        return self._csr.indices[start:end], self._csr.data[start:end]

    def column(self, index: int) -> tuple[NDArray[np.int32], NDArray[np.float64]]:
        """第 index 列的 (行索引, 值)"""
        start, end = self._csr_t.indptr[index], self._csr_t.indptr[index + 1]
        return self._csr_t.indices[start:end], self._csr_t.data[start:end]

    # ------------------------------------------------------------------
    # 乘法
    # ------------------------------------------------------------------

    def multiply(self, x: ArrayLike, ledger: KktPassLedger | None = None) -> NDArray[np.float64]:
        """K·x

        Raises:
            DimensionMismatchError: len(x) != num_cols
        """
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.num_cols,):
            raise DimensionMismatchError("multiply operand", self.num_cols, int(x.size))
        if ledger is not None:
            ledger.charge_k()
        return np.asarray(self._csr @ x, dtype=np.float64)

    def multiply_transpose(
        self, y: ArrayLike, ledger: KktPassLedger | None = None
    ) -> NDArray[np.float64]:
        """K⊤·y

        Raises:
            DimensionMismatchError: len(y) != num_rows
        """
        y = np.asarray(y, dtype=np.float64)
        if y.shape != (self.num_rows,):
            raise DimensionMismatchError("transpose multiply operand", self.num_rows, int(y.size))
        if ledger is not None:
            ledger.charge_kt()
        return np.asarray(self._csr_t @ y, dtype=np.float64)

    # ------------------------------------------------------------------
    # 变换
    # ------------------------------------------------------------------

    def scale(self, row_factors: ArrayLike, col_factors: ArrayLike) -> SparseMatrix:
        """返回 diag(row_factors)·K·diag(col_factors)，稀疏结构不变"""
        d1 = np.asarray(row_factors, dtype=np.float64)
        d2 = np.asarray(col_factors, dtype=np.float64)
        if d1.shape != (self.num_rows,):
            raise DimensionMismatchError("row factors", self.num_rows, int(d1.size))
        if d2.shape != (self.num_cols,):
            raise DimensionMismatchError("column factors", self.num_cols, int(d2.size))
        row_of_entry = np.repeat(np.arange(self.num_rows), np.diff(self._csr.indptr))
        data = self._csr.data * d1[row_of_entry] * d2[self._csr.indices]
        scaled = sp.csr_matrix(
            (data, self._csr.indices.copy(), self._csr.indptr.copy()), shape=self.shape
        )
        return SparseMatrix(scaled)

    def submatrix(self, rows: ArrayLike, cols: ArrayLike) -> SparseMatrix:
        """按原顺序抽取子矩阵"""
        row_idx = np.asarray(rows, dtype=np.int64)
        col_idx = np.asarray(cols, dtype=np.int64)
        return SparseMatrix(self._csr[row_idx][:, col_idx])

    def triplets(self) -> tuple[NDArray[np.int64], NDArray[np.int32], NDArray[np.float64]]:
        """行主序的 (row, col, value) 三元组"""
        row_of_entry = np.repeat(np.arange(self.num_rows), np.diff(self._csr.indptr))
        return row_of_entry, self._csr.indices.copy(), self._csr.data.copy()

    def to_dense(self) -> NDArray[np.float64]:
        return np.asarray(self._csr.toarray(), dtype=np.float64)

    def to_scipy(self) -> sp.csr_matrix:
        """CSR 副本"""
        return self._csr.copy()

    def _oriented(self, axis: Axis) -> sp.csr_matrix:
        if axis == "rows":
            return self._csr
        if axis == "cols":
            return self._csr_t
        raise ValueError(f"axis must be 'rows' or 'cols', got {axis!r}")

    # ------------------------------------------------------------------
    # 比较
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self._csr.indptr, other._csr.indptr)
            and np.array_equal(self._csr.indices, other._csr.indices)
            and np.array_equal(self._csr.data, other._csr.data)
        )

    __hash__ = None  # type: ignore[assignment]

    def __getstate__(self) -> dict[str, sp.csr_matrix]:
        return {"csr": self._csr}

    def __setstate__(self, state: dict[str, sp.csr_matrix]) -> None:
        self._csr = _canonical_csr(state["csr"])
        self._csr_t = _canonical_csr(self._csr.transpose().tocsr())

    def __repr__(self) -> str:
        return f"SparseMatrix(shape={self.shape}, nnz={self.nnz})"


# ============================================================================
# 范数与谱估计
# ============================================================================


def max_abs_entry(K: SparseMatrix) -> float:
    """存储元素的最大绝对值

    Raises:
        EmptyMatrixError: 没有非零元
    """
    if K.nnz == 0:
        raise EmptyMatrixError(K.shape, K.nnz)
    return float(np.max(np.abs(K.values)))


def axis_norms(K: SparseMatrix, axis: Axis, p: float) -> NDArray[np.float64]:
    """每行（或每列）的 ℓ_p 范数，全零行/列得 0

    p = 0 约定为非零元个数（Σ|a|^p 在 p→0 时的极限），
    p = inf 为最大绝对值。

    Raises:
        UnsupportedNormError: p 为负数或 NaN
    """
    if math.isnan(p) or p < 0:
        raise UnsupportedNormError(p)

    mat = K._oriented(axis)
    if p == 0:
        return np.diff(mat.indptr).astype(np.float64)

    abs_mat = abs(mat)
    if math.isinf(p):
        return np.asarray(abs_mat.max(axis=1).toarray(), dtype=np.float64).ravel()
    if p == 1:
        return np.asarray(abs_mat.sum(axis=1), dtype=np.float64).ravel()
    sums = np.asarray(abs_mat.power(p).sum(axis=1), dtype=np.float64).ravel()
    return sums ** (1.0 / p)


def estimate_spectral_norm(
    K: SparseMatrix,
    relative_tol: float = 1e-4,
    max_iterations: int = 1000,
    seed: int = 0,
    ledger: KktPassLedger | None = None,
) -> float:
    """在 K⊤K 上做幂迭代，估计 ‖K‖₂

    返回 Rayleigh 商的平方根。相邻两次估计的相对变化不超过
    relative_tol 或达到 max_iterations 时停止。结果可能略小于真值，
    调用方需乘安全系数。

    Raises:
        EmptyMatrixError: 矩阵没有行或列
    """
    if K.num_rows == 0 or K.num_cols == 0:
        raise EmptyMatrixError(K.shape, K.nnz)

    rng = np.random.default_rng(seed)
    v = rng.standard_normal(K.num_cols)
    v /= np.linalg.norm(v)

    estimate = 0.0
    for iteration in range(max_iterations):
        kv = K.multiply(v, ledger)
        current = math.sqrt(float(kv @ kv))
        w = K.multiply_transpose(kv, ledger)
        w_norm = float(np.linalg.norm(w))
        if w_norm == 0.0:
            return current
        v = w / w_norm
        if iteration > 0 and abs(current - estimate) <= relative_tol * current:
            return current
        estimate = current
    return estimate
