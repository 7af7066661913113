"""Presolve - 简单预求解与后处理

只做几类容易的化简：交叉变量界检测、固定变量消去、空列消去、空行删除。
规则反复应用直至不动点；消去固定变量可能产生新的空行。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from folp.core.exceptions import DimensionMismatchError, DualUnboundedError, PrimalInfeasibleError
from folp.core.model import LinearProgram

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

logger = logging.getLogger(__name__)

# 空行右端项允许的舍入误差（相对于原始右端项）
EMPTY_ROW_TOLERANCE = 1e-9


@dataclass(frozen=True)
class FixedVariable:
    """被消去的变量"""

    index: int  # 原始列号
    value: float  # 固定值
    objective_coefficient: float  # 原始目标系数


@dataclass(frozen=True, eq=False)
class PresolveTransform:
    """预求解记录，postsolve 据此恢复原始维度的点

    Attributes:
        fixed_variables: l_i = u_i 的变量
        removed_empty_rows: 删除的空行（原始行号）
        removed_empty_cols: 删除的空列及其赋值
        objective_offset_added: 累加到目标常数的偏移
        original_dims: (行数, 列数)
        kept_rows: 保留的原始行号，升序
        kept_cols: 保留的原始列号，升序
    """

    fixed_variables: tuple[FixedVariable, ...]
    removed_empty_rows: tuple[int, ...]
    removed_empty_cols: tuple[tuple[int, float], ...]
    objective_offset_added: float
    original_dims: tuple[int, int]
    kept_rows: NDArray[np.int64] = field(repr=False)
    kept_cols: NDArray[np.int64] = field(repr=False)

    @classmethod
    def identity(cls, lp: LinearProgram) -> PresolveTransform:
        return cls(
            fixed_variables=(),
            removed_empty_rows=(),
            removed_empty_cols=(),
            objective_offset_added=0.0,
            original_dims=(lp.num_constraints, lp.num_variables),
            kept_rows=np.arange(lp.num_constraints, dtype=np.int64),
            kept_cols=np.arange(lp.num_variables, dtype=np.int64),
        )

    @property
    def is_identity(self) -> bool:
        return not (self.fixed_variables or self.removed_empty_rows or self.removed_empty_cols)

    @property
    def reduced_dims(self) -> tuple[int, int]:
        return (int(self.kept_rows.size), int(self.kept_cols.size))


def _empty_column_value(index: int, cost: float, lower: float, upper: float) -> float:
    """空列的取值：在 [l, u] 上逐坐标最小化 c_i x_i

    Raises:
        DualUnboundedError: 目标沿该坐标无下界
    """
    if cost > 0:
        if np.isneginf(lower):
            raise DualUnboundedError(index, cost)
        return lower
    if cost < 0:
        if np.isposinf(upper):
            raise DualUnboundedError(index, cost)
        return upper
    return float(np.clip(0.0, lower, upper))


def presolve(lp: LinearProgram) -> tuple[LinearProgram, PresolveTransform]:
    """对 lp 做简单预求解

    Returns:
        (化简后的 LP, 变换记录)。化简后的 LP 没有空行、空列和固定变量。

    Raises:
        PrimalInfeasibleError: 变量界交叉，或空行不可满足
        DualUnboundedError: 某空列的目标无下界
    """
    m, n = lp.num_constraints, lp.num_variables
    m1 = lp.num_inequality_rows
    lower, upper = lp.variable_lower, lp.variable_upper
    cost = lp.objective_vector
    K = lp.constraint_matrix

    crossed = lower > upper
    if crossed.any():
        index = int(np.flatnonzero(crossed)[0])
        raise PrimalInfeasibleError(
            f"variable bounds cross ({lower[index]} > {upper[index]})", index
        )

    active_rows = np.ones(m, dtype=bool)
    active_cols = np.ones(n, dtype=bool)
    row_counts = K.row_nnz()
    col_counts = K.col_nnz()
    rhs = lp.right_hand_side.copy()
    rhs_magnitude = np.abs(lp.right_hand_side)

    fixed: list[FixedVariable] = []
    empty_cols: list[tuple[int, float]] = []
    empty_rows: list[int] = []
    offset = 0.0

    def eliminate_column(index: int, value: float) -> None:
        nonlocal offset
        rows, values = K.column(index)
        if value != 0.0:
            rhs[rows] -= values * value
        row_counts[rows] -= 1
        offset += float(cost[index]) * value
        active_cols[index] = False

    changed = True
    while changed:
        changed = False

        for index in np.flatnonzero(active_cols & (lower == upper)):
            value = float(lower[index])
            fixed.append(FixedVariable(int(index), value, float(cost[index])))
            eliminate_column(int(index), value)
            changed = True

        for index in np.flatnonzero(active_cols & (col_counts == 0)):
            value = _empty_column_value(
                int(index), float(cost[index]), float(lower[index]), float(upper[index])
            )
            empty_cols.append((int(index), value))
            eliminate_column(int(index), value)
            changed = True

        for index in np.flatnonzero(active_rows & (row_counts == 0)):
            tolerance = EMPTY_ROW_TOLERANCE * (1.0 + rhs_magnitude[index])
            if index < m1 and rhs[index] > tolerance:
                raise PrimalInfeasibleError(
                    f"empty inequality row requires 0 >= {rhs[index]}", int(index)
                )
            if index >= m1 and abs(rhs[index]) > tolerance:
                raise PrimalInfeasibleError(
                    f"empty equality row requires 0 = {rhs[index]}", int(index)
                )
            empty_rows.append(int(index))
            active_rows[index] = False
            changed = True

    kept_rows = np.flatnonzero(active_rows).astype(np.int64)
    kept_cols = np.flatnonzero(active_cols).astype(np.int64)
    transform = PresolveTransform(
        fixed_variables=tuple(fixed),
        removed_empty_rows=tuple(sorted(empty_rows)),
        removed_empty_cols=tuple(empty_cols),
        objective_offset_added=offset,
        original_dims=(m, n),
        kept_rows=kept_rows,
        kept_cols=kept_cols,
    )
    if transform.is_identity:
        return lp, transform

    logger.info(
        "Presolve removed %d fixed variables, %d empty columns, %d empty rows (offset %+g)",
        len(fixed),
        len(empty_cols),
        len(empty_rows),
        offset,
    )
    reduced = LinearProgram(
        objective_vector=cost[kept_cols],
        constraint_matrix=K.submatrix(kept_rows, kept_cols),
        right_hand_side=rhs[kept_rows],
        num_inequality_rows=int(np.count_nonzero(active_rows[:m1])),
        variable_lower=lower[kept_cols],
        variable_upper=upper[kept_cols],
        objective_constant=lp.objective_constant + offset,
        is_maximization=lp.is_maximization,
        name=lp.name,
        variable_names=(
            tuple(lp.variable_names[i] for i in kept_cols) if lp.variable_names else None
        ),
        constraint_names=(
            tuple(lp.constraint_names[j] for j in kept_rows) if lp.constraint_names else None
        ),
    )
    return reduced, transform


def postsolve(
    transform: PresolveTransform,
    x_reduced: ArrayLike,
    y_reduced: ArrayLike,
    lp_original: LinearProgram,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """把化简空间的点恢复到原始维度

    被消去的变量取记录值，删除的行对偶取 0。

    Raises:
        DimensionMismatchError: 维度与变换记录不符
    """
    x_red = np.asarray(x_reduced, dtype=np.float64)
    y_red = np.asarray(y_reduced, dtype=np.float64)
    m, n = transform.original_dims
    if (lp_original.num_constraints, lp_original.num_variables) != (m, n):
        raise DimensionMismatchError("original problem columns", n, lp_original.num_variables)
    if x_red.shape != (transform.kept_cols.size,):
        raise DimensionMismatchError("reduced primal", int(transform.kept_cols.size), x_red.size)
    if y_red.shape != (transform.kept_rows.size,):
        raise DimensionMismatchError("reduced dual", int(transform.kept_rows.size), y_red.size)

    x = np.zeros(n, dtype=np.float64)
    x[transform.kept_cols] = x_red
    for variable in transform.fixed_variables:
        x[variable.index] = variable.value
    for index, value in transform.removed_empty_cols:
        x[index] = value

    y = np.zeros(m, dtype=np.float64)
    y[transform.kept_rows] = y_red
    return x, y
