"""LP 模型 - 问题数据、鞍点量与投影

问题形式（最小化）::

    min  c⊤x + c0
    s.t. G x ≥ h   (前 m1 行)
         A x = b   (其余 m2 行)
         l ≤ x ≤ u

K = (G; A)，q = (h; b)。对应鞍点函数
L(x, y) = c⊤x − y⊤Kx + q⊤y，y 的前 m1 个分量非负。
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING

import numpy as np

from folp.core.exceptions import (
    BoundViolationError,
    DimensionMismatchError,
    InfiniteProductError,
    NonFiniteDataError,
    NonPositiveWeightError,
)
from folp.core.sparse import SparseMatrix

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from folp.core.result import KktPassLedger


def _frozen_vector(values: ArrayLike) -> NDArray[np.float64]:
    array = np.array(values, dtype=np.float64, copy=True).reshape(-1)
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """两侧 LP 的组合形式 (K, q, m1)

    构造后不可变，可在并发求解之间共享。构造时只做类型转换，
    不变量由 validate() 检查。

    Attributes:
        objective_vector: c，长度 n
        constraint_matrix: K，(m1+m2) × n
        right_hand_side: q = (h, b)
        num_inequality_rows: m1
        variable_lower: l，元素属于 ℝ ∪ {−∞}
        variable_upper: u，元素属于 ℝ ∪ {+∞}
        objective_constant: 目标常数项（预求解累积的偏移）
        is_maximization: 原始文件为最大化问题（c 已取负）
        name: 实例名称
        variable_names: 变量名（可选，用于 MPS 输出）
        constraint_names: 约束名（可选）
    """

    objective_vector: NDArray[np.float64]
    constraint_matrix: SparseMatrix
    right_hand_side: NDArray[np.float64]
    num_inequality_rows: int
    variable_lower: NDArray[np.float64]
    variable_upper: NDArray[np.float64]
    objective_constant: float = 0.0
    is_maximization: bool = False
    name: str = ""
    variable_names: tuple[str, ...] | None = field(default=None, repr=False)
    constraint_names: tuple[str, ...] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "objective_vector", _frozen_vector(self.objective_vector))
        object.__setattr__(self, "right_hand_side", _frozen_vector(self.right_hand_side))
        object.__setattr__(self, "variable_lower", _frozen_vector(self.variable_lower))
        object.__setattr__(self, "variable_upper", _frozen_vector(self.variable_upper))
        if not isinstance(self.constraint_matrix, SparseMatrix):
            object.__setattr__(self, "constraint_matrix", SparseMatrix(self.constraint_matrix))
        object.__setattr__(self, "num_inequality_rows", int(self.num_inequality_rows))
        object.__setattr__(self, "objective_constant", float(self.objective_constant))
        if self.variable_names is not None:
            object.__setattr__(self, "variable_names", tuple(self.variable_names))
        if self.constraint_names is not None:
            object.__setattr__(self, "constraint_names", tuple(self.constraint_names))

    @property
    def num_variables(self) -> int:
        return int(self.objective_vector.size)

    @property
    def num_constraints(self) -> int:
        return self.constraint_matrix.num_rows

    @property
    def num_equality_rows(self) -> int:
        return self.num_constraints - self.num_inequality_rows

    def with_updates(self, **changes: object) -> LinearProgram:
        """返回替换部分字段后的新实例"""
        return replace(self, **changes)  # type: ignore[arg-type]

    def __repr__(self) -> str:
        return (
            f"LinearProgram(name={self.name!r}, n={self.num_variables}, "
            f"m1={self.num_inequality_rows}, m2={self.num_equality_rows}, "
            f"nnz={self.constraint_matrix.nnz})"
        )


@dataclass(frozen=True, eq=False)
class PrimalDualPoint:
    """鞍点问题的点 z = (x, y)"""

    primal: NDArray[np.float64]
    dual: NDArray[np.float64]

    def __post_init__(self) -> None:
        object.__setattr__(self, "primal", np.asarray(self.primal, dtype=np.float64).reshape(-1))
        object.__setattr__(self, "dual", np.asarray(self.dual, dtype=np.float64).reshape(-1))

    @classmethod
    def zeros(cls, lp: LinearProgram) -> PrimalDualPoint:
        return cls(np.zeros(lp.num_variables), np.zeros(lp.num_constraints))

    def __add__(self, other: PrimalDualPoint) -> PrimalDualPoint:
        return PrimalDualPoint(self.primal + other.primal, self.dual + other.dual)

    def __sub__(self, other: PrimalDualPoint) -> PrimalDualPoint:
        return PrimalDualPoint(self.primal - other.primal, self.dual - other.dual)

    def scaled(self, factor: float) -> PrimalDualPoint:
        return PrimalDualPoint(factor * self.primal, factor * self.dual)

    def copy(self) -> PrimalDualPoint:
        return PrimalDualPoint(self.primal.copy(), self.dual.copy())

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.primal)) and np.all(np.isfinite(self.dual)))

    def __repr__(self) -> str:
        return f"PrimalDualPoint(n={self.primal.size}, m={self.dual.size})"


@dataclass(frozen=True, eq=False)
class ReducedCosts:
    """约化成本 λ ∈ Λ"""

    values: NDArray[np.float64]

    @property
    def positive_part(self) -> NDArray[np.float64]:
        return np.maximum(self.values, 0.0)

    @property
    def negative_part(self) -> NDArray[np.float64]:
        return np.maximum(-self.values, 0.0)


# ============================================================================
# 校验
# ============================================================================


def _first_index(mask: NDArray[np.bool_]) -> int:
    return int(np.flatnonzero(mask)[0])


def validate(lp: LinearProgram, *, check_bounds: bool = True) -> None:
    """检查 LinearProgram 的全部不变量

    依次检查维度、有限性和变量界，报告第一个违反的不变量。
    check_bounds=False 时跳过 l ≤ u 检查，交叉的界留给预求解判定为不可行。

    Raises:
        DimensionMismatchError: 维度不一致
        NonFiniteDataError: 出现 NaN，或 c、q、K 中出现无穷
        BoundViolationError: l_i > u_i、l_i = +∞ 或 u_i = −∞
    """
    n = lp.constraint_matrix.num_cols
    m = lp.constraint_matrix.num_rows
    if lp.objective_vector.size != n:
        raise DimensionMismatchError("objective vector", n, lp.objective_vector.size)
    if lp.right_hand_side.size != m:
        raise DimensionMismatchError("right-hand side", m, lp.right_hand_side.size)
    if not 0 <= lp.num_inequality_rows <= m:
        raise DimensionMismatchError("inequality row count", m, lp.num_inequality_rows)
    if lp.variable_lower.size != n:
        raise DimensionMismatchError("variable lower bounds", n, lp.variable_lower.size)
    if lp.variable_upper.size != n:
        raise DimensionMismatchError("variable upper bounds", n, lp.variable_upper.size)

    for what, vector in (
        ("objective vector", lp.objective_vector),
        ("right-hand side", lp.right_hand_side),
    ):
        bad = ~np.isfinite(vector)
        if bad.any():
            raise NonFiniteDataError(what, _first_index(bad))
    if not lp.constraint_matrix.has_finite_values():
        raise NonFiniteDataError(
            "constraint matrix", _first_index(~np.isfinite(lp.constraint_matrix.values))
        )
    for what, vector in (
        ("variable lower bounds", lp.variable_lower),
        ("variable upper bounds", lp.variable_upper),
    ):
        bad = np.isnan(vector)
        if bad.any():
            raise NonFiniteDataError(what, _first_index(bad))
    if not math.isfinite(lp.objective_constant):
        raise NonFiniteDataError("objective constant", 0)

    lower, upper = lp.variable_lower, lp.variable_upper
    bad = (lower == np.inf) | (upper == -np.inf)
    if check_bounds:
        bad |= lower > upper
    if bad.any():
        index = _first_index(bad)
        raise BoundViolationError(index, float(lower[index]), float(upper[index]))


def _check_length(what: str, vector: NDArray[np.float64], expected: int) -> None:
    if vector.shape != (expected,):
        raise DimensionMismatchError(what, expected, int(vector.size))


# ============================================================================
# 鞍点量
# ============================================================================


def lagrangian(
    lp: LinearProgram, z: PrimalDualPoint, ledger: KktPassLedger | None = None
) -> float:
    """L(x, y) = c⊤x − y⊤Kx + q⊤y + c0"""
    _check_length("primal point", z.primal, lp.num_variables)
    _check_length("dual point", z.dual, lp.num_constraints)
    kx = lp.constraint_matrix.multiply(z.primal, ledger)
    return float(
        lp.objective_vector @ z.primal
        - z.dual @ kx
        + lp.right_hand_side @ z.dual
        + lp.objective_constant
    )


def project_primal(lp: LinearProgram, x: ArrayLike) -> NDArray[np.float64]:
    """投影到 X = {l ≤ x ≤ u}"""
    x = np.asarray(x, dtype=np.float64)
    _check_length("primal vector", x, lp.num_variables)
    return np.clip(x, lp.variable_lower, lp.variable_upper)


def project_dual(lp: LinearProgram, y: ArrayLike) -> NDArray[np.float64]:
    """投影到 Y = {y : y_{1:m1} ≥ 0}"""
    y = np.array(y, dtype=np.float64, copy=True)
    _check_length("dual vector", y, lp.num_constraints)
    m1 = lp.num_inequality_rows
    y[:m1] = np.maximum(y[:m1], 0.0)
    return y


def project_reduced_costs(lp: LinearProgram, v: ArrayLike) -> ReducedCosts:
    """投影到 Λ

    Λ_i 由 l_i、u_i 的有限性决定：两者都无穷时 {0}，仅 u_i 有限时 ℝ⁻，
    仅 l_i 有限时 ℝ⁺，两者都有限时 ℝ。
    """
    v = np.asarray(v, dtype=np.float64)
    _check_length("reduced cost vector", v, lp.num_variables)
    lower_finite = np.isfinite(lp.variable_lower)
    upper_finite = np.isfinite(lp.variable_upper)
    values = np.where(
        lower_finite & upper_finite,
        v,
        np.where(
            lower_finite,
            np.maximum(v, 0.0),
            np.where(upper_finite, np.minimum(v, 0.0), 0.0),
        ),
    )
    return ReducedCosts(values)


def dual_objective(lp: LinearProgram, y: ArrayLike, reduced_costs: ReducedCosts) -> float:
    """对偶目标 q⊤y + l⊤λ⁺ − u⊤λ⁻ + c0

    λ_i = 0 的项恒为 0，不做 0·∞ 运算。

    Raises:
        InfiniteProductError: λ_i ≠ 0 而其对应的界为无穷
    """
    y = np.asarray(y, dtype=np.float64)
    _check_length("dual vector", y, lp.num_constraints)
    lam = reduced_costs.values
    _check_length("reduced costs", lam, lp.num_variables)

    positive = lam > 0
    negative = lam < 0
    bad = (positive & ~np.isfinite(lp.variable_lower)) | (
        negative & ~np.isfinite(lp.variable_upper)
    )
    if bad.any():
        index = _first_index(bad)
        raise InfiniteProductError(index, float(lam[index]))

    lower_term = float(lp.variable_lower[positive] @ lam[positive])
    upper_term = float(lp.variable_upper[negative] @ lam[negative])
    return float(lp.right_hand_side @ y) + lower_term + upper_term + lp.objective_constant


def weighted_norm(z: PrimalDualPoint, omega: float) -> float:
    """‖z‖_ω = sqrt(ω‖x‖² + ‖y‖²/ω)

    Raises:
        NonPositiveWeightError: ω ≤ 0
    """
    if not omega > 0:
        raise NonPositiveWeightError(omega)
    return math.sqrt(omega * float(z.primal @ z.primal) + float(z.dual @ z.dual) / omega)
