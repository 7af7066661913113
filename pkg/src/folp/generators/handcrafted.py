"""Handcrafted - 带解析最优解的小规模 LP 集合

覆盖自由变量、双侧界、纯等式、纯不等式、退化最优解，
以及 ‖c‖ ≫ ‖q‖ 使初始原始权重 ω ≠ 1 起作用的问题。
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from folp.core.model import LinearProgram
from folp.core.sparse import SparseMatrix

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from numpy.typing import NDArray

INF = math.inf


@dataclass(frozen=True)
class HandcraftedInstance:
    """一个带已知最优值的 LP

    Attributes:
        lp: 问题本身
        objective: 最优目标值
        primal: 唯一最优原始解；最优解不唯一时为 None
        dual: 唯一最优对偶解（已知时）
        description: 覆盖的情形
    """

    lp: LinearProgram
    objective: float
    primal: NDArray[np.float64] | None = None
    dual: NDArray[np.float64] | None = None
    description: str = ""

    @property
    def name(self) -> str:
        return self.lp.name


def _build(
    name: str,
    objective: Sequence[float],
    *,
    inequalities: Sequence[Sequence[float]] = (),
    inequality_rhs: Sequence[float] = (),
    equalities: Sequence[Sequence[float]] = (),
    equality_rhs: Sequence[float] = (),
    lower: Sequence[float] | None = None,
    upper: Sequence[float] | None = None,
) -> LinearProgram:
    n = len(objective)
    rows = [*inequalities, *equalities]
    matrix = SparseMatrix.from_dense(np.asarray(rows, dtype=np.float64).reshape(len(rows), n))
    return LinearProgram(
        objective_vector=objective,
        constraint_matrix=matrix,
        right_hand_side=[*inequality_rhs, *equality_rhs],
        num_inequality_rows=len(inequalities),
        variable_lower=lower if lower is not None else [0.0] * n,
        variable_upper=upper if upper is not None else [INF] * n,
        name=name,
    )


def one_var() -> HandcraftedInstance:
    lp = _build("one_var", [1.0], inequalities=[[1.0]], inequality_rhs=[1.0])
    return HandcraftedInstance(
        lp, 1.0, np.array([1.0]), np.array([1.0]), "single variable, single row"
    )


def knapsack() -> HandcraftedInstance:
    # x₁ + x₂ ≤ 1 写成 −x₁ − x₂ ≥ −1
    lp = _build("knapsack", [-1.0, -2.0], inequalities=[[-1.0, -1.0]], inequality_rhs=[-1.0])
    return HandcraftedInstance(lp, -2.0, np.array([0.0, 1.0]), np.array([2.0]), "vertex optimum")


def fixed_equality() -> HandcraftedInstance:
    lp = _build(
        "fixed_equality",
        [0.0],
        equalities=[[1.0]],
        equality_rhs=[0.3],
        lower=[0.0],
        upper=[1.0],
    )
    return HandcraftedInstance(lp, 0.0, np.array([0.3]), description="zero objective, one equality")


def free_variables() -> HandcraftedInstance:
    lp = _build(
        "free_variables",
        [1.0, 1.0],
        inequalities=[[1.0, 1.0]],
        inequality_rhs=[2.0],
        equalities=[[1.0, -1.0]],
        equality_rhs=[1.0],
        lower=[-INF, -INF],
        upper=[INF, INF],
    )
    return HandcraftedInstance(
        lp, 2.0, np.array([1.5, 0.5]), np.array([1.0, 0.0]), "free variables"
    )


def two_sided_bounds() -> HandcraftedInstance:
    lp = _build(
        "two_sided_bounds",
        [-1.0, 1.0],
        inequalities=[[1.0, 1.0]],
        inequality_rhs=[1.0],
        lower=[0.0, 0.5],
        upper=[2.0, 3.0],
    )
    return HandcraftedInstance(
        lp, -1.5, np.array([2.0, 0.5]), description="finite lower and upper bounds"
    )


def equality_only() -> HandcraftedInstance:
    lp = _build(
        "equality_only",
        [1.0, 2.0, 3.0],
        equalities=[[1.0, 1.0, 1.0], [1.0, -1.0, 0.0]],
        equality_rhs=[1.0, 0.0],
    )
    return HandcraftedInstance(lp, 1.5, np.array([0.5, 0.5, 0.0]), description="equality rows only")


def inequality_only() -> HandcraftedInstance:
    lp = _build(
        "inequality_only",
        [2.0, 3.0],
        inequalities=[[1.0, 1.0], [1.0, 3.0]],
        inequality_rhs=[4.0, 6.0],
    )
    return HandcraftedInstance(
        lp, 9.0, np.array([3.0, 1.0]), np.array([1.5, 0.5]), "inequality rows only"
    )


def degenerate_vertex() -> HandcraftedInstance:
    lp = _build(
        "degenerate_vertex",
        [-1.0, -1.0],
        inequalities=[[-1.0, 0.0], [0.0, -1.0], [-1.0, -1.0]],
        inequality_rhs=[-1.0, -1.0, -2.0],
    )
    return HandcraftedInstance(
        lp, -2.0, np.array([1.0, 1.0]), description="three active rows in two dimensions"
    )


def degenerate_objective() -> HandcraftedInstance:
    lp = _build(
        "degenerate_objective",
        [1.0, 1.0],
        inequalities=[[1.0, 1.0]],
        inequality_rhs=[1.0],
    )
    return HandcraftedInstance(lp, 1.0, description="objective parallel to a facet")


def weight_imbalance() -> HandcraftedInstance:
    lp = _build(
        "weight_imbalance",
        [1000.0, 1500.0],
        inequalities=[[1.0, 1.0], [-1.0, 0.0]],
        inequality_rhs=[0.002, -0.0015],
    )
    return HandcraftedInstance(
        lp,
        2.25,
        np.array([0.0015, 0.0005]),
        np.array([1500.0, 500.0]),
        "objective norm far above rhs norm",
    )


def mixed_rows_bounds() -> HandcraftedInstance:
    lp = _build(
        "mixed_rows_bounds",
        [2.0, -1.0, 1.0],
        inequalities=[[0.0, 1.0, -1.0]],
        inequality_rhs=[-1.0],
        equalities=[[1.0, 1.0, 1.0]],
        equality_rhs=[2.0],
        lower=[0.0, -INF, 0.0],
        upper=[1.0, 1.5, INF],
    )
    return HandcraftedInstance(
        lp, -1.0, np.array([0.0, 1.5, 0.5]), description="mixed rows and bound kinds"
    )


def upper_bound_only() -> HandcraftedInstance:
    lp = _build(
        "upper_bound_only",
        [-1.0],
        inequalities=[[-1.0]],
        inequality_rhs=[-5.0],
        lower=[-INF],
        upper=[3.0],
    )
    return HandcraftedInstance(lp, -3.0, np.array([3.0]), description="variable bounded above only")


def transport() -> HandcraftedInstance:
    # 变量顺序 x11, x12, x21, x22；前两行为需求，后两行为供给
    lp = _build(
        "transport",
        [1.0, 4.0, 3.0, 2.0],
        inequalities=[[1.0, 0.0, 1.0, 0.0], [0.0, 1.0, 0.0, 1.0]],
        inequality_rhs=[2.0, 3.0],
        equalities=[[1.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 1.0]],
        equality_rhs=[3.0, 2.0],
    )
    return HandcraftedInstance(
        lp, 10.0, np.array([2.0, 1.0, 0.0, 2.0]), description="balanced transportation"
    )


_BUILDERS: tuple[Callable[[], HandcraftedInstance], ...] = (
    one_var,
    knapsack,
    fixed_equality,
    free_variables,
    two_sided_bounds,
    equality_only,
    inequality_only,
    degenerate_vertex,
    degenerate_objective,
    weight_imbalance,
    mixed_rows_bounds,
    upper_bound_only,
    transport,
)


def handcrafted_suite() -> list[HandcraftedInstance]:
    """全部手工实例，顺序固定"""
    return [build() for build in _BUILDERS]


def handcrafted_instance(name: str) -> HandcraftedInstance:
    """按名称取单个实例

    Raises:
        KeyError: 名称不存在
    """
    for build in _BUILDERS:
        if build.__name__ == name:
            return build()
    raise KeyError(name)
