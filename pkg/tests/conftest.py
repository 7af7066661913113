"""Pytest 配置和共享 fixtures"""

from __future__ import annotations

import math
from collections.abc import Callable
from pathlib import Path

import numpy as np
import pytest
from scipy.optimize import linprog

from folp import LinearProgram, SolverParams, SparseMatrix
from folp.generators import handcrafted_instance, random_feasible_lp

# 手工实例都能在默认参数下收敛；上限只为防止测试挂起
TEST_KKT_LIMIT = 200_000.0

ONE_VAR_MPS = """NAME          ONEVAR
ROWS
 N  COST
 G  R1
COLUMNS
    X1        COST      1.0        R1        1.0
RHS
    RHS       R1        1.0
ENDATA
"""


def linprog_objective(lp: LinearProgram) -> float:
    """用 HiGHS 求解 lp，返回含常数项的最优值"""
    K = lp.constraint_matrix.to_dense()
    m1 = lp.num_inequality_rows
    G, A = K[:m1], K[m1:]
    h, b = lp.right_hand_side[:m1], lp.right_hand_side[m1:]
    bounds = [
        (None if math.isinf(lo) else lo, None if math.isinf(hi) else hi)
        for lo, hi in zip(lp.variable_lower, lp.variable_upper, strict=True)
    ]
    result = linprog(
        lp.objective_vector,
        A_ub=-G if m1 else None,
        b_ub=-h if m1 else None,
        A_eq=A if A.shape[0] else None,
        b_eq=b if A.shape[0] else None,
        bounds=bounds,
        method="highs",
    )
    assert result.status == 0, result.message
    return float(result.fun) + lp.objective_constant


@pytest.fixture
def lp_oracle() -> Callable[[LinearProgram], float]:
    """参考 LP 求解器（scipy HiGHS）"""
    return linprog_objective


@pytest.fixture
def one_var_lp() -> LinearProgram:
    """min x s.t. x ≥ 1, x ≥ 0"""
    return handcrafted_instance("one_var").lp


@pytest.fixture
def knapsack_lp() -> LinearProgram:
    """min −x₁ − 2x₂ s.t. x₁ + x₂ ≤ 1, x ≥ 0"""
    return handcrafted_instance("knapsack").lp


@pytest.fixture
def mixed_lp() -> LinearProgram:
    """不等式、等式行与各类变量界都出现的问题"""
    return LinearProgram(
        objective_vector=[1.0, -2.0, 0.5],
        constraint_matrix=SparseMatrix.from_dense(
            [[1.0, 1.0, 0.0], [0.0, 2.0, -1.0], [1.0, 0.0, 1.0]]
        ),
        right_hand_side=[1.0, -4.0, 2.0],
        num_inequality_rows=2,
        variable_lower=[0.0, -np.inf, -1.0],
        variable_upper=[np.inf, 3.0, 4.0],
        name="mixed",
    )


@pytest.fixture
def random_lp_factory() -> Callable[..., LinearProgram]:
    """随机可行 LP 工厂"""

    def factory(
        num_variables: int = 12, num_inequalities: int = 6, num_equalities: int = 3, seed: int = 0
    ) -> LinearProgram:
        return random_feasible_lp(
            num_variables, num_inequalities, num_equalities, density=0.5, seed=seed
        )

    return factory


@pytest.fixture
def test_params() -> SolverParams:
    """默认参数，KKT 上限放宽"""
    return SolverParams(kkt_pass_limit=TEST_KKT_LIMIT)


@pytest.fixture
def one_var_mps(tmp_path: Path) -> Path:
    """单变量 MPS 文件"""
    path = tmp_path / "onevar.mps"
    path.write_text(ONE_VAR_MPS, encoding="utf-8")
    return path


@pytest.fixture
def one_var_text() -> str:
    """单变量 MPS 文本"""
    return ONE_VAR_MPS
