"""Random - 保证有最优解的随机 LP

先取可行原始点 x₀ 与对偶可行点 (y₀, λ₀)，再由它们反推 q 与 c，
因此原始、对偶都可行，问题有有限最优值。
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from folp.core.exceptions import InvalidSizeError
from folp.core.model import LinearProgram
from folp.core.sparse import SparseMatrix


def random_feasible_lp(
    num_variables: int,
    num_inequalities: int,
    num_equalities: int,
    *,
    density: float = 1.0,
    bounded_fraction: float = 0.3,
    seed: int = 0,
    name: str = "",
) -> LinearProgram:
    """随机生成原始、对偶都可行的 LP

    所有变量 l = 0；约 bounded_fraction 的变量另有有限上界。

    Raises:
        InvalidSizeError: 维度为负、n = 0 或 density 不在 (0, 1] 内
    """
    if num_variables < 1:
        raise InvalidSizeError("num_variables", num_variables, "must be >= 1")
    if num_inequalities < 0 or num_equalities < 0:
        raise InvalidSizeError("num_rows", min(num_inequalities, num_equalities), "must be >= 0")
    if not 0.0 < density <= 1.0:
        raise InvalidSizeError("density", density, "must lie in (0, 1]")

    rng = np.random.default_rng(seed)
    n = num_variables
    m = num_inequalities + num_equalities

    matrix = sp.random(
        m, n, density=density, format="lil", random_state=rng, data_rvs=rng.standard_normal
    )
    # 每行至少一个非零元，避免空行
    for row in range(m):
        if not matrix.rows[row]:
            matrix[row, int(rng.integers(n))] = rng.standard_normal()
    K = SparseMatrix(sp.csr_matrix(matrix))

    upper = np.full(n, np.inf)
    bounded = rng.random(n) < bounded_fraction
    upper[bounded] = rng.uniform(1.0, 3.0, size=int(bounded.sum()))

    x0 = rng.uniform(0.0, 1.0, size=n)
    activity = K.multiply(x0)
    slack = rng.uniform(0.0, 1.0, size=num_inequalities)
    rhs = activity.copy()
    rhs[:num_inequalities] -= slack

    y0 = rng.standard_normal(m)
    y0[:num_inequalities] = np.abs(y0[:num_inequalities])
    # 有上界的变量允许负的 reduced cost
    reduced = np.abs(rng.standard_normal(n))
    reduced[bounded] = rng.standard_normal(int(bounded.sum()))
    objective = K.multiply_transpose(y0) + reduced

    return LinearProgram(
        objective_vector=objective,
        constraint_matrix=K,
        right_hand_side=rhs,
        num_inequality_rows=num_inequalities,
        variable_lower=np.zeros(n),
        variable_upper=upper,
        name=name or f"random_{n}x{m}_s{seed}",
    )
