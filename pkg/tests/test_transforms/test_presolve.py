"""Tests for 预求解与后处理"""

from collections.abc import Callable

import numpy as np
import pytest
import scipy.sparse as sp

from folp.config import SolverParams
from folp.core.exceptions import DimensionMismatchError, DualUnboundedError, PrimalInfeasibleError
from folp.core.model import LinearProgram
from folp.core.sparse import SparseMatrix
from folp.solver import solve
from folp.solver.termination import check_termination, convergence_info
from folp.transforms.presolve import PresolveTransform, postsolve, presolve


def _lp(
    objective: list[float],
    rows: list[list[float]],
    rhs: list[float],
    m1: int,
    lower: list[float],
    upper: list[float],
    **extra: object,
) -> LinearProgram:
    return LinearProgram(
        objective_vector=objective,
        constraint_matrix=SparseMatrix.from_dense(
            np.asarray(rows, dtype=float).reshape(len(rows), len(objective))
        ),
        right_hand_side=rhs,
        num_inequality_rows=m1,
        variable_lower=lower,
        variable_upper=upper,
        **extra,
    )


class TestPresolveIdentity:
    """无可化简项时的测试"""

    def test_returns_same_problem(self, one_var_lp: LinearProgram) -> None:
        """测试没有可化简项时返回原对象"""
        reduced, transform = presolve(one_var_lp)

        assert reduced is one_var_lp
        assert transform.is_identity
        assert transform.reduced_dims == (1, 1)

    def test_identity_postsolve(self, mixed_lp: LinearProgram) -> None:
        """测试恒等变换的后处理"""
        transform = PresolveTransform.identity(mixed_lp)
        x, y = postsolve(transform, [1.0, 2.0, 3.0], [4.0, 5.0, 6.0], mixed_lp)

        np.testing.assert_array_equal(x, [1.0, 2.0, 3.0])
        np.testing.assert_array_equal(y, [4.0, 5.0, 6.0])


class TestFixedVariables:
    """固定变量测试"""

    def test_fixed_variable_removed(self) -> None:
        """测试 l = u 的变量被消去，右端项与常数项更新"""
        lp = _lp([3.0, 1.0], [[1.0, 1.0]], [5.0], 1, [2.0, 0.0], [2.0, np.inf])
        reduced, transform = presolve(lp)

        assert reduced.num_variables == 1
        np.testing.assert_allclose(reduced.right_hand_side, [3.0])
        assert reduced.objective_constant == pytest.approx(6.0)
        assert transform.fixed_variables[0].index == 0
        assert transform.fixed_variables[0].value == 2.0

    def test_postsolve_restores_fixed_value(self) -> None:
        """测试后处理恢复固定值"""
        lp = _lp([3.0, 1.0], [[1.0, 1.0]], [5.0], 1, [2.0, 0.0], [2.0, np.inf])
        _, transform = presolve(lp)

        x, y = postsolve(transform, [3.0], [1.0], lp)
        np.testing.assert_allclose(x, [2.0, 3.0])
        np.testing.assert_allclose(y, [1.0])

    def test_cascade_to_empty_row(self) -> None:
        """测试消去固定变量后出现的空行也被删除"""
        lp = _lp(
            [1.0, 1.0],
            [[1.0, 0.0], [1.0, 1.0]],
            [1.0, 4.0],
            1,
            [2.0, 0.0],
            [2.0, np.inf],
        )
        reduced, transform = presolve(lp)

        assert transform.removed_empty_rows == (0,)
        assert reduced.num_constraints == 1
        assert reduced.num_inequality_rows == 0
        np.testing.assert_allclose(reduced.right_hand_side, [2.0])

    def test_cascade_to_infeasible_row(self) -> None:
        """测试消去后空行不可满足"""
        lp = _lp([1.0, 1.0], [[1.0, 0.0], [1.0, 1.0]], [3.0, 4.0], 1, [2.0, 0.0], [2.0, np.inf])

        with pytest.raises(PrimalInfeasibleError):
            presolve(lp)


class TestEmptyColumnsAndRows:
    """空行与空列测试"""

    def test_empty_column_at_lower_bound(self) -> None:
        """测试正成本的空列取下界"""
        lp = _lp([1.0, 2.0], [[1.0, 0.0]], [1.0], 1, [0.0, -1.0], [np.inf, 4.0])
        reduced, transform = presolve(lp)

        assert transform.removed_empty_cols == ((1, -1.0),)
        assert reduced.objective_constant == pytest.approx(-2.0)

    def test_empty_column_at_upper_bound(self) -> None:
        """测试负成本的空列取上界"""
        lp = _lp([1.0, -2.0], [[1.0, 0.0]], [1.0], 1, [0.0, 0.0], [np.inf, 4.0])
        _, transform = presolve(lp)

        assert transform.removed_empty_cols == ((1, 4.0),)

    def test_empty_column_zero_cost(self) -> None:
        """测试零成本的空列取离 0 最近的可行值"""
        lp = _lp([1.0, 0.0], [[1.0, 0.0]], [1.0], 1, [0.0, 2.0], [np.inf, 5.0])
        _, transform = presolve(lp)

        assert transform.removed_empty_cols == ((1, 2.0),)

    def test_empty_column_unbounded(self) -> None:
        """测试空列沿成本方向无界"""
        lp = _lp([1.0, -2.0], [[1.0, 0.0]], [1.0], 1, [0.0, 0.0], [np.inf, np.inf])

        with pytest.raises(DualUnboundedError):
            presolve(lp)

    def test_empty_equality_row_removed(self) -> None:
        """测试右端项为 0 的空等式行被删除"""
        lp = _lp([1.0], [[1.0], [0.0]], [1.0, 0.0], 1, [0.0], [np.inf])
        reduced, transform = presolve(lp)

        assert transform.removed_empty_rows == (1,)
        assert reduced.num_constraints == 1

    def test_empty_equality_row_infeasible(self) -> None:
        """测试 0 = b ≠ 0"""
        lp = _lp([1.0], [[1.0], [0.0]], [1.0, 2.0], 1, [0.0], [np.inf])

        with pytest.raises(PrimalInfeasibleError):
            presolve(lp)

    def test_empty_inequality_row_satisfied(self) -> None:
        """测试 0 ≥ h 且 h ≤ 0 时删除"""
        lp = _lp([1.0], [[0.0], [1.0]], [-3.0, 1.0], 2, [0.0], [np.inf])
        reduced, _ = presolve(lp)

        assert reduced.num_inequality_rows == 1

    def test_crossed_bounds(self) -> None:
        """测试交叉的变量界"""
        lp = _lp([1.0], [[1.0]], [1.0], 1, [2.0], [1.0])

        with pytest.raises(PrimalInfeasibleError):
            presolve(lp)


class TestRoundTrip:
    """预求解与后处理的一致性测试"""

    def test_objective_preserved(self) -> None:
        """测试后处理后的原始目标等于化简问题的目标"""
        lp = _lp(
            [1.0, -1.0, 2.0, 0.5],
            [[1.0, 1.0, 0.0, 0.0], [0.0, 1.0, 1.0, 0.0], [0.0, 0.0, 0.0, 0.0]],
            [1.0, 2.0, 0.0],
            2,
            [0.0, 0.0, 1.5, -1.0],
            [np.inf, 3.0, 1.5, 2.0],
        )
        reduced, transform = presolve(lp)
        rng = np.random.default_rng(1)
        x_red = rng.uniform(0.0, 1.0, reduced.num_variables)
        y_red = rng.uniform(0.0, 1.0, reduced.num_constraints)

        x, y = postsolve(transform, x_red, y_red, lp)

        reduced_objective = reduced.objective_vector @ x_red + reduced.objective_constant
        original_objective = lp.objective_vector @ x + lp.objective_constant
        assert original_objective == pytest.approx(reduced_objective)
        assert y[2] == 0.0
        kept = transform.kept_rows
        np.testing.assert_allclose(
            lp.constraint_matrix.multiply(x)[kept] - lp.right_hand_side[kept],
            reduced.constraint_matrix.multiply(x_red) - reduced.right_hand_side,
        )

    def test_names_follow_kept_indices(self) -> None:
        """测试变量名与约束名随保留的行列筛选"""
        lp = _lp(
            [1.0, 1.0],
            [[1.0, 0.0], [1.0, 1.0]],
            [1.0, 4.0],
            1,
            [2.0, 0.0],
            [2.0, np.inf],
            variable_names=("a", "b"),
            constraint_names=("r0", "r1"),
        )
        reduced, _ = presolve(lp)

        assert reduced.variable_names == ("b",)
        assert reduced.constraint_names == ("r1",)

    def test_postsolve_dimension_mismatch(self) -> None:
        """测试化简点维度不符"""
        lp = _lp([3.0, 1.0], [[1.0, 1.0]], [5.0], 1, [2.0, 0.0], [2.0, np.inf])
        _, transform = presolve(lp)

        with pytest.raises(DimensionMismatchError):
            postsolve(transform, [1.0, 2.0], [1.0], lp)


def _with_removable_parts(lp: LinearProgram, rng: np.random.Generator) -> LinearProgram:
    """在 lp 上追加一个固定变量、一个空列、一个空不等式行和一个空等式行"""
    m, n = lp.num_constraints, lp.num_variables
    fixed_column = 0.1 * rng.standard_normal(m)
    fixed_value = rng.uniform(0.5, 1.0)
    columns = sp.hstack(
        [
            lp.constraint_matrix.to_scipy(),
            sp.csr_matrix(fixed_column.reshape(-1, 1)),
            sp.csr_matrix((m, 1)),
        ]
    )
    matrix = sp.vstack([sp.csr_matrix((1, n + 2)), columns, sp.csr_matrix((1, n + 2))])
    return LinearProgram(
        objective_vector=np.concatenate(
            [lp.objective_vector, [rng.standard_normal(), abs(rng.standard_normal())]]
        ),
        constraint_matrix=SparseMatrix(sp.csr_matrix(matrix)),
        right_hand_side=np.concatenate(
            [[-0.5], lp.right_hand_side + fixed_value * fixed_column, [0.0]]
        ),
        num_inequality_rows=lp.num_inequality_rows + 1,
        variable_lower=np.concatenate([lp.variable_lower, [fixed_value, 0.0]]),
        variable_upper=np.concatenate([lp.variable_upper, [fixed_value, np.inf]]),
        name=f"{lp.name}_padded",
    )


class TestRandomRoundTrip:
    """随机问题上预求解、求解、后处理的整体测试"""

    @pytest.mark.parametrize("seed", range(20))
    def test_postsolved_solution_meets_tolerance(
        self,
        seed: int,
        random_lp_factory: Callable[..., LinearProgram],
        test_params: SolverParams,
    ) -> None:
        """测试后处理的解在原问题上以 2ε 满足终止判据"""
        eps = 1e-6
        base = random_lp_factory(seed=seed)
        lp = _with_removable_parts(base, np.random.default_rng(1000 + seed))

        reduced, _ = presolve(lp)
        assert reduced.num_variables == base.num_variables
        assert reduced.num_constraints == base.num_constraints

        result = solve(lp, test_params.with_overrides(eps_optimal=eps))
        assert result.is_optimal, result

        info = convergence_info(lp, result.primal_solution, result.dual_solution)
        assert check_termination(info, 2.0 * eps), info
        assert result.dual_solution[0] == 0.0
        assert result.dual_solution[-1] == 0.0
