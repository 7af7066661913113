"""Tests for 手工实例与随机 LP"""

from collections.abc import Callable

import numpy as np
import pytest

from folp.core.exceptions import InvalidSizeError
from folp.core.model import LinearProgram, validate
from folp.generators import (
    HandcraftedInstance,
    handcrafted_instance,
    handcrafted_suite,
    random_feasible_lp,
)
from folp.solver.termination import convergence_info


class TestHandcrafted:
    """手工实例测试"""

    def test_suite(self) -> None:
        """测试实例名称唯一且顺序固定"""
        names = [instance.name for instance in handcrafted_suite()]

        assert len(names) == 13
        assert len(set(names)) == len(names)
        assert names[0] == "one_var"
        assert names == [instance.name for instance in handcrafted_suite()]

    @pytest.mark.parametrize("instance", handcrafted_suite(), ids=lambda inst: inst.name)
    def test_objective_matches_reference(
        self, instance: HandcraftedInstance, lp_oracle: Callable[[LinearProgram], float]
    ) -> None:
        """测试记录的最优值与 HiGHS 一致"""
        validate(instance.lp)
        assert lp_oracle(instance.lp) == pytest.approx(instance.objective, rel=1e-7, abs=1e-9)

    @pytest.mark.parametrize(
        "instance",
        [inst for inst in handcrafted_suite() if inst.primal is not None],
        ids=lambda inst: inst.name,
    )
    def test_known_primal_is_optimal(self, instance: HandcraftedInstance) -> None:
        """测试记录的原始解可行且达到最优值"""
        assert instance.primal is not None
        lp = instance.lp
        info = convergence_info(lp, instance.primal, np.zeros(lp.num_constraints))

        assert info.primal_residual_norm == pytest.approx(0.0, abs=1e-12)
        assert info.primal_objective == pytest.approx(instance.objective)
        assert np.all(instance.primal >= lp.variable_lower)
        assert np.all(instance.primal <= lp.variable_upper)

    def test_unknown_name(self) -> None:
        """测试名称不存在"""
        with pytest.raises(KeyError):
            handcrafted_instance("no_such_instance")


class TestRandomFeasibleLp:
    """随机 LP 测试"""

    @pytest.mark.parametrize("seed", range(4))
    def test_has_finite_optimum(
        self, seed: int, lp_oracle: Callable[[LinearProgram], float]
    ) -> None:
        """测试生成的问题有有限最优值"""
        lp = random_feasible_lp(10, 5, 3, density=0.4, seed=seed)

        validate(lp)
        assert np.isfinite(lp_oracle(lp))

    def test_no_empty_rows(self) -> None:
        """测试稀疏生成时每行至少一个非零元"""
        lp = random_feasible_lp(20, 15, 5, density=0.05, seed=3)
        assert np.all(lp.constraint_matrix.row_nnz() >= 1)

    def test_reproducible(self) -> None:
        """测试相同种子给出相同问题"""
        first = random_feasible_lp(8, 4, 2, seed=11)
        second = random_feasible_lp(8, 4, 2, seed=11)

        np.testing.assert_array_equal(first.objective_vector, second.objective_vector)
        np.testing.assert_array_equal(
            first.constraint_matrix.to_dense(), second.constraint_matrix.to_dense()
        )
        assert first.name == "random_8x6_s11"

    @pytest.mark.parametrize(
        ("n", "m1", "m2", "density"),
        [(0, 1, 1, 0.5), (3, -1, 1, 0.5), (3, 1, 1, 0.0), (3, 1, 1, 1.5)],
    )
    def test_invalid_sizes(self, n: int, m1: int, m2: int, density: float) -> None:
        """测试非法维度与密度"""
        with pytest.raises(InvalidSizeError):
            random_feasible_lp(n, m1, m2, density=density)
