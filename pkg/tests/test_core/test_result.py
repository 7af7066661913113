"""Tests for 收敛信息与求解结果"""

import numpy as np
import pytest

from folp.core.result import (
    ConvergenceInfo,
    KktPassLedger,
    SolveResult,
    TerminationReason,
    TraceEntry,
)


def _info(**changes: float) -> ConvergenceInfo:
    values = {
        "primal_objective": 2.0,
        "dual_objective": 1.0,
        "gap_abs": 1.0,
        "primal_residual_norm": 3.0,
        "dual_residual_norm": 4.0,
        "norm_q": 2.0,
        "norm_c": 1.0,
    }
    values.update(changes)
    return ConvergenceInfo(**values)


def _result(reason: TerminationReason, *, maximize: bool = False) -> SolveResult:
    return SolveResult(
        termination_reason=reason,
        primal_solution=np.array([1.0]),
        dual_solution=np.array([1.0]),
        reduced_costs=np.array([0.0]),
        final_info=_info(primal_objective=5.0),
        iterations=10,
        kkt_passes=12.5,
        wall_seconds=0.1,
        instance_name="demo",
        is_maximization=maximize,
    )


class TestTerminationReason:
    """TerminationReason 测试"""

    def test_string_values(self) -> None:
        """测试输出用的字符串"""
        assert str(TerminationReason.OPTIMAL) == "Optimal"
        assert str(TerminationReason.KKT_PASS_LIMIT) == "KktPassLimit"
        assert str(TerminationReason.PRIMAL_INFEASIBLE) == "PrimalInfeasibleDetected"

    def test_classification(self) -> None:
        """测试上限与不可行分类"""
        assert TerminationReason.TIME_LIMIT.is_limit
        assert TerminationReason.ITERATION_LIMIT.is_limit
        assert not TerminationReason.OPTIMAL.is_limit
        assert TerminationReason.DUAL_UNBOUNDED.is_infeasibility
        assert not TerminationReason.NUMERICAL_ERROR.is_infeasibility


class TestConvergenceInfo:
    """ConvergenceInfo 测试"""

    def test_relative_quantities(self) -> None:
        """测试相对间隙与相对残差"""
        info = _info()

        assert info.relative_gap == pytest.approx(1.0 / 4.0)
        assert info.relative_primal_residual == pytest.approx(1.0)
        assert info.relative_dual_residual == pytest.approx(2.0)

    def test_dict_round_trip(self) -> None:
        """测试字典往返"""
        info = _info()
        assert ConvergenceInfo.from_dict(info.to_dict()) == info


class TestKktPassLedger:
    """KktPassLedger 测试"""

    def test_counts(self) -> None:
        """测试 (K 次数 + K⊤ 次数) / 2"""
        ledger = KktPassLedger()
        ledger.charge_k(3)
        ledger.charge_kt()

        assert ledger.kkt_passes == 2.0


class TestTraceEntry:
    """TraceEntry 测试"""

    def test_dict_round_trip_without_average(self) -> None:
        """测试没有平均点信息的快照"""
        entry = TraceEntry(
            iteration=0,
            kkt_passes=1.0,
            outer_iteration=0,
            primal_weight=1.0,
            step_size=0.5,
            current=_info(),
            average=None,
        )
        assert TraceEntry.from_dict(entry.to_dict()) == entry

    def test_dict_round_trip_with_restart(self) -> None:
        """测试带重启信息的快照"""
        entry = TraceEntry(
            iteration=40,
            kkt_passes=81.0,
            outer_iteration=1,
            primal_weight=2.0,
            step_size=0.25,
            current=_info(),
            average=_info(gap_abs=0.5),
            candidate_gap=0.01,
            restart_reason="artificial",
        )
        assert TraceEntry.from_dict(entry.to_dict()) == entry


class TestSolveResult:
    """SolveResult 测试"""

    def test_objective_value(self) -> None:
        """测试目标值"""
        result = _result(TerminationReason.OPTIMAL)
        assert result.is_optimal
        assert result.objective_value == 5.0

    def test_objective_value_maximization(self) -> None:
        """测试最大化问题取回原符号"""
        assert _result(TerminationReason.OPTIMAL, maximize=True).objective_value == -5.0

    def test_objective_value_without_info(self) -> None:
        """测试没有收敛信息时目标值为 None"""
        result = _result(TerminationReason.PRIMAL_INFEASIBLE)
        result.final_info = None
        assert result.objective_value is None

    def test_str(self) -> None:
        """测试单行描述"""
        text = str(_result(TerminationReason.KKT_PASS_LIMIT))
        assert text.startswith("[KktPassLimit] demo")
        assert "kkt_passes=12.5" in text
