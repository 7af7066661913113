"""PDHG solver - 预求解、缩放、带重启的外层/内层循环

流程：预求解 → 缩放 → 在起点检查终止 → 内层迭代（步长策略 + 加权平均），
每 evaluation_cadence 次迭代在当前点与平均点上检查终止并评估重启。
终止判据始终在预求解后、未缩放的问题上计算。
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from folp.config import RestartScheme, SolverParams
from folp.core.exceptions import (
    DimensionMismatchError,
    DualUnboundedError,
    NonFiniteIterateError,
    PrimalInfeasibleError,
    StepSizeUnderflowError,
)
from folp.core.model import (
    LinearProgram,
    PrimalDualPoint,
    project_dual,
    project_primal,
    project_reduced_costs,
    validate,
)
from folp.core.result import (
    ConvergenceInfo,
    KktPassLedger,
    SolveResult,
    TerminationReason,
    TraceEntry,
)
from folp.solver.restart import (
    initialize_primal_weight,
    restart_candidate,
    restart_gap,
    should_restart,
    update_primal_weight,
)
from folp.solver.state import SolverState
from folp.solver.steps import create_step_policy
from folp.solver.termination import check_termination, convergence_info
from folp.transforms.presolve import PresolveTransform, postsolve, presolve
from folp.transforms.scaling import DiagonalScaling, rescale_problem, scale_point, unscale_point

if TYPE_CHECKING:
    from collections.abc import Callable

    from folp.solver.steps import StepPolicy

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StepRecord:
    """传给观察回调的单步记录（缩放空间中的量）

    Attributes:
        iteration: 总迭代数 k（1 起计）
        outer_iteration: 外层循环序号 n
        inner_iteration: 外层循环内的迭代数 t
        step_size: 本步 η
        primal_weight: 本步 ω
        previous: 步前的点
        point: 步后的点
        average: 步后的加权平均
        movement_sq: ‖z′ − z‖²_ω
        cross_term: (y′ − y)⊤K(x′ − x)
    """

    iteration: int
    outer_iteration: int
    inner_iteration: int
    step_size: float
    primal_weight: float
    previous: PrimalDualPoint
    point: PrimalDualPoint
    average: PrimalDualPoint
    movement_sq: float
    cross_term: float


@dataclass
class _Outcome:
    reason: TerminationReason
    point: PrimalDualPoint
    which: str = "current"


@dataclass
class PdhgSolver:
    """带重启的 PDHG 求解器

    Attributes:
        params: 求解器参数
        callback: 每个被接受的步之后调用，参数为 StepRecord
    """

    params: SolverParams = field(default_factory=SolverParams)
    callback: Callable[[StepRecord], None] | None = None

    def solve(self, lp_raw: LinearProgram, z0: PrimalDualPoint | None = None) -> SolveResult:
        """求解 lp_raw

        z0 位于原始空间，缺省为零点。算法性结论（不可行、数值错误、
        达到上限）通过 termination_reason 返回，不抛异常。

        Raises:
            ValidationError: lp_raw 或 z0 不合法
        """
        params = self.params
        start_time = time.perf_counter()
        validate(lp_raw, check_bounds=not params.presolve)
        if z0 is not None:
            _check_point(lp_raw, z0)

        if params.presolve:
            try:
                lp, transform = presolve(lp_raw)
            except PrimalInfeasibleError as e:
                logger.info("Presolve proved infeasibility: %s", e)
                return _infeasible_result(lp_raw, TerminationReason.PRIMAL_INFEASIBLE, start_time)
            except DualUnboundedError as e:
                logger.info("Presolve proved unboundedness: %s", e)
                return _infeasible_result(lp_raw, TerminationReason.DUAL_UNBOUNDED, start_time)
        else:
            lp, transform = lp_raw, PresolveTransform.identity(lp_raw)

        if lp.constraint_matrix.nnz == 0:
            return self._solve_trivial(lp_raw, start_time)

        ledger = KktPassLedger()
        lp_scaled, scaling = rescale_problem(
            lp, params.ruiz_iterations, params.use_pock_chambolle, params.pc_alpha
        )
        z_start = _starting_point(lp, lp_scaled, scaling, transform, z0)

        policy = create_step_policy(params)
        eta_hat = policy.initial_step_size(lp_scaled, ledger)
        omega = params.primal_importance
        if params.scale_invariant_initial_primal_weight:
            omega *= initialize_primal_weight(
                lp_scaled.objective_vector, lp_scaled.right_hand_side, params.eps_zero
            )
        state = SolverState.initial(z_start, eta_hat, omega, ledger)
        logger.debug(
            "Starting %s: n=%d, m=%d, nnz=%d, eta=%.3e, omega=%.3e",
            policy.name,
            lp.num_variables,
            lp.num_constraints,
            lp.constraint_matrix.nnz,
            eta_hat,
            omega,
        )

        trace: list[TraceEntry] = []
        outcome = self._iterate(lp, lp_scaled, scaling, state, policy, trace, start_time)

        final_point = unscale_point(scaling, outcome.point)
        x, y = postsolve(transform, final_point.primal, final_point.dual, lp_raw)
        result = _build_result(
            lp_raw,
            outcome.reason,
            x,
            y,
            iterations=state.k_total,
            kkt_passes=ledger.kkt_passes,
            wall_seconds=time.perf_counter() - start_time,
            trace=trace,
            restarts=state.restarts,
            termination_point=outcome.which,
        )
        logger.info("%s", result)
        return result

    # ------------------------------------------------------------------
    # 主循环
    # ------------------------------------------------------------------

    def _iterate(
        self,
        lp: LinearProgram,
        lp_scaled: LinearProgram,
        scaling: DiagonalScaling,
        state: SolverState,
        policy: StepPolicy,
        trace: list[TraceEntry],
        start_time: float,
    ) -> _Outcome:
        params = self.params
        ledger = state.ledger

        def evaluate(point: PrimalDualPoint) -> ConvergenceInfo:
            unscaled = unscale_point(scaling, point)
            return convergence_info(lp, unscaled.primal, unscaled.dual, ledger)

        initial_info = evaluate(state.current)
        trace.append(
            TraceEntry(
                iteration=0,
                kkt_passes=ledger.kkt_passes,
                outer_iteration=0,
                primal_weight=state.omega,
                step_size=state.eta_hat,
                current=initial_info,
                average=None,
            )
        )
        if check_termination(initial_info, params.eps_optimal):
            return _Outcome(TerminationReason.OPTIMAL, state.current)

        while True:
            limit = self._limit_reached(state, start_time)
            if limit is not None:
                return _Outcome(limit, state.current)

            previous = state.current
            try:
                step = policy.step(
                    lp_scaled, previous, state.omega, state.eta_hat, state.k_total + 1, ledger
                )
            except (NonFiniteIterateError, StepSizeUnderflowError) as e:
                logger.warning("Numerical error at iteration %d: %s", state.k_total + 1, e)
                return self._numerical_fallback(state, evaluate)

            omega_used = state.omega
            state.advance(step.point, step.step_size, step.next_step_size)
            if self.callback is not None:
                self.callback(
                    StepRecord(
                        iteration=state.k_total,
                        outer_iteration=state.n_outer,
                        inner_iteration=state.t_inner,
                        step_size=step.step_size,
                        primal_weight=omega_used,
                        previous=previous,
                        point=step.point,
                        average=state.average(),
                        movement_sq=step.movement_sq,
                        cross_term=step.cross_term,
                    )
                )

            if state.k_total % params.evaluation_cadence != 0:
                continue

            average = state.average()
            current_info = evaluate(state.current)
            average_info = evaluate(average)
            logger.debug(
                "iter %d  kkt %.1f  omega %.3e  eta %.3e  gap %.2e/%.2e  pres %.2e  dres %.2e",
                state.k_total,
                ledger.kkt_passes,
                state.omega,
                state.eta_last,
                current_info.relative_gap,
                average_info.relative_gap,
                current_info.relative_primal_residual,
                current_info.relative_dual_residual,
            )
            if check_termination(current_info, params.eps_optimal):
                trace.append(self._trace_entry(state, current_info, average_info))
                return _Outcome(TerminationReason.OPTIMAL, state.current, "current")
            if check_termination(average_info, params.eps_optimal):
                trace.append(self._trace_entry(state, current_info, average_info))
                return _Outcome(TerminationReason.OPTIMAL, average, "average")

            candidate_gap: float | None = None
            reason = None
            if params.restart_scheme is not RestartScheme.NONE:
                candidate = restart_candidate(
                    lp_scaled,
                    state.current,
                    average,
                    state.last_restart,
                    state.omega,
                    allow_current=params.restart_to_current,
                    ledger=ledger,
                )
                candidate_gap = candidate.gap
                reason = should_restart(state, candidate.gap, params)
                if reason is None:
                    state.last_candidate_gap = candidate.gap
                else:
                    old_start = state.last_restart
                    omega_new = update_primal_weight(
                        candidate.point,
                        old_start,
                        state.omega,
                        params.theta_smoothing,
                        params.eps_zero,
                    )
                    state.restart(candidate.point, omega_new)
                    state.reference_gap = restart_gap(
                        lp_scaled, candidate.point, old_start, omega_new, ledger
                    )
                    logger.debug(
                        "Restart %d (%s) to %s, omega %.3e",
                        state.restarts,
                        reason,
                        candidate.source,
                        omega_new,
                    )

            trace.append(
                self._trace_entry(
                    state,
                    current_info,
                    average_info,
                    candidate_gap=candidate_gap,
                    restart_reason=str(reason) if reason is not None else None,
                )
            )

    def _limit_reached(self, state: SolverState, start_time: float) -> TerminationReason | None:
        params = self.params
        if params.iteration_limit is not None and state.k_total >= params.iteration_limit:
            return TerminationReason.ITERATION_LIMIT
        if params.kkt_pass_limit is not None and state.ledger.kkt_passes >= params.kkt_pass_limit:
            return TerminationReason.KKT_PASS_LIMIT
        if time.perf_counter() - start_time >= params.time_limit_seconds:
            return TerminationReason.TIME_LIMIT
        return None

    def _numerical_fallback(
        self,
        state: SolverState,
        evaluate: Callable[[PrimalDualPoint], ConvergenceInfo],
    ) -> _Outcome:
        """数值错误后在平均点上做一次终止检查；平均点也不有限时退回上次重启点"""
        average = state.average()
        if average.is_finite():
            info = evaluate(average)
            if check_termination(info, self.params.eps_optimal):
                return _Outcome(TerminationReason.OPTIMAL, average, "average")
            return _Outcome(TerminationReason.NUMERICAL_ERROR, average, "average")
        return _Outcome(TerminationReason.NUMERICAL_ERROR, state.last_restart, "restart")

    @staticmethod
    def _trace_entry(
        state: SolverState,
        current_info: ConvergenceInfo,
        average_info: ConvergenceInfo | None,
        candidate_gap: float | None = None,
        restart_reason: str | None = None,
    ) -> TraceEntry:
        return TraceEntry(
            iteration=state.k_total,
            kkt_passes=state.ledger.kkt_passes,
            outer_iteration=state.n_outer,
            primal_weight=state.omega,
            step_size=state.eta_last,
            current=current_info,
            average=average_info,
            candidate_gap=candidate_gap,
            restart_reason=restart_reason,
        )

    # ------------------------------------------------------------------
    # 无非零元的问题
    # ------------------------------------------------------------------

    def _solve_trivial(self, lp_raw: LinearProgram, start_time: float) -> SolveResult:
        """K 没有非零元时，预求解规则直接给出解或不可行结论"""
        try:
            reduced, transform = presolve(lp_raw)
        except PrimalInfeasibleError:
            return _infeasible_result(lp_raw, TerminationReason.PRIMAL_INFEASIBLE, start_time)
        except DualUnboundedError:
            return _infeasible_result(lp_raw, TerminationReason.DUAL_UNBOUNDED, start_time)
        x, y = postsolve(
            transform,
            np.zeros(reduced.num_variables),
            np.zeros(reduced.num_constraints),
            lp_raw,
        )
        info = convergence_info(lp_raw, x, y)
        reason = (
            TerminationReason.OPTIMAL
            if check_termination(info, self.params.eps_optimal)
            else TerminationReason.NUMERICAL_ERROR
        )
        return _build_result(
            lp_raw,
            reason,
            x,
            y,
            iterations=0,
            kkt_passes=0.0,
            wall_seconds=time.perf_counter() - start_time,
        )


# ============================================================================
# 辅助函数
# ============================================================================


def _check_point(lp: LinearProgram, z: PrimalDualPoint) -> None:
    if z.primal.shape != (lp.num_variables,):
        raise DimensionMismatchError("starting primal point", lp.num_variables, z.primal.size)
    if z.dual.shape != (lp.num_constraints,):
        raise DimensionMismatchError("starting dual point", lp.num_constraints, z.dual.size)


def _starting_point(
    lp: LinearProgram,
    lp_scaled: LinearProgram,
    scaling: DiagonalScaling,
    transform: PresolveTransform,
    z0: PrimalDualPoint | None,
) -> PrimalDualPoint:
    """把原始空间的起点映射到缩放空间并投影到 X × Y"""
    if z0 is None:
        reduced = PrimalDualPoint.zeros(lp)
    else:
        reduced = PrimalDualPoint(z0.primal[transform.kept_cols], z0.dual[transform.kept_rows])
    scaled = scale_point(scaling, reduced)
    return PrimalDualPoint(
        project_primal(lp_scaled, scaled.primal), project_dual(lp_scaled, scaled.dual)
    )


def _build_result(
    lp_raw: LinearProgram,
    reason: TerminationReason,
    x: np.ndarray,
    y: np.ndarray,
    *,
    iterations: int,
    kkt_passes: float,
    wall_seconds: float,
    trace: list[TraceEntry] | None = None,
    restarts: int = 0,
    termination_point: str = "current",
) -> SolveResult:
    """在原始问题上计算约化成本与最终收敛信息（不计入 KKT pass）"""
    kty = lp_raw.constraint_matrix.multiply_transpose(y)
    reduced_costs = project_reduced_costs(lp_raw, lp_raw.objective_vector - kty)
    finite = bool(np.all(np.isfinite(x)) and np.all(np.isfinite(y)))
    final_info = convergence_info(lp_raw, x, y) if finite else None
    return SolveResult(
        termination_reason=reason,
        primal_solution=x,
        dual_solution=y,
        reduced_costs=reduced_costs.values,
        final_info=final_info,
        iterations=iterations,
        kkt_passes=kkt_passes,
        wall_seconds=wall_seconds,
        trace=trace or [],
        instance_name=lp_raw.name,
        is_maximization=lp_raw.is_maximization,
        restarts=restarts,
        termination_point=termination_point,
    )


def _infeasible_result(
    lp_raw: LinearProgram, reason: TerminationReason, start_time: float
) -> SolveResult:
    return SolveResult(
        termination_reason=reason,
        primal_solution=np.zeros(lp_raw.num_variables),
        dual_solution=np.zeros(lp_raw.num_constraints),
        reduced_costs=np.zeros(lp_raw.num_variables),
        final_info=None,
        iterations=0,
        kkt_passes=0.0,
        wall_seconds=time.perf_counter() - start_time,
        instance_name=lp_raw.name,
        is_maximization=lp_raw.is_maximization,
    )


def solve(
    lp: LinearProgram,
    params: SolverParams | None = None,
    z0: PrimalDualPoint | None = None,
    callback: Callable[[StepRecord], None] | None = None,
) -> SolveResult:
    """便捷函数：用给定参数求解 lp

    Args:
        lp: 待求解的问题
        params: 求解器参数，缺省为默认配置
        z0: 起点（原始空间），缺省为零点
        callback: 每步观察回调

    Returns:
        SolveResult
    """
    solver = PdhgSolver(params=params or SolverParams(), callback=callback)
    return solver.solve(lp, z0)


__all__ = ["PdhgSolver", "StepRecord", "solve"]
