"""Result - 收敛信息、KKT 计数与求解结果模型"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    import numpy as np
    from numpy.typing import NDArray


class TerminationReason(Enum):
    """求解终止原因"""

    OPTIMAL = "Optimal"
    ITERATION_LIMIT = "IterationLimit"
    KKT_PASS_LIMIT = "KktPassLimit"
    TIME_LIMIT = "TimeLimit"
    NUMERICAL_ERROR = "NumericalError"
    PRIMAL_INFEASIBLE = "PrimalInfeasibleDetected"
    DUAL_UNBOUNDED = "DualUnboundedDetected"

    def __str__(self) -> str:
        return self.value

    @property
    def is_limit(self) -> bool:
        """是否因达到资源上限而终止"""
        return self in {
            TerminationReason.ITERATION_LIMIT,
            TerminationReason.KKT_PASS_LIMIT,
            TerminationReason.TIME_LIMIT,
        }

    @property
    def is_infeasibility(self) -> bool:
        """是否由预求解判定不可行或无界"""
        return self in {TerminationReason.PRIMAL_INFEASIBLE, TerminationReason.DUAL_UNBOUNDED}


@dataclass(frozen=True)
class ConvergenceInfo:
    """某一点上的终止判据各项

    Attributes:
        primal_objective: c⊤x + c0
        dual_objective: q⊤y + l⊤λ⁺ − u⊤λ⁻ + c0
        gap_abs: |dual_objective − primal_objective|
        primal_residual_norm: ‖(Ax − b; (h − Gx)⁺)‖₂
        dual_residual_norm: ‖c − K⊤y − λ‖₂
        norm_q: ‖q‖₂
        norm_c: ‖c‖₂
    """

    primal_objective: float
    dual_objective: float
    gap_abs: float
    primal_residual_norm: float
    dual_residual_norm: float
    norm_q: float
    norm_c: float

    @property
    def relative_gap(self) -> float:
        return self.gap_abs / (1.0 + abs(self.primal_objective) + abs(self.dual_objective))

    @property
    def relative_primal_residual(self) -> float:
        return self.primal_residual_norm / (1.0 + self.norm_q)

    @property
    def relative_dual_residual(self) -> float:
        return self.dual_residual_norm / (1.0 + self.norm_c)

    def to_dict(self) -> dict[str, float]:
        return {
            "primal_objective": self.primal_objective,
            "dual_objective": self.dual_objective,
            "gap_abs": self.gap_abs,
            "primal_residual_norm": self.primal_residual_norm,
            "dual_residual_norm": self.dual_residual_norm,
            "norm_q": self.norm_q,
            "norm_c": self.norm_c,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ConvergenceInfo:
        return cls(**{key: float(data[key]) for key in cls.__dataclass_fields__})


@dataclass
class KktPassLedger:
    """K 与 K⊤ 乘法计数器，只增不减"""

    k_multiplies: int = 0
    kt_multiplies: int = 0

    def charge_k(self, count: int = 1) -> None:
        self.k_multiplies += count

    def charge_kt(self, count: int = 1) -> None:
        self.kt_multiplies += count

    @property
    def kkt_passes(self) -> float:
        """(K 乘法次数 + K⊤ 乘法次数) / 2"""
        return (self.k_multiplies + self.kt_multiplies) / 2.0


@dataclass(frozen=True)
class TraceEntry:
    """一次评估（每 evaluation_cadence 次迭代）的快照"""

    iteration: int
    kkt_passes: float
    outer_iteration: int
    primal_weight: float
    step_size: float
    current: ConvergenceInfo
    average: ConvergenceInfo | None
    candidate_gap: float | None = None
    restart_reason: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "iteration": self.iteration,
            "kkt_passes": self.kkt_passes,
            "outer_iteration": self.outer_iteration,
            "primal_weight": self.primal_weight,
            "step_size": self.step_size,
            "current": self.current.to_dict(),
            "average": self.average.to_dict() if self.average is not None else None,
            "candidate_gap": self.candidate_gap,
            "restart_reason": self.restart_reason,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> TraceEntry:
        average = data.get("average")
        return cls(
            iteration=int(data["iteration"]),
            kkt_passes=float(data["kkt_passes"]),
            outer_iteration=int(data["outer_iteration"]),
            primal_weight=float(data["primal_weight"]),
            step_size=float(data["step_size"]),
            current=ConvergenceInfo.from_dict(data["current"]),
            average=ConvergenceInfo.from_dict(average) if average is not None else None,
            candidate_gap=data.get("candidate_gap"),
            restart_reason=data.get("restart_reason"),
        )


@dataclass
class SolveResult:
    """一次求解的结果，向量位于原始（预求解前）空间"""

    termination_reason: TerminationReason
    primal_solution: NDArray[np.float64]
    dual_solution: NDArray[np.float64]
    reduced_costs: NDArray[np.float64]
    final_info: ConvergenceInfo | None
    iterations: int
    kkt_passes: float
    wall_seconds: float
    trace: list[TraceEntry] = field(default_factory=list)
    instance_name: str = ""
    is_maximization: bool = False
    restarts: int = 0
    termination_point: str = "current"  # current | average | restart

    @property
    def is_optimal(self) -> bool:
        return self.termination_reason is TerminationReason.OPTIMAL

    @property
    def objective_value(self) -> float | None:
        """原问题意义下的目标值（最大化问题取回原符号）"""
        if self.final_info is None:
            return None
        value = self.final_info.primal_objective
        return -value if self.is_maximization else value

    def __str__(self) -> str:
        objective = self.objective_value
        shown = f"{objective:.10g}" if objective is not None else "n/a"
        return (
            f"[{self.termination_reason}] {self.instance_name or '<lp>'}: "
            f"objective={shown}, iterations={self.iterations}, kkt_passes={self.kkt_passes:g}"
        )
