"""SolverState - 外层/内层循环的可变状态"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from folp.core.model import PrimalDualPoint
from folp.core.result import KktPassLedger


@dataclass
class SolverState:
    """一次求解的全部可变状态（只属于单个求解）

    加权平均 z̄ = Σ ηᵢ zⁱ / Σ ηᵢ 以累加和的形式保存，重启时清零。
    """

    current: PrimalDualPoint
    last_restart: PrimalDualPoint
    omega: float
    eta_hat: float
    ledger: KktPassLedger = field(default_factory=KktPassLedger)
    prev_restart: PrimalDualPoint | None = None
    eta_last: float = 0.0
    k_total: int = 0
    n_outer: int = 0
    t_inner: int = 0
    last_candidate_gap: float | None = None
    reference_gap: float = math.inf
    restarts: int = 0
    avg_weight_sum: float = 0.0
    _avg_primal_sum: np.ndarray = field(init=False, repr=False)
    _avg_dual_sum: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._avg_primal_sum = np.zeros_like(self.current.primal)
        self._avg_dual_sum = np.zeros_like(self.current.dual)

    @classmethod
    def initial(
        cls,
        z0: PrimalDualPoint,
        eta_hat: float,
        omega: float,
        ledger: KktPassLedger | None = None,
    ) -> SolverState:
        return cls(
            current=z0.copy(),
            last_restart=z0.copy(),
            omega=omega,
            eta_hat=eta_hat,
            ledger=ledger if ledger is not None else KktPassLedger(),
        )

    # ------------------------------------------------------------------
    # 加权平均
    # ------------------------------------------------------------------

    def accumulate(self, z: PrimalDualPoint, weight: float) -> None:
        self._avg_primal_sum += weight * z.primal
        self._avg_dual_sum += weight * z.dual
        self.avg_weight_sum += weight

    def reset_average(self) -> None:
        self._avg_primal_sum[:] = 0.0
        self._avg_dual_sum[:] = 0.0
        self.avg_weight_sum = 0.0

    def average(self) -> PrimalDualPoint:
        """当前外层循环的加权平均；尚无步时为当前点"""
        if self.avg_weight_sum <= 0.0:
            return self.current.copy()
        return PrimalDualPoint(
            self._avg_primal_sum / self.avg_weight_sum,
            self._avg_dual_sum / self.avg_weight_sum,
        )

    # ------------------------------------------------------------------
    # 迭代与重启
    # ------------------------------------------------------------------

    def advance(self, z: PrimalDualPoint, step_size: float, next_step_size: float) -> None:
        """记录一次被接受的步"""
        self.current = z
        self.eta_last = step_size
        self.eta_hat = next_step_size
        self.k_total += 1
        self.t_inner += 1
        self.accumulate(z, step_size)

    def restart(self, z_start: PrimalDualPoint, omega: float) -> None:
        """从 z_start 开始新的外层循环"""
        self.prev_restart = self.last_restart
        self.last_restart = z_start.copy()
        self.current = z_start.copy()
        self.omega = omega
        self.reset_average()
        self.t_inner = 0
        self.n_outer += 1
        self.restarts += 1
        self.last_candidate_gap = None
