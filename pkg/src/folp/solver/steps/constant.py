"""Constant - 固定步长 η = 0.9/‖K‖₂"""

from __future__ import annotations

from typing import TYPE_CHECKING, override

from folp.core.sparse import estimate_spectral_norm
from folp.solver.steps.base import StepOutcome, StepPolicy, movement_and_cross, pdhg_trial

if TYPE_CHECKING:
    from folp.core.model import LinearProgram, PrimalDualPoint
    from folp.core.result import KktPassLedger

# 幂迭代可能低估 ‖K‖₂
SAFETY_FACTOR = 0.9


class ConstantStepPolicy(StepPolicy):
    """固定步长；幂迭代的乘法同样计入 KKT pass"""

    name = "constant"
    description = "Fixed step size 0.9/||K||_2 from power iteration"

    @override
    def initial_step_size(self, lp: LinearProgram, ledger: KktPassLedger | None = None) -> float:
        spectral_norm = estimate_spectral_norm(
            lp.constraint_matrix,
            relative_tol=self.params.power_iteration_tol,
            max_iterations=self.params.power_iteration_max,
            seed=self.params.seed,
            ledger=ledger,
        )
        return SAFETY_FACTOR / spectral_norm

    @override
    def step(
        self,
        lp: LinearProgram,
        z: PrimalDualPoint,
        omega: float,
        step_size: float,
        iteration: int,
        ledger: KktPassLedger | None = None,
    ) -> StepOutcome:
        z_next, delta_kx = pdhg_trial(lp, z, step_size, omega, ledger)
        _, movement_sq, cross = movement_and_cross(z, z_next, delta_kx, omega)
        return StepOutcome(z_next, step_size, step_size, movement_sq, cross)
