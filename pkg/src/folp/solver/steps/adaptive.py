"""Adaptive - 自适应步长

每次试探后由 η̄ = ‖dz‖²_ω / (2·cross) 给出可接受的上界（cross ≤ 0 时为 +∞），η ≤ η̄ 即接受；
下一步长取 min((1 − (k+1)^−0.3)·η̄, (1 + (k+1)^−0.6)·η)。
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, override

from folp.core.exceptions import InvalidSizeError, StepSizeUnderflowError
from folp.core.sparse import max_abs_entry
from folp.solver.steps.base import (
    MIN_STEP_SIZE,
    StepOutcome,
    StepPolicy,
    movement_and_cross,
    pdhg_trial,
    step_size_limit,
)

if TYPE_CHECKING:
    from folp.core.model import LinearProgram, PrimalDualPoint
    from folp.core.result import KktPassLedger

logger = logging.getLogger(__name__)


def next_step_size(eta: float, limit: float, iteration: int) -> float:
    """min((1 − (k+1)^−0.3)·η̄, (1 + (k+1)^−0.6)·η)"""
    shrink = (1.0 - (iteration + 1) ** -0.3) * limit
    grow = (1.0 + (iteration + 1) ** -0.6) * eta
    return min(shrink, grow)


def adaptive_step(
    lp: LinearProgram,
    z: PrimalDualPoint,
    omega: float,
    eta_hat: float,
    iteration: int,
    ledger: KktPassLedger | None = None,
) -> StepOutcome:
    """带回溯的 PDHG 步；每次试探（含被拒绝的）都计入 ledger

    Raises:
        InvalidSizeError: iteration < 1
        StepSizeUnderflowError: η 低于 1e-300
        NonFiniteIterateError: 出现 NaN 或无穷
    """
    if iteration < 1:
        raise InvalidSizeError("iteration index", iteration, "must be >= 1")

    eta = eta_hat
    trials = 0
    while True:
        if not eta >= MIN_STEP_SIZE:
            raise StepSizeUnderflowError(eta)
        trials += 1
        z_next, delta_kx = pdhg_trial(lp, z, eta, omega, ledger)
        dz, movement_sq, cross = movement_and_cross(z, z_next, delta_kx, omega)
        limit = step_size_limit(dz, cross, omega)
        eta_next = next_step_size(eta, limit, iteration)
        if eta <= limit:
            return StepOutcome(z_next, eta, eta_next, movement_sq, cross, trials)
        logger.debug("Step %d rejected at eta=%.3e (limit %.3e)", iteration, eta, limit)
        eta = eta_next


class AdaptiveStepPolicy(StepPolicy):
    """自适应步长，初始 η̂ = 1/max|K_ij|"""

    name = "adaptive"
    description = "Backtracking step size that adapts to local curvature"

    @override
    def initial_step_size(self, lp: LinearProgram, ledger: KktPassLedger | None = None) -> float:
        return 1.0 / max_abs_entry(lp.constraint_matrix)

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
        return adaptive_step(lp, z, omega, step_size, iteration, ledger)
