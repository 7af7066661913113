"""Malitsky-Pock - 带外推比的线搜索

记 θ_k = η_{k−1}/η_k。一步的流程：

1. x′ = proj_X(x − (η_k/ω)(c − K⊤y))
2. 候选步长 η̂ = η_k + ic·(√(1+θ_k) − 1)·η_k，θ̂ = η_k/η̂
3. ŷ = proj_Y(y + ωη̂(q − K(x′ + θ̂(x′ − x))))
4. 若 η̂‖K⊤(ŷ − y)‖ ≤ bf·‖ŷ − y‖ 则接受，否则 η̂ ← ds·η̂ 并回到 3

接受条件使用不加权的欧氏范数。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, override

import numpy as np

from folp.core.exceptions import NonFiniteIterateError, StepSizeUnderflowError
from folp.core.model import PrimalDualPoint, project_dual, project_primal, weighted_norm
from folp.core.sparse import max_abs_entry
from folp.solver.steps.base import MIN_STEP_SIZE, StepOutcome, StepPolicy

if TYPE_CHECKING:
    from folp.config import SolverParams
    from folp.core.model import LinearProgram
    from folp.core.result import KktPassLedger

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MalitskyPockState:
    """上一步被接受的步长 η_k 与比值 θ_k"""

    eta: float
    theta: float = 1.0


def malitsky_pock_step(
    lp: LinearProgram,
    z: PrimalDualPoint,
    omega: float,
    state: MalitskyPockState,
    params: SolverParams,
    ledger: KktPassLedger | None = None,
) -> tuple[StepOutcome, MalitskyPockState]:
    """走一步，返回 (结果, 新的线搜索状态)

    x 更新消耗 1 次 K⊤；每次对偶试探消耗 1 次 K 与 1 次 K⊤。

    Raises:
        StepSizeUnderflowError: η̂ 低于 1e-300
        NonFiniteIterateError: 出现 NaN 或无穷
    """
    K = lp.constraint_matrix
    x, y = z.primal, z.dual
    eta = state.eta

    kty = K.multiply_transpose(y, ledger)
    x_next = project_primal(lp, x - (eta / omega) * (lp.objective_vector - kty))
    if not np.all(np.isfinite(x_next)):
        raise NonFiniteIterateError()
    dx = x_next - x

    eta_hat = eta + params.mp_interpolation_coefficient * (math.sqrt(1.0 + state.theta) - 1.0) * eta
    trials = 0
    while True:
        if not eta_hat >= MIN_STEP_SIZE:
            raise StepSizeUnderflowError(eta_hat)
        trials += 1
        theta_hat = eta / eta_hat
        extrapolated = x_next + theta_hat * dx
        y_hat = project_dual(
            lp,
            y + (omega * eta_hat) * (lp.right_hand_side - K.multiply(extrapolated, ledger)),
        )
        if not np.all(np.isfinite(y_hat)):
            raise NonFiniteIterateError()
        dy = y_hat - y
        kt_dy = K.multiply_transpose(dy, ledger)
        if eta_hat * float(np.linalg.norm(kt_dy)) <= params.mp_breaking_factor * float(
            np.linalg.norm(dy)
        ):
            break
        logger.debug("Line search rejected eta=%.3e", eta_hat)
        eta_hat *= params.mp_downscaling_factor

    point = PrimalDualPoint(x_next, y_hat)
    dz = PrimalDualPoint(dx, dy)
    outcome = StepOutcome(
        point=point,
        step_size=eta_hat,
        next_step_size=eta_hat,
        movement_sq=weighted_norm(dz, omega) ** 2,
        cross_term=float(dx @ kt_dy),
        trials=trials,
    )
    return outcome, MalitskyPockState(eta=eta_hat, theta=theta_hat)


class MalitskyPockStepPolicy(StepPolicy):
    """Malitsky-Pock 线搜索；θ 在策略内部保存"""

    name = "malitsky-pock"
    description = "Malitsky-Pock line search with extrapolation ratio"

    def __init__(self, params: SolverParams) -> None:
        super().__init__(params)
        self._theta = 1.0

    @override
    def initial_step_size(self, lp: LinearProgram, ledger: KktPassLedger | None = None) -> float:
        self._theta = 1.0
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
        outcome, state = malitsky_pock_step(
            lp, z, omega, MalitskyPockState(step_size, self._theta), self.params, ledger
        )
        self._theta = state.theta
        return outcome
