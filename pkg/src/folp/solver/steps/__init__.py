"""Step policies - 步长策略"""

from __future__ import annotations

from typing import TYPE_CHECKING

from folp.config import StepSizePolicy
from folp.solver.steps.adaptive import AdaptiveStepPolicy, adaptive_step, next_step_size
from folp.solver.steps.base import (
    StepOutcome,
    StepPolicy,
    pdhg_step,
    pdhg_trial,
    step_size_limit,
)
from folp.solver.steps.constant import ConstantStepPolicy
from folp.solver.steps.malitsky_pock import (
    MalitskyPockState,
    MalitskyPockStepPolicy,
    malitsky_pock_step,
)

if TYPE_CHECKING:
    from folp.config import SolverParams

_POLICIES: dict[StepSizePolicy, type[StepPolicy]] = {
    StepSizePolicy.ADAPTIVE: AdaptiveStepPolicy,
    StepSizePolicy.CONSTANT: ConstantStepPolicy,
    StepSizePolicy.MALITSKY_POCK: MalitskyPockStepPolicy,
}


def create_step_policy(params: SolverParams) -> StepPolicy:
    """按参数构造步长策略"""
    return _POLICIES[params.step_policy](params)


def available_policies() -> list[type[StepPolicy]]:
    return list(_POLICIES.values())


__all__ = [
    "AdaptiveStepPolicy",
    "ConstantStepPolicy",
    "MalitskyPockState",
    "MalitskyPockStepPolicy",
    "StepOutcome",
    "StepPolicy",
    "adaptive_step",
    "available_policies",
    "create_step_policy",
    "malitsky_pock_step",
    "next_step_size",
    "pdhg_step",
    "pdhg_trial",
    "step_size_limit",
]
