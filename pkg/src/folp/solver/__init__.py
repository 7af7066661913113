"""Solver - PDHG 主循环、重启与终止判据"""

from folp.solver.pdhg import PdhgSolver, StepRecord, solve
from folp.solver.restart import (
    RestartCandidate,
    RestartReason,
    initialize_primal_weight,
    normalized_duality_gap,
    restart_candidate,
    restart_gap,
    should_restart,
    update_primal_weight,
)
from folp.solver.state import SolverState
from folp.solver.steps import (
    StepOutcome,
    StepPolicy,
    adaptive_step,
    create_step_policy,
    malitsky_pock_step,
    pdhg_step,
    step_size_limit,
)
from folp.solver.termination import check_termination, convergence_info, kkt_passes, sgm10

__all__ = [
    "PdhgSolver",
    "RestartCandidate",
    "RestartReason",
    "SolverState",
    "StepOutcome",
    "StepPolicy",
    "StepRecord",
    "adaptive_step",
    "check_termination",
    "convergence_info",
    "create_step_policy",
    "initialize_primal_weight",
    "kkt_passes",
    "malitsky_pock_step",
    "normalized_duality_gap",
    "pdhg_step",
    "restart_candidate",
    "restart_gap",
    "should_restart",
    "sgm10",
    "solve",
    "step_size_limit",
    "update_primal_weight",
]
