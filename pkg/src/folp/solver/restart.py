"""Restart - 归一化对偶间隙、重启判据与 primal weight

归一化对偶间隙
    ρ_r(z) = max { L(x, ŷ) − L(x̂, y) : ẑ ∈ Z, ‖ẑ − z‖_ω ≤ r } / r

L(x, ŷ) − L(x̂, y) 对 d = ẑ − z 是线性的，系数
g = (−(c − K⊤y), q − Kx)，在 d = 0 处取 0。于是问题化为盒约束上的
信赖域线性最大化，对球约束的乘子 ν 做二分：固定 ν 时最优解是
d(ν) = clip(g / (ν·w), lo, hi)，w 对原变量取 ω、对偶变量取 1/ω。
"""

from __future__ import annotations

import math
from enum import Enum
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from folp.config import RestartScheme
from folp.core.exceptions import (
    NonPositiveRadiusError,
    NonPositiveWeightError,
    PointOutsideDomainError,
)
from folp.core.model import LinearProgram, PrimalDualPoint, weighted_norm

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from folp.config import SolverParams
    from folp.core.result import KktPassLedger
    from folp.solver.state import SolverState

BISECTION_RELATIVE_TOL = 1e-10
BISECTION_MAX_ITERATIONS = 200
# 平均点可能因舍入略微越出 X × Y
DOMAIN_TOLERANCE = 1e-9


class RestartReason(Enum):
    """触发重启的判据"""

    SUFFICIENT = "sufficient"
    NECESSARY_NO_PROGRESS = "necessary_no_progress"
    ARTIFICIAL = "artificial"

    def __str__(self) -> str:
        return self.value


class RestartCandidate(NamedTuple):
    """重启候选点及其间隙"""

    point: PrimalDualPoint
    gap: float
    source: str  # current | average


# ============================================================================
# 归一化对偶间隙
# ============================================================================


def _trust_region_maximum(
    gradient: NDArray[np.float64],
    lower: NDArray[np.float64],
    upper: NDArray[np.float64],
    weights: NDArray[np.float64],
    radius: float,
) -> float:
    """max g⊤d  s.t. lower ≤ d ≤ upper, Σ w·d² ≤ r²（要求 lower ≤ 0 ≤ upper）"""
    radius_sq = radius * radius
    corner = np.where(gradient > 0, upper, np.where(gradient < 0, lower, 0.0))
    if np.all(np.isfinite(corner)) and float(weights @ (corner * corner)) <= radius_sq:
        return float(gradient @ corner)

    scaled_sq = float(np.sum(gradient * gradient / weights))
    if scaled_sq == 0.0:
        return 0.0

    def direction(nu: float) -> NDArray[np.float64]:
        return np.clip(gradient / (nu * weights), lower, upper)

    def norm_sq(d: NDArray[np.float64]) -> float:
        return float(weights @ (d * d))

    # nu_hi 处未截断的解恰在球面上，截断只会缩短，因此可行
    nu_hi = math.sqrt(scaled_sq) / radius
    nu_lo = nu_hi / 2.0
    while norm_sq(direction(nu_lo)) <= radius_sq:
        nu_hi = nu_lo
        nu_lo /= 2.0
        if nu_lo == 0.0:
            return float(gradient @ direction(nu_hi))

    for _ in range(BISECTION_MAX_ITERATIONS):
        if nu_hi / nu_lo - 1.0 <= BISECTION_RELATIVE_TOL:
            break
        mid = math.sqrt(nu_lo * nu_hi)
        if norm_sq(direction(mid)) > radius_sq:
            nu_lo = mid
        else:
            nu_hi = mid
    return float(gradient @ direction(nu_hi))


def _check_inside(
    below: NDArray[np.float64], above: NDArray[np.float64], z: NDArray[np.float64]
) -> None:
    """below = l − z ≤ 0 ≤ above = u − z，容许 DOMAIN_TOLERANCE 的相对舍入误差

    Raises:
        PointOutsideDomainError: z 明显越出 X × Y
    """
    slack = DOMAIN_TOLERANCE * np.maximum(1.0, np.abs(z))
    violation = np.maximum(below, -above)
    outside = violation > slack
    if outside.any():
        index = int(np.flatnonzero(outside)[0])
        raise PointOutsideDomainError(index, float(violation[index]))


def normalized_duality_gap(
    lp: LinearProgram,
    z: PrimalDualPoint,
    radius: float,
    omega: float,
    ledger: KktPassLedger | None = None,
) -> float:
    """ρ_r(z)，结果非负

    Raises:
        NonPositiveRadiusError: r ≤ 0
        NonPositiveWeightError: ω ≤ 0
        PointOutsideDomainError: z 不在 X × Y 中
    """
    if not radius > 0:
        raise NonPositiveRadiusError(radius)
    if not omega > 0:
        raise NonPositiveWeightError(omega)

    x, y = z.primal, z.dual
    K = lp.constraint_matrix
    kty = K.multiply_transpose(y, ledger)
    kx = K.multiply(x, ledger)

    n, m1 = lp.num_variables, lp.num_inequality_rows
    gradient = np.concatenate([kty - lp.objective_vector, lp.right_hand_side - kx])

    dual_lower = np.full(lp.num_constraints, -np.inf)
    dual_lower[:m1] = -y[:m1]
    below = np.concatenate([lp.variable_lower - x, dual_lower])
    above = np.concatenate([lp.variable_upper - x, np.full(lp.num_constraints, np.inf)])
    _check_inside(below, above, np.concatenate([x, y]))
    # 舍入误差级别的越界按 z 在边界上处理
    lower = np.minimum(below, 0.0)
    upper = np.maximum(above, 0.0)
    weights = np.concatenate([np.full(n, omega), np.full(lp.num_constraints, 1.0 / omega)])

    value = _trust_region_maximum(gradient, lower, upper, weights, radius)
    return max(value, 0.0) / radius


def restart_gap(
    lp: LinearProgram,
    z: PrimalDualPoint,
    z_ref: PrimalDualPoint,
    omega: float,
    ledger: KktPassLedger | None = None,
) -> float:
    """μ(z, z_ref) = ρ_{‖z − z_ref‖_ω}(z)；半径为 0 时取 0"""
    radius = weighted_norm(z - z_ref, omega)
    if radius == 0.0:
        return 0.0
    return normalized_duality_gap(lp, z, radius, omega, ledger)


def restart_candidate(
    lp: LinearProgram,
    z_current: PrimalDualPoint,
    z_average: PrimalDualPoint,
    z_restart: PrimalDualPoint,
    omega: float,
    *,
    allow_current: bool = True,
    ledger: KktPassLedger | None = None,
) -> RestartCandidate:
    """在当前点与平均点中取 μ 更小者，相等时取平均点

    allow_current=False 时总是返回平均点。
    """
    average_gap = restart_gap(lp, z_average, z_restart, omega, ledger)
    if not allow_current:
        return RestartCandidate(z_average, average_gap, "average")
    current_gap = restart_gap(lp, z_current, z_restart, omega, ledger)
    if current_gap < average_gap:
        return RestartCandidate(z_current, current_gap, "current")
    return RestartCandidate(z_average, average_gap, "average")


def should_restart(
    state: SolverState, candidate_gap: float, params: SolverParams
) -> RestartReason | None:
    """按 (i) 充分衰减、(ii) 必要衰减且无进展、(iii) 人工重启的顺序检查"""
    if params.restart_scheme is RestartScheme.NONE:
        return None
    if candidate_gap <= params.beta_sufficient * state.reference_gap:
        return RestartReason.SUFFICIENT
    if (
        state.last_candidate_gap is not None
        and candidate_gap <= params.beta_necessary * state.reference_gap
        and candidate_gap > state.last_candidate_gap
    ):
        return RestartReason.NECESSARY_NO_PROGRESS
    if state.t_inner >= params.beta_artificial * state.k_total:
        return RestartReason.ARTIFICIAL
    return None


# ============================================================================
# Primal weight
# ============================================================================


def initialize_primal_weight(
    objective_vector: NDArray[np.float64],
    right_hand_side: NDArray[np.float64],
    eps_zero: float,
) -> float:
    """‖c‖₂/‖q‖₂，任一范数不超过 eps_zero 时为 1"""
    norm_c = float(np.linalg.norm(objective_vector))
    norm_q = float(np.linalg.norm(right_hand_side))
    if norm_c > eps_zero and norm_q > eps_zero:
        return norm_c / norm_q
    return 1.0


def update_primal_weight(
    z_new: PrimalDualPoint,
    z_old: PrimalDualPoint,
    omega_prev: float,
    theta: float,
    eps_zero: float,
) -> float:
    """exp(θ·log(Δy/Δx) + (1−θ)·log ω_prev)；Δx 或 Δy 过小时保持不变"""
    if theta == 0.0:
        return omega_prev
    delta_x = float(np.linalg.norm(z_new.primal - z_old.primal))
    delta_y = float(np.linalg.norm(z_new.dual - z_old.dual))
    if delta_x > eps_zero and delta_y > eps_zero:
        return math.exp(theta * math.log(delta_y / delta_x) + (1.0 - theta) * math.log(omega_prev))
    return omega_prev
