"""StepPolicy - 步长策略基类与 PDHG 单步"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from folp.core.exceptions import NonFiniteIterateError
from folp.core.model import PrimalDualPoint, project_dual, project_primal, weighted_norm

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from folp.config import SolverParams
    from folp.core.model import LinearProgram
    from folp.core.result import KktPassLedger

# 步长低于此值视为回溯下溢
MIN_STEP_SIZE = 1e-300


@dataclass(frozen=True)
class StepOutcome:
    """一次被接受的步

    Attributes:
        point: 新迭代点
        step_size: 本步使用的 η（也是加权平均的权重）
        next_step_size: 下一步的试探步长 η̂
        movement_sq: ‖z′ − z‖²_ω
        cross_term: (y′ − y)⊤K(x′ − x)
        trials: 试探次数（含被拒绝的）
    """

    point: PrimalDualPoint
    step_size: float
    next_step_size: float
    movement_sq: float
    cross_term: float
    trials: int = 1


def pdhg_trial(
    lp: LinearProgram,
    z: PrimalDualPoint,
    eta: float,
    omega: float,
    ledger: KktPassLedger | None = None,
) -> tuple[PrimalDualPoint, NDArray[np.float64]]:
    """PDHG 单步，同时返回 K(x′ − x) 供交叉项使用

    消耗 2 次 K 与 1 次 K⊤。

    Raises:
        NonFiniteIterateError: 新点中含 NaN 或无穷
    """
    K = lp.constraint_matrix
    x, y = z.primal, z.dual
    kty = K.multiply_transpose(y, ledger)
    x_next = project_primal(lp, x - (eta / omega) * (lp.objective_vector - kty))
    kx = K.multiply(x, ledger)
    kx_next = K.multiply(x_next, ledger)
    y_next = project_dual(lp, y + (eta * omega) * (lp.right_hand_side - 2.0 * kx_next + kx))
    point = PrimalDualPoint(x_next, y_next)
    if not point.is_finite():
        raise NonFiniteIterateError()
    return point, kx_next - kx


def pdhg_step(
    lp: LinearProgram,
    z: PrimalDualPoint,
    eta: float,
    omega: float,
    ledger: KktPassLedger | None = None,
) -> PrimalDualPoint:
    """x′ = proj_X(x − (η/ω)(c − K⊤y))，y′ = proj_Y(y + ηω(q − K(2x′ − x)))"""
    point, _ = pdhg_trial(lp, z, eta, omega, ledger)
    return point


def step_size_limit(dz: PrimalDualPoint, cross_term: float, omega: float) -> float:
    """η̄ = ‖dz‖²_ω / (2·cross_term)；cross_term ≤ 0 时条件不起作用，返回 +∞"""
    if not cross_term > 0:
        return math.inf
    return weighted_norm(dz, omega) ** 2 / (2.0 * cross_term)


class StepPolicy(ABC):
    """步长策略抽象基类

    子类需要实现：
    - name: 策略名称（与 StepSizePolicy 的取值一致）
    - description: 策略描述
    - initial_step_size(): 第一步的试探步长
    - step(): 在当前点上走一步
    """

    name: str = ""
    description: str = ""

    def __init__(self, params: SolverParams) -> None:
        self.params = params

    @abstractmethod
    def initial_step_size(self, lp: LinearProgram, ledger: KktPassLedger | None = None) -> float:
        """第一步的试探步长"""
        ...

    @abstractmethod
    def step(
        self,
        lp: LinearProgram,
        z: PrimalDualPoint,
        omega: float,
        step_size: float,
        iteration: int,
        ledger: KktPassLedger | None = None,
    ) -> StepOutcome:
        """从 z 出发走一步

        Args:
            lp: 缩放后的问题
            z: 当前点
            omega: primal weight
            step_size: 试探步长 η̂
            iteration: 1 起计的总迭代序号
            ledger: KKT 计数器

        Raises:
            NonFiniteIterateError: 出现 NaN 或无穷
            StepSizeUnderflowError: 步长下溢
        """
        ...

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name={self.name!r})"


def movement_and_cross(
    z: PrimalDualPoint, z_next: PrimalDualPoint, delta_kx: NDArray[np.float64], omega: float
) -> tuple[PrimalDualPoint, float, float]:
    """返回 (dz, ‖dz‖²_ω, (y′ − y)⊤K(x′ − x))"""
    dz = z_next - z
    return dz, weighted_norm(dz, omega) ** 2, float(dz.dual @ delta_kx)
