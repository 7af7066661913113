"""Scaling - 对角预条件

K̃ = D1·K·D2，D1、D2 取 1/√(行、列范数)。Ruiz 迭代用 ∞-范数，
Pock-Chambolle 行用 (2−α)-范数、列用 α-范数。全零行列的因子为 1。

变量代换 x = D2·x̃ 之后：c̃ = D2·c，q̃ = D1·q，l̃ = l/D2，ũ = u/D2。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from folp.core.exceptions import ConfigValidationError, DimensionMismatchError
from folp.core.model import LinearProgram, PrimalDualPoint, validate
from folp.core.sparse import SparseMatrix, axis_norms

if TYPE_CHECKING:
    from numpy.typing import NDArray

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DiagonalScaling:
    """累计的对角缩放 D1 (row_scale)、D2 (col_scale)"""

    row_scale: NDArray[np.float64]
    col_scale: NDArray[np.float64]

    @classmethod
    def identity(cls, num_rows: int, num_cols: int) -> DiagonalScaling:
        return cls(np.ones(num_rows), np.ones(num_cols))

    @property
    def is_identity(self) -> bool:
        return bool(np.all(self.row_scale == 1.0) and np.all(self.col_scale == 1.0))

    def compose(
        self, row_factors: NDArray[np.float64], col_factors: NDArray[np.float64]
    ) -> DiagonalScaling:
        """在当前缩放之后再乘一组因子"""
        return DiagonalScaling(self.row_scale * row_factors, self.col_scale * col_factors)


def _reciprocal_sqrt(norms: NDArray[np.float64]) -> NDArray[np.float64]:
    factors = np.ones_like(norms)
    positive = norms > 0
    factors[positive] = 1.0 / np.sqrt(norms[positive])
    return factors


def ruiz_step(K: SparseMatrix) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """一次 Ruiz 均衡：d1 = 1/√‖K_j,·‖∞，d2 = 1/√‖K_·,i‖∞"""
    d1 = _reciprocal_sqrt(axis_norms(K, "rows", np.inf))
    d2 = _reciprocal_sqrt(axis_norms(K, "cols", np.inf))
    return d1, d2


def pock_chambolle_step(
    K: SparseMatrix, alpha: float = 1.0
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Pock-Chambolle 缩放：d1 = 1/√‖K_j,·‖_{2−α}，d2 = 1/√‖K_·,i‖_α

    α = 2 时行范数的阶为 0，按非零元个数计。

    Raises:
        ConfigValidationError: α 不在 [0, 2]
    """
    if not 0.0 <= alpha <= 2.0:
        raise ConfigValidationError("pc_alpha", alpha, "a value in [0, 2]")
    d1 = _reciprocal_sqrt(axis_norms(K, "rows", 2.0 - alpha))
    d2 = _reciprocal_sqrt(axis_norms(K, "cols", alpha))
    return d1, d2


def scale_problem(lp: LinearProgram, scaling: DiagonalScaling) -> LinearProgram:
    """按给定缩放变换问题，无穷界保持无穷"""
    d1, d2 = scaling.row_scale, scaling.col_scale
    if d1.shape != (lp.num_constraints,):
        raise DimensionMismatchError("row scale", lp.num_constraints, int(d1.size))
    if d2.shape != (lp.num_variables,):
        raise DimensionMismatchError("column scale", lp.num_variables, int(d2.size))
    return lp.with_updates(
        objective_vector=lp.objective_vector * d2,
        constraint_matrix=lp.constraint_matrix.scale(d1, d2),
        right_hand_side=lp.right_hand_side * d1,
        variable_lower=lp.variable_lower / d2,
        variable_upper=lp.variable_upper / d2,
    )


def rescale_problem(
    lp: LinearProgram,
    ruiz_iterations: int = 10,
    apply_pock_chambolle: bool = True,
    alpha: float = 1.0,
) -> tuple[LinearProgram, DiagonalScaling]:
    """Ruiz 迭代 ruiz_iterations 次，再可选做一次 Pock-Chambolle

    Returns:
        (缩放后的 LP, 累计缩放)
    """
    validate(lp)
    scaling = DiagonalScaling.identity(lp.num_constraints, lp.num_variables)
    K = lp.constraint_matrix

    for _ in range(ruiz_iterations):
        d1, d2 = ruiz_step(K)
        K = K.scale(d1, d2)
        scaling = scaling.compose(d1, d2)

    if apply_pock_chambolle:
        d1, d2 = pock_chambolle_step(K, alpha)
        scaling = scaling.compose(d1, d2)

    if scaling.is_identity:
        return lp, scaling

    logger.debug(
        "Rescaled: row scale in [%.3g, %.3g], column scale in [%.3g, %.3g]",
        scaling.row_scale.min(initial=1.0),
        scaling.row_scale.max(initial=1.0),
        scaling.col_scale.min(initial=1.0),
        scaling.col_scale.max(initial=1.0),
    )
    return scale_problem(lp, scaling), scaling


def unscale_point(scaling: DiagonalScaling, z_scaled: PrimalDualPoint) -> PrimalDualPoint:
    """x = D2·x̃，y = D1·ỹ"""
    if z_scaled.primal.shape != scaling.col_scale.shape:
        raise DimensionMismatchError(
            "scaled primal", int(scaling.col_scale.size), int(z_scaled.primal.size)
        )
    if z_scaled.dual.shape != scaling.row_scale.shape:
        raise DimensionMismatchError(
            "scaled dual", int(scaling.row_scale.size), int(z_scaled.dual.size)
        )
    return PrimalDualPoint(scaling.col_scale * z_scaled.primal, scaling.row_scale * z_scaled.dual)


def scale_point(scaling: DiagonalScaling, z: PrimalDualPoint) -> PrimalDualPoint:
    """unscale_point 的逆：x̃ = x/D2，ỹ = y/D1"""
    if z.primal.shape != scaling.col_scale.shape:
        raise DimensionMismatchError("primal", int(scaling.col_scale.size), int(z.primal.size))
    if z.dual.shape != scaling.row_scale.shape:
        raise DimensionMismatchError("dual", int(scaling.row_scale.size), int(z.dual.size))
    return PrimalDualPoint(z.primal / scaling.col_scale, z.dual / scaling.row_scale)
