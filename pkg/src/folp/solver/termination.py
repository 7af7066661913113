"""Termination - 终止判据与统计量"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np

from folp.core.exceptions import DimensionMismatchError, EmptyInputError, NonFinitePointError
from folp.core.model import LinearProgram, dual_objective, project_reduced_costs
from folp.core.result import ConvergenceInfo, KktPassLedger

if TYPE_CHECKING:
    from collections.abc import Iterable

    from numpy.typing import ArrayLike


def convergence_info(
    lp: LinearProgram,
    x: ArrayLike,
    y: ArrayLike,
    ledger: KktPassLedger | None = None,
) -> ConvergenceInfo:
    """在 (x, y) 处计算终止判据的各项，消耗一次 K 与一次 K⊤

    Raises:
        DimensionMismatchError: 维度不符
        NonFinitePointError: 点中含 NaN 或无穷
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != (lp.num_variables,):
        raise DimensionMismatchError("primal point", lp.num_variables, int(x.size))
    if y.shape != (lp.num_constraints,):
        raise DimensionMismatchError("dual point", lp.num_constraints, int(y.size))
    if not np.all(np.isfinite(x)):
        raise NonFinitePointError("primal")
    if not np.all(np.isfinite(y)):
        raise NonFinitePointError("dual")

    K = lp.constraint_matrix
    kx = K.multiply(x, ledger)
    kty = K.multiply_transpose(y, ledger)
    c = lp.objective_vector

    reduced_costs = project_reduced_costs(lp, c - kty)
    primal_objective = float(c @ x) + lp.objective_constant
    dual_value = dual_objective(lp, y, reduced_costs)

    violation = lp.right_hand_side - kx
    m1 = lp.num_inequality_rows
    violation[:m1] = np.maximum(violation[:m1], 0.0)

    return ConvergenceInfo(
        primal_objective=primal_objective,
        dual_objective=dual_value,
        gap_abs=abs(dual_value - primal_objective),
        primal_residual_norm=float(np.linalg.norm(violation)),
        dual_residual_norm=float(np.linalg.norm(c - kty - reduced_costs.values)),
        norm_q=float(np.linalg.norm(lp.right_hand_side)),
        norm_c=float(np.linalg.norm(c)),
    )


def check_termination(info: ConvergenceInfo, eps: float) -> bool:
    """间隙、原始残差、对偶残差三项同时满足容差"""
    gap_ok = info.gap_abs <= eps * (
        1.0 + abs(info.primal_objective) + abs(info.dual_objective)
    )
    primal_ok = info.primal_residual_norm <= eps * (1.0 + info.norm_q)
    dual_ok = info.dual_residual_norm <= eps * (1.0 + info.norm_c)
    return gap_ok and primal_ok and dual_ok


def sgm10(values: Iterable[float], shift: float = 10.0) -> float:
    """平移几何平均 exp(mean(log(v + shift))) − shift

    Raises:
        EmptyInputError: values 为空
    """
    array = np.asarray(list(values), dtype=np.float64)
    if array.size == 0:
        raise EmptyInputError("sgm10 values")
    return math.exp(float(np.mean(np.log(array + shift)))) - shift


def kkt_passes(ledger: KktPassLedger) -> float:
    return ledger.kkt_passes
