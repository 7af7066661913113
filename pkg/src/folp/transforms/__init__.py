"""Transforms - 预求解与对角缩放"""

from folp.transforms.presolve import FixedVariable, PresolveTransform, postsolve, presolve
from folp.transforms.scaling import (
    DiagonalScaling,
    pock_chambolle_step,
    rescale_problem,
    ruiz_step,
    scale_point,
    scale_problem,
    unscale_point,
)

__all__ = [
    "DiagonalScaling",
    "FixedVariable",
    "PresolveTransform",
    "pock_chambolle_step",
    "postsolve",
    "presolve",
    "rescale_problem",
    "ruiz_step",
    "scale_point",
    "scale_problem",
    "unscale_point",
]
