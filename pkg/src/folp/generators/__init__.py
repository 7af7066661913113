"""Generators - 测试与基准实例生成"""

from folp.generators.handcrafted import HandcraftedInstance, handcrafted_instance, handcrafted_suite
from folp.generators.pagerank import (
    DEFAULT_DAMPING,
    Graph,
    barabasi_albert,
    pagerank_lp,
    stochastic_matrix_residual,
)
from folp.generators.random_lp import random_feasible_lp

__all__ = [
    "DEFAULT_DAMPING",
    "Graph",
    "HandcraftedInstance",
    "barabasi_albert",
    "handcrafted_instance",
    "handcrafted_suite",
    "pagerank_lp",
    "random_feasible_lp",
    "stochastic_matrix_residual",
]
