"""
folp - 一阶线性规划求解器

基于带重启、自适应步长和对角预处理的 PDHG，
提供 MPS 读写、PageRank 与手工实例生成、基准测试和 Python 配置。
"""

from folp.config import (
    BenchConfig,
    Config,
    OutputConfig,
    RestartScheme,
    SolverParams,
    StepSizePolicy,
    bench_params,
    load_config,
)
from folp.core.exceptions import (
    ConfigError,
    FolpError,
    InputError,
    MpsError,
    PresolveError,
    SolverError,
    ValidationError,
)
from folp.core.model import LinearProgram, PrimalDualPoint, validate
from folp.core.result import ConvergenceInfo, KktPassLedger, SolveResult, TerminationReason
from folp.core.sparse import SparseMatrix
from folp.generators import barabasi_albert, handcrafted_suite, pagerank_lp, random_feasible_lp
from folp.io import parse_mps, read_mps, read_result, write_mps, write_result
from folp.runner import BenchRunner
from folp.solver import PdhgSolver, StepRecord, solve

__all__ = [
    "BenchConfig",
    # Runner
    "BenchRunner",
    # Config
    "Config",
    "ConfigError",
    "ConvergenceInfo",
    # Exceptions
    "FolpError",
    "InputError",
    "KktPassLedger",
    # Model
    "LinearProgram",
    "MpsError",
    "OutputConfig",
    # Solver
    "PdhgSolver",
    "PresolveError",
    "PrimalDualPoint",
    "RestartScheme",
    "SolveResult",
    "SolverError",
    "SolverParams",
    "SparseMatrix",
    "StepRecord",
    "StepSizePolicy",
    "TerminationReason",
    "ValidationError",
    # Generators
    "barabasi_albert",
    "bench_params",
    "handcrafted_suite",
    "load_config",
    "pagerank_lp",
    # IO
    "parse_mps",
    "random_feasible_lp",
    "read_mps",
    "read_result",
    "solve",
    "validate",
    "write_mps",
    "write_result",
]

__version__ = "0.1.0"
