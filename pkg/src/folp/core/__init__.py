"""Core module - 问题模型、稀疏核与结果类型"""

from folp.core.exceptions import (
    BoundViolationError,
    ConfigError,
    ConfigLoadError,
    ConfigNotFoundError,
    ConfigValidationError,
    DanglingReferenceError,
    DimensionMismatchError,
    DualUnboundedError,
    EmptyInputError,
    EmptyMatrixError,
    FileError,
    FileReadError,
    FileWriteError,
    FolpError,
    InfiniteProductError,
    InputError,
    InvalidSizeError,
    IsolatedNodeError,
    ModelError,
    MpsError,
    MpsSyntaxError,
    NonFiniteDataError,
    NonFiniteIterateError,
    NonFinitePointError,
    NonPositiveRadiusError,
    NonPositiveWeightError,
    PointOutsideDomainError,
    PresolveError,
    PrimalInfeasibleError,
    SolverError,
    SparseError,
    StepSizeUnderflowError,
    UnknownSectionError,
    UnsupportedNormError,
    ValidationError,
)
from folp.core.model import (
    LinearProgram,
    PrimalDualPoint,
    ReducedCosts,
    dual_objective,
    lagrangian,
    project_dual,
    project_primal,
    project_reduced_costs,
    validate,
    weighted_norm,
)
from folp.core.result import (
    ConvergenceInfo,
    KktPassLedger,
    SolveResult,
    TerminationReason,
    TraceEntry,
)
from folp.core.sparse import SparseMatrix, axis_norms, estimate_spectral_norm, max_abs_entry

__all__ = [
    "BoundViolationError",
    "ConfigError",
    "ConfigLoadError",
    "ConfigNotFoundError",
    "ConfigValidationError",
    # Results
    "ConvergenceInfo",
    "DanglingReferenceError",
    "DimensionMismatchError",
    "DualUnboundedError",
    "EmptyInputError",
    "EmptyMatrixError",
    "FileError",
    "FileReadError",
    "FileWriteError",
    # Exceptions
    "FolpError",
    "InfiniteProductError",
    "InputError",
    "InvalidSizeError",
    "IsolatedNodeError",
    "KktPassLedger",
    # Model
    "LinearProgram",
    "ModelError",
    "MpsError",
    "MpsSyntaxError",
    "NonFiniteDataError",
    "NonFiniteIterateError",
    "NonFinitePointError",
    "NonPositiveRadiusError",
    "NonPositiveWeightError",
    "PointOutsideDomainError",
    "PresolveError",
    "PrimalDualPoint",
    "PrimalInfeasibleError",
    "ReducedCosts",
    "SolveResult",
    "SolverError",
    # Sparse
    "SparseError",
    "SparseMatrix",
    "StepSizeUnderflowError",
    "TerminationReason",
    "TraceEntry",
    "UnknownSectionError",
    "UnsupportedNormError",
    "ValidationError",
    "axis_norms",
    "dual_objective",
    "estimate_spectral_norm",
    "lagrangian",
    "max_abs_entry",
    "project_dual",
    "project_primal",
    "project_reduced_costs",
    "validate",
    "weighted_norm",
]
