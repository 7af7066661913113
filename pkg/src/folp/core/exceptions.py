"""Exceptions - 自定义异常类"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from pathlib import Path


class FolpError(Exception):
    """folp 基础异常类"""

    def __init__(self, message: str, **context: Any) -> None:
        super().__init__(message)
        self.message = message
        self.context = context

    def __str__(self) -> str:
        if self.context:
            ctx_str = ", ".join(f"{k}={v!r}" for k, v in self.context.items())
            return f"{self.message} ({ctx_str})"
        return self.message


# ============================================================================
# 配置
# ============================================================================


class ConfigError(FolpError):
    """配置相关错误"""


class ConfigNotFoundError(ConfigError):
    """配置文件未找到"""

    def __init__(self, search_paths: list[Path] | None = None) -> None:
        message = "Configuration file not found"
        super().__init__(message, search_paths=search_paths)
        self.search_paths = search_paths


class ConfigLoadError(ConfigError):
    """配置文件加载失败"""

    def __init__(self, path: Path, reason: str) -> None:
        message = f"Failed to load config file: {reason}"
        super().__init__(message, path=path, reason=reason)
        self.path = path
        self.reason = reason


class ConfigValidationError(ConfigError):
    """配置验证失败"""

    def __init__(self, field: str, value: Any, expected: str) -> None:
        message = f"Invalid config value for '{field}': expected {expected}, got {value!r}"
        super().__init__(message, field=field, value=value, expected=expected)
        self.field = field
        self.value = value
        self.expected = expected


# ============================================================================
# 问题数据校验
# ============================================================================


class ValidationError(FolpError):
    """LP 数据不满足模型不变量"""


class DimensionMismatchError(ValidationError):
    """维度不一致"""

    def __init__(self, what: str, expected: int, actual: int) -> None:
        message = f"Dimension mismatch for {what}: expected {expected}, got {actual}"
        super().__init__(message, what=what, expected=expected, actual=actual)
        self.what = what
        self.expected = expected
        self.actual = actual


class BoundViolationError(ValidationError):
    """变量界不合法（l_i > u_i，或 l_i = +inf，或 u_i = -inf）"""

    def __init__(self, index: int, lower: float, upper: float) -> None:
        message = f"Invalid bounds for variable {index}: [{lower}, {upper}]"
        super().__init__(message, index=index, lower=lower, upper=upper)
        self.index = index
        self.lower = lower
        self.upper = upper


class NonFiniteDataError(ValidationError):
    """数据中出现 NaN 或不允许的无穷值"""

    def __init__(self, what: str, index: int) -> None:
        message = f"Non-finite value in {what}"
        super().__init__(message, what=what, index=index)
        self.what = what
        self.index = index


# ============================================================================
# 稀疏矩阵
# ============================================================================


class SparseError(FolpError):
    """稀疏矩阵运算错误"""


class EmptyMatrixError(SparseError):
    """矩阵为空（无行列或无非零元）"""

    def __init__(self, shape: tuple[int, int], nnz: int) -> None:
        super().__init__("Operation requires a nonempty matrix", shape=shape, nnz=nnz)
        self.shape = shape
        self.nnz = nnz


class UnsupportedNormError(SparseError):
    """不支持的范数阶数"""

    def __init__(self, p: float) -> None:
        super().__init__(f"Unsupported norm order: {p}", p=p)
        self.p = p


# ============================================================================
# 模型运算
# ============================================================================


class ModelError(FolpError):
    """鞍点模型运算错误"""


class NonPositiveWeightError(ModelError):
    """primal weight 必须为正"""

    def __init__(self, omega: float) -> None:
        super().__init__(f"Primal weight must be positive, got {omega}", omega=omega)
        self.omega = omega


class NonPositiveRadiusError(ModelError):
    """归一化对偶间隙的半径必须为正"""

    def __init__(self, radius: float) -> None:
        super().__init__(f"Radius must be positive, got {radius}", radius=radius)
        self.radius = radius


class InfiniteProductError(ModelError):
    """约化成本非零但对应的界为无穷"""

    def __init__(self, index: int, value: float) -> None:
        message = f"Reduced cost {value} at index {index} multiplies an infinite bound"
        super().__init__(message, index=index, value=value)
        self.index = index
        self.value = value


class PointOutsideDomainError(ModelError):
    """归一化对偶间隙只对 X × Y 中的点有定义"""

    def __init__(self, index: int, violation: float) -> None:
        message = f"Point leaves X × Y at index {index} by {violation:.3e}"
        super().__init__(message, index=index, violation=violation)
        self.index = index
        self.violation = violation


# ============================================================================
# 预求解
# ============================================================================


class PresolveError(FolpError):
    """预求解检测到的结论性结果"""


class PrimalInfeasibleError(PresolveError):
    """原问题不可行"""

    def __init__(self, reason: str, index: int) -> None:
        super().__init__(f"Primal infeasible: {reason}", reason=reason, index=index)
        self.reason = reason
        self.index = index


class DualUnboundedError(PresolveError):
    """原问题无界（对偶不可行）"""

    def __init__(self, index: int, objective_coefficient: float) -> None:
        message = f"Objective unbounded along empty column {index}"
        super().__init__(message, index=index, objective_coefficient=objective_coefficient)
        self.index = index
        self.objective_coefficient = objective_coefficient


# ============================================================================
# 求解器
# ============================================================================


class SolverError(FolpError):
    """求解过程中的数值错误"""


class NonFiniteIterateError(SolverError):
    """迭代点出现 NaN 或无穷"""

    def __init__(self, iteration: int | None = None) -> None:
        super().__init__("Iterate contains NaN or infinite entries", iteration=iteration)
        self.iteration = iteration


class StepSizeUnderflowError(SolverError):
    """步长回溯下溢"""

    def __init__(self, step_size: float) -> None:
        super().__init__(f"Step size underflow: {step_size:.3e}", step_size=step_size)
        self.step_size = step_size


class NonFinitePointError(SolverError):
    """收敛信息只能在有限点上计算"""

    def __init__(self, which: str) -> None:
        super().__init__(f"Cannot evaluate convergence at a non-finite {which} point")
        self.which = which


# ============================================================================
# 输入数据（统计、实例生成）
# ============================================================================


class InputError(FolpError):
    """输入参数错误"""


class EmptyInputError(InputError):
    """输入序列为空"""

    def __init__(self, what: str) -> None:
        super().__init__(f"Empty input: {what}", what=what)
        self.what = what


class InvalidSizeError(InputError):
    """规模参数不合法"""

    def __init__(self, what: str, value: float, requirement: str) -> None:
        message = f"Invalid {what}: {value} ({requirement})"
        super().__init__(message, what=what, value=value)
        self.what = what
        self.value = value


class IsolatedNodeError(InputError):
    """图中存在孤立节点，列随机化无定义"""

    def __init__(self, node: int) -> None:
        super().__init__(f"Node {node} has no edges", node=node)
        self.node = node


# ============================================================================
# MPS 文件
# ============================================================================


class MpsError(FolpError):
    """MPS 解析错误"""


class MpsSyntaxError(MpsError):
    """MPS 语法错误"""

    def __init__(self, line: int, reason: str) -> None:
        super().__init__(f"MPS syntax error on line {line}: {reason}", line=line)
        self.line = line
        self.reason = reason


class UnknownSectionError(MpsError):
    """未知的 MPS 段"""

    def __init__(self, line: int, section: str) -> None:
        super().__init__(f"Unknown MPS section: {section}", line=line, section=section)
        self.line = line
        self.section = section


class DanglingReferenceError(MpsError):
    """引用了未声明的行或列"""

    def __init__(self, name: str, line: int) -> None:
        super().__init__(f"Reference to undeclared name: {name}", name=name, line=line)
        self.name = name
        self.line = line


# ============================================================================
# 文件
# ============================================================================


class FileError(FolpError):
    """文件操作相关错误"""


class FileReadError(FileError):
    """文件读取失败"""

    def __init__(self, path: Path, reason: str) -> None:
        message = f"Failed to read file: {reason}"
        super().__init__(message, path=path, reason=reason)
        self.path = path
        self.reason = reason


class FileWriteError(FileError):
    """文件写入失败"""

    def __init__(self, path: Path, reason: str) -> None:
        message = f"Failed to write file: {reason}"
        super().__init__(message, path=path, reason=reason)
        self.path = path
        self.reason = reason
