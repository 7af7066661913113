"""Config - 配置系统

SolverParams 收拢求解器的全部参数；Config 是配置文件 folp_config.py
中定义的总配置，命令行参数只在显式给出时覆盖它。
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from enum import Enum
from pathlib import Path
from typing import TYPE_CHECKING, Any, Self

from folp.core.exceptions import ConfigLoadError, ConfigNotFoundError, ConfigValidationError

if TYPE_CHECKING:
    from collections.abc import Callable

    from folp.reporters.base import Reporter

CONFIG_FILE_NAME = "folp_config.py"


class StepSizePolicy(Enum):
    """步长策略"""

    ADAPTIVE = "adaptive"
    CONSTANT = "constant"
    MALITSKY_POCK = "malitsky-pock"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def _missing_(cls, value: object) -> StepSizePolicy | None:
        if isinstance(value, str):
            normalized = value.strip().lower().replace("_", "-")
            for member in cls:
                if member.value == normalized:
                    return member
        return None


class RestartScheme(Enum):
    """重启方案"""

    PDLP = "pdlp"
    THEORY = "theory"
    NONE = "none"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def _missing_(cls, value: object) -> RestartScheme | None:
        if isinstance(value, str):
            normalized = value.strip().lower()
            if normalized in {"no_restart", "no-restart", "off"}:
                return cls.NONE
            for member in cls:
                if member.value == normalized:
                    return member
        return None


# theory 方案下充分与必要条件共用的衰减系数
THEORY_BETA = 0.37


def _require(condition: bool, name: str, value: Any, expected: str) -> None:
    if not condition:
        raise ConfigValidationError(name, value, expected)


@dataclass
class SolverParams:
    """求解器参数

    Attributes:
        eps_optimal: 终止判据的 ε（绝对与相对共用）
        beta_sufficient: 重启条件 (i) 的衰减系数
        beta_necessary: 重启条件 (ii) 的衰减系数
        beta_artificial: 重启条件 (iii) 的内层迭代比例
        theta_smoothing: primal weight 更新的平滑系数，0 表示不更新
        eps_zero: primal weight 计算中视为零的阈值
        step_policy: 步长策略
        mp_breaking_factor: Malitsky-Pock 接受条件的系数
        mp_downscaling_factor: Malitsky-Pock 回溯缩小系数
        mp_interpolation_coefficient: Malitsky-Pock 步长增长插值系数
        restart_scheme: 重启方案
        restart_to_current: 重启候选是否允许取当前迭代点
        evaluation_cadence: 每隔多少次迭代评估终止与重启
        kkt_pass_limit: KKT pass 上限，None 表示不限
        iteration_limit: 迭代次数上限，None 表示不限
        time_limit_seconds: 墙钟时间上限
        ruiz_iterations: Ruiz 迭代次数
        use_pock_chambolle: Ruiz 之后是否做 Pock-Chambolle 缩放
        pc_alpha: Pock-Chambolle 的 α
        scale_invariant_initial_primal_weight: 初始 ω 取 ‖c‖/‖q‖（否则为 1）
        primal_importance: 初始 ω 的额外乘数
        presolve: 是否预求解
        power_iteration_tol: 幂迭代的相对容差
        power_iteration_max: 幂迭代的最大次数
        seed: 幂迭代初值的随机种子
    """

    eps_optimal: float = 1e-8
    beta_sufficient: float = 0.9
    beta_necessary: float = 0.1
    beta_artificial: float = 0.5
    theta_smoothing: float = 0.5
    eps_zero: float = 1e-10
    step_policy: StepSizePolicy = StepSizePolicy.ADAPTIVE
    mp_breaking_factor: float = 1.0
    mp_downscaling_factor: float = 0.5
    mp_interpolation_coefficient: float = 0.4
    restart_scheme: RestartScheme = RestartScheme.PDLP
    restart_to_current: bool = True
    evaluation_cadence: int = 40
    kkt_pass_limit: float | None = 100_000.0
    iteration_limit: int | None = None
    time_limit_seconds: float = math.inf
    ruiz_iterations: int = 10
    use_pock_chambolle: bool = True
    pc_alpha: float = 1.0
    scale_invariant_initial_primal_weight: bool = True
    primal_importance: float = 1.0
    presolve: bool = True
    power_iteration_tol: float = 1e-4
    power_iteration_max: int = 1000
    seed: int = 0

    def __post_init__(self) -> None:
        try:
            self.step_policy = StepSizePolicy(self.step_policy)
        except ValueError as e:
            raise ConfigValidationError(
                "step_policy", self.step_policy, "adaptive, constant or malitsky-pock"
            ) from e
        try:
            self.restart_scheme = RestartScheme(self.restart_scheme)
        except ValueError as e:
            raise ConfigValidationError(
                "restart_scheme", self.restart_scheme, "pdlp, theory or none"
            ) from e

        if self.restart_scheme is RestartScheme.THEORY:
            self.beta_sufficient = THEORY_BETA
            self.beta_necessary = THEORY_BETA
            self.restart_to_current = False

        self._validate()

    def _validate(self) -> None:
        _require(self.eps_optimal > 0, "eps_optimal", self.eps_optimal, "a positive number")
        _require(
            0 < self.beta_sufficient < 1,
            "beta_sufficient",
            self.beta_sufficient,
            "a value in (0, 1)",
        )
        _require(
            0 < self.beta_necessary <= self.beta_sufficient,
            "beta_necessary",
            self.beta_necessary,
            f"a value in (0, beta_sufficient={self.beta_sufficient}]",
        )
        _require(
            0 < self.beta_artificial < 1,
            "beta_artificial",
            self.beta_artificial,
            "a value in (0, 1)",
        )
        _require(
            0 <= self.theta_smoothing <= 1,
            "theta_smoothing",
            self.theta_smoothing,
            "a value in [0, 1]",
        )
        _require(self.eps_zero >= 0, "eps_zero", self.eps_zero, "a nonnegative number")
        _require(
            self.mp_breaking_factor > 0,
            "mp_breaking_factor",
            self.mp_breaking_factor,
            "a positive number",
        )
        _require(
            0 < self.mp_downscaling_factor < 1,
            "mp_downscaling_factor",
            self.mp_downscaling_factor,
            "a value in (0, 1)",
        )
        _require(
            self.mp_interpolation_coefficient >= 0,
            "mp_interpolation_coefficient",
            self.mp_interpolation_coefficient,
            "a nonnegative number",
        )
        _require(
            self.evaluation_cadence >= 1,
            "evaluation_cadence",
            self.evaluation_cadence,
            "a positive integer",
        )
        _require(
            self.kkt_pass_limit is None or self.kkt_pass_limit >= 0,
            "kkt_pass_limit",
            self.kkt_pass_limit,
            "a nonnegative number or None",
        )
        _require(
            self.iteration_limit is None or self.iteration_limit >= 0,
            "iteration_limit",
            self.iteration_limit,
            "a nonnegative integer or None",
        )
        _require(
            self.time_limit_seconds > 0,
            "time_limit_seconds",
            self.time_limit_seconds,
            "a positive number",
        )
        _require(
            self.ruiz_iterations >= 0,
            "ruiz_iterations",
            self.ruiz_iterations,
            "a nonnegative integer",
        )
        _require(0 <= self.pc_alpha <= 2, "pc_alpha", self.pc_alpha, "a value in [0, 2]")
        _require(
            self.primal_importance > 0,
            "primal_importance",
            self.primal_importance,
            "a positive number",
        )
        _require(
            self.power_iteration_tol > 0,
            "power_iteration_tol",
            self.power_iteration_tol,
            "a positive number",
        )
        _require(
            self.power_iteration_max >= 1,
            "power_iteration_max",
            self.power_iteration_max,
            "a positive integer",
        )

    # ------------------------------------------------------------------
    # 预设
    # ------------------------------------------------------------------

    @classmethod
    def pdlp(cls, **overrides: Any) -> Self:
        """默认配置：自适应步长、重启、primal weight 更新、缩放与预求解"""
        return cls(**overrides)

    @classmethod
    def baseline(cls, **overrides: Any) -> Self:
        """基础 PDHG：η = 0.9/‖K‖₂，ω = 1，不重启、不缩放、不预求解"""
        settings: dict[str, Any] = {
            "step_policy": StepSizePolicy.CONSTANT,
            "restart_scheme": RestartScheme.NONE,
            "ruiz_iterations": 0,
            "use_pock_chambolle": False,
            "presolve": False,
            "scale_invariant_initial_primal_weight": False,
            "theta_smoothing": 0.0,
        }
        settings.update(overrides)
        return cls(**settings)

    def with_overrides(self, **changes: Any) -> SolverParams:
        """返回覆盖部分字段后的新参数（重新校验）"""
        known = {f.name for f in fields(self)}
        for name in changes:
            if name not in known:
                raise ConfigValidationError(name, changes[name], "a SolverParams field")
        if "restart_scheme" in changes and self.restart_scheme is RestartScheme.THEORY:
            try:
                scheme = RestartScheme(changes["restart_scheme"])
            except ValueError as e:
                raise ConfigValidationError(
                    "restart_scheme", changes["restart_scheme"], "pdlp, theory or none"
                ) from e
            if scheme is not RestartScheme.THEORY:
                # theory 强制的三个字段回到类默认值，除非调用方显式给出
                for name in _THEORY_FORCED:
                    changes.setdefault(name, _DEFAULTS[name])
        return replace(self, **changes)


_THEORY_FORCED = ("beta_sufficient", "beta_necessary", "restart_to_current")
_DEFAULTS: dict[str, Any] = {f.name: f.default for f in fields(SolverParams)}


# 基准测试可用的命名配置（消融实验）
BENCH_PRESETS: dict[str, Callable[[], SolverParams]] = {
    "pdlp": SolverParams.pdlp,
    "baseline": SolverParams.baseline,
    "no-restart": lambda: SolverParams(restart_scheme=RestartScheme.NONE),
    "no-scaling": lambda: SolverParams(ruiz_iterations=0, use_pock_chambolle=False),
    "constant-step": lambda: SolverParams(step_policy=StepSizePolicy.CONSTANT),
    "malitsky-pock": lambda: SolverParams(step_policy=StepSizePolicy.MALITSKY_POCK),
    "no-presolve": lambda: SolverParams(presolve=False),
    "fixed-weight": lambda: SolverParams(
        theta_smoothing=0.0, scale_invariant_initial_primal_weight=False
    ),
}


def bench_params(name: str, **overrides: Any) -> SolverParams:
    """按名称取基准测试配置

    Raises:
        ConfigValidationError: 名称未知
    """
    try:
        factory = BENCH_PRESETS[name]
    except KeyError as e:
        raise ConfigValidationError("configs", name, ", ".join(BENCH_PRESETS)) from e
    params = factory()
    return params.with_overrides(**overrides) if overrides else params


@dataclass
class OutputConfig:
    """输出配置"""

    color: str = "auto"  # auto | always | never
    box_drawing: bool = True
    show_trace: bool = False
    include_timing: bool = True


@dataclass
class BenchConfig:
    """基准测试配置

    Attributes:
        configs: 要比较的命名配置
        suites: 内置实例集（handcrafted, pagerank, random）
        pagerank_nodes: pagerank 实例集的节点数
        seed: 实例生成的随机种子
        workers: 并行进程数，None 时读取 FOLP_NUM_THREADS
    """

    configs: list[str] = field(default_factory=lambda: ["pdlp", "baseline"])
    suites: list[str] = field(default_factory=lambda: ["handcrafted"])
    pagerank_nodes: list[int] = field(default_factory=lambda: [100, 1000])
    seed: int = 0
    workers: int | None = None

    def __post_init__(self) -> None:
        for name in self.configs:
            if name not in BENCH_PRESETS:
                raise ConfigValidationError("configs", name, ", ".join(BENCH_PRESETS))


@dataclass
class Config:
    """主配置类

    Attributes:
        solver: 求解器参数
        output: 输出配置
        bench: 基准测试配置
        reporter: 报告器（默认按 output 构造 ConsoleReporter）
        before_solve: 每次求解前调用，参数为 LinearProgram
        after_solve: 每次求解后调用，参数为 SolveResult
    """

    solver: SolverParams = field(default_factory=SolverParams)
    output: OutputConfig = field(default_factory=OutputConfig)
    bench: BenchConfig = field(default_factory=BenchConfig)
    reporter: Reporter | None = None

    # 钩子函数
    before_solve: Callable[..., Any] | None = None
    after_solve: Callable[..., Any] | None = None

    def __post_init__(self) -> None:
        if self.reporter is None:
            from folp.reporters.console import ColorMode, ConsoleReporter

            self.reporter = ConsoleReporter(
                color=ColorMode(self.output.color),
                box_drawing=self.output.box_drawing,
                show_trace=self.output.show_trace,
                include_timing=self.output.include_timing,
            )


def load_config(config_path: Path | str | None = None) -> tuple[Config, Path]:
    """加载配置文件

    Args:
        config_path: 配置文件路径，未指定时依次查找当前目录与项目根目录下的 folp_config.py

    Returns:
        (配置对象, 配置文件所在目录)

    Raises:
        ConfigNotFoundError: 找不到配置文件
        ConfigLoadError: 配置文件加载失败或未定义 config
    """
    import importlib.util
    import sys

    if config_path:
        config_file = Path(config_path)
        if not config_file.exists():
            raise ConfigNotFoundError([config_file])
    else:
        candidates = _default_config_candidates()
        config_file = next((path for path in candidates if path.exists()), None)
        if config_file is None:
            raise ConfigNotFoundError(candidates)

    config_file = config_file.resolve()
    spec = importlib.util.spec_from_file_location("folp_config", config_file)
    if spec is None or spec.loader is None:
        raise ConfigLoadError(config_file, "not an importable Python file")

    module = importlib.util.module_from_spec(spec)
    sys.modules["folp_config"] = module
    try:
        spec.loader.exec_module(module)
    except Exception as e:
        raise ConfigLoadError(config_file, str(e)) from e

    if not hasattr(module, "config"):
        raise ConfigLoadError(config_file, "config file must define a 'config' variable")
    config = module.config
    if not isinstance(config, Config):
        raise ConfigLoadError(config_file, "'config' must be an instance of Config")

    return config, config_file.parent


def _default_config_candidates() -> list[Path]:
    tool_root = Path(__file__).parent.parent.parent
    return [Path.cwd() / CONFIG_FILE_NAME, tool_root / CONFIG_FILE_NAME]
