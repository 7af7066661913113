"""BenchRunner - 基准测试运行器

对一组实例和若干命名配置逐一求解，汇总为每行一个 (配置, 实例) 的表格
以及每个配置的 SGM10。未在上限内求解的实例按上限值计入 SGM10。
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING

from folp.config import bench_params
from folp.core.exceptions import BoundViolationError, ConfigValidationError, ValidationError
from folp.core.model import validate
from folp.core.result import TerminationReason
from folp.generators import barabasi_albert, handcrafted_suite, pagerank_lp, random_feasible_lp
from folp.io.mps import read_mps
from folp.solver import solve
from folp.solver.termination import sgm10

if TYPE_CHECKING:
    from folp.config import Config, SolverParams
    from folp.core.model import LinearProgram

logger = logging.getLogger(__name__)

THREADS_ENV = "FOLP_NUM_THREADS"
BUILTIN_SUITES = ("handcrafted", "pagerank", "random")
RANDOM_SUITE_SIZE = 10


@dataclass(frozen=True)
class BenchRow:
    """一次 (配置, 实例) 求解的记录

    Attributes:
        charged_kkt_passes: 计入 SGM10 的 KKT pass，未求解且有上限时为上限
        charged_seconds: 计入 SGM10 的耗时，未求解且有时间上限时为上限
    """

    config: str
    instance: str
    termination_reason: TerminationReason
    iterations: int
    kkt_passes: float
    wall_seconds: float
    objective: float | None
    charged_kkt_passes: float
    charged_seconds: float

    @property
    def solved(self) -> bool:
        return self.termination_reason is TerminationReason.OPTIMAL


@dataclass(frozen=True)
class BenchSummary:
    """一个配置在整个实例集上的汇总"""

    config: str
    solved: int
    total: int
    sgm10_kkt_passes: float
    sgm10_seconds: float


def worker_count(configured: int | None = None) -> int:
    """并行进程数：显式配置优先，其次读取 FOLP_NUM_THREADS，默认 1

    Raises:
        ConfigValidationError: 环境变量不是正整数
    """
    value = str(configured) if configured is not None else os.environ.get(THREADS_ENV, "1")
    try:
        count = int(value)
    except ValueError:
        count = 0
    if count < 1:
        raise ConfigValidationError(THREADS_ENV, value, "a positive integer")
    return count


def _charge(observed: float, solved: bool, limit: float | None) -> float:
    """计入 SGM10 的值：已求解或没有有限上限时取实际值，否则取上限"""
    if solved or limit is None or math.isinf(limit):
        return observed
    return limit


def _solve_task(config_name: str, params: SolverParams, lp: LinearProgram) -> BenchRow:
    """在工作进程中执行的单次求解

    关闭预求解时变量界交叉的实例记为原始不可行，其余校验错误记为数值错误，
    不中断整个基准测试。
    """
    try:
        result = solve(lp, params)
    except ValidationError as e:
        logger.warning("Instance %s rejected under %s: %s", lp.name, config_name, e)
        reason = (
            TerminationReason.PRIMAL_INFEASIBLE
            if isinstance(e, BoundViolationError)
            else TerminationReason.NUMERICAL_ERROR
        )
        return BenchRow(
            config=config_name,
            instance=lp.name,
            termination_reason=reason,
            iterations=0,
            kkt_passes=0.0,
            wall_seconds=0.0,
            objective=None,
            charged_kkt_passes=_charge(0.0, False, params.kkt_pass_limit),
            charged_seconds=_charge(0.0, False, params.time_limit_seconds),
        )

    solved = result.is_optimal
    return BenchRow(
        config=config_name,
        instance=lp.name,
        termination_reason=result.termination_reason,
        iterations=result.iterations,
        kkt_passes=result.kkt_passes,
        wall_seconds=result.wall_seconds,
        objective=result.objective_value,
        charged_kkt_passes=_charge(result.kkt_passes, solved, params.kkt_pass_limit),
        charged_seconds=_charge(result.wall_seconds, solved, params.time_limit_seconds),
    )


def summarize(rows: list[BenchRow], configs: list[str]) -> list[BenchSummary]:
    """按配置计算 SGM10（配置顺序保持不变）"""
    summaries = []
    for name in configs:
        subset = [row for row in rows if row.config == name]
        if not subset:
            continue
        summaries.append(
            BenchSummary(
                config=name,
                solved=sum(1 for row in subset if row.solved),
                total=len(subset),
                sgm10_kkt_passes=sgm10(row.charged_kkt_passes for row in subset),
                sgm10_seconds=sgm10(row.charged_seconds for row in subset),
            )
        )
    return summaries


@dataclass
class BenchRunner:
    """基准测试运行器

    Attributes:
        config: 配置对象；solver 中的 eps/上限会覆盖每个命名配置
        corpus: MPS 文件目录；为 None 时使用 config.bench.suites
    """

    config: Config
    corpus: Path | None = None

    _instances: list[LinearProgram] | None = field(default=None, init=False, repr=False)

    def collect_instances(self) -> list[LinearProgram]:
        """收集实例，顺序固定

        Raises:
            ConfigValidationError: 未知的内置实例集
        """
        if self._instances is not None:
            return self._instances

        instances: list[LinearProgram] = []
        if self.corpus is not None:
            for path in sorted(Path(self.corpus).glob("*.mps")):
                instances.append(read_mps(path))
        else:
            bench = self.config.bench
            for suite in bench.suites:
                instances.extend(self._builtin_suite(suite))

        kept = []
        for lp in instances:
            try:
                validate(lp, check_bounds=False)
            except ValidationError as e:
                logger.warning("Skipping invalid instance %s: %s", lp.name, e)
                continue
            kept.append(lp)
        self._instances = kept
        return kept

    def _builtin_suite(self, suite: str) -> list[LinearProgram]:
        bench = self.config.bench
        match suite:
            case "handcrafted":
                return [instance.lp for instance in handcrafted_suite()]
            case "pagerank":
                return [
                    pagerank_lp(barabasi_albert(n, seed=bench.seed), name=f"pagerank_{n}")
                    for n in bench.pagerank_nodes
                ]
            case "random":
                return [
                    random_feasible_lp(
                        20 + 5 * k,
                        10 + 2 * k,
                        5,
                        density=0.3,
                        seed=bench.seed + k,
                    )
                    for k in range(RANDOM_SUITE_SIZE)
                ]
            case _:
                raise ConfigValidationError("suites", suite, ", ".join(BUILTIN_SUITES))

    def _params(self, name: str) -> SolverParams:
        """命名配置叠加公共的精度与资源上限"""
        solver = self.config.solver
        return bench_params(
            name,
            eps_optimal=solver.eps_optimal,
            kkt_pass_limit=solver.kkt_pass_limit,
            iteration_limit=solver.iteration_limit,
            time_limit_seconds=solver.time_limit_seconds,
        )

    def run(self, report: bool = True) -> tuple[list[BenchRow], list[BenchSummary]]:
        """运行所有 (配置, 实例) 组合

        Args:
            report: 是否通过 reporter 输出

        Returns:
            (表格行, 每个配置的汇总)
        """
        configs = list(self.config.bench.configs)
        instances = self.collect_instances()
        tasks = [(name, self._params(name), lp) for name in configs for lp in instances]
        workers = worker_count(self.config.bench.workers)
        logger.info("Running %d solves on %d worker(s)", len(tasks), workers)

        if workers == 1:
            rows = [_solve_task(*task) for task in tasks]
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                futures = [executor.submit(_solve_task, *task) for task in tasks]
                rows = [future.result() for future in futures]

        summaries = summarize(rows, configs)
        if report and self.config.reporter:
            self.config.reporter.report_bench(rows, summaries)
        return rows, summaries
