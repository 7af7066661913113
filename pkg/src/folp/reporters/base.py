"""Reporter - 报告器抽象基类"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from folp.core.result import SolveResult
    from folp.runner import BenchRow, BenchSummary


class Reporter(ABC):
    """报告器抽象基类

    负责将求解结果与基准测试表格以特定格式输出。
    """

    name: str = "base"
    description: str = "Base reporter"

    @abstractmethod
    def report_result(self, result: SolveResult) -> None:
        """输出单次求解结果

        Args:
            result: 求解结果
        """
        ...

    @abstractmethod
    def report_bench(self, rows: list[BenchRow], summaries: list[BenchSummary]) -> None:
        """输出基准测试结果

        Args:
            rows: 每个 (配置, 实例) 一行
            summaries: 每个配置一行 SGM10 汇总
        """
        ...

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name={self.name!r})"
