"""ConsoleReporter - 终端彩色输出报告器"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, override

from folp.core.result import TerminationReason
from folp.reporters.base import Reporter

if TYPE_CHECKING:
    from folp.core.result import SolveResult, TraceEntry
    from folp.runner import BenchRow, BenchSummary


class ColorMode(Enum):
    """颜色模式"""

    AUTO = "auto"
    ALWAYS = "always"
    NEVER = "never"


@dataclass
class Theme:
    """颜色主题"""

    # 标题和标签
    title: str = "96"  # 青色
    label: str = "90"  # 灰色

    # 终止原因
    optimal: str = "92"  # 绿色
    limit: str = "93"  # 黄色
    failure: str = "91"  # 红色

    # 装饰
    highlight: str = "95"  # 品红（重启标记）

    @classmethod
    def default(cls) -> Theme:
        return cls()


@dataclass
class ConsoleReporter(Reporter):
    """终端彩色输出报告器

    每次求解输出一个带框线的块；show_trace 为真时附带每次评估的快照表。

    Attributes:
        color: 颜色模式
        theme: 颜色主题
        box_drawing: 是否使用 Unicode 框线字符
        show_trace: 是否输出 trace 表
        include_timing: 是否输出耗时
    """

    name: str = "console"
    description: str = "Console reporter with color output"

    color: ColorMode = ColorMode.AUTO
    theme: Theme = field(default_factory=Theme.default)
    box_drawing: bool = True
    show_trace: bool = False
    include_timing: bool = True

    _box_chars: dict[str, str] = field(
        default_factory=lambda: {
            "top_left": "╭",
            "bottom_left": "╰",
            "vertical": "│",
            "horizontal": "─",
        },
        repr=False,
    )

    _simple_chars: dict[str, str] = field(
        default_factory=lambda: {
            "top_left": "+",
            "bottom_left": "+",
            "vertical": "|",
            "horizontal": "-",
        },
        repr=False,
    )

    def __post_init__(self) -> None:
        if isinstance(self.color, str):
            self.color = ColorMode(self.color)
        self._use_color = self._should_use_color()
        self._chars = self._box_chars if self.box_drawing else self._simple_chars

    def _should_use_color(self) -> bool:
        if self.color == ColorMode.ALWAYS:
            return True
        if self.color == ColorMode.NEVER:
            return False
        return hasattr(sys.stdout, "isatty") and sys.stdout.isatty()

    def _style(self, text: str, code: str) -> str:
        """应用 ANSI 样式"""
        if not self._use_color:
            return text
        return f"\033[{code}m{text}\033[0m"

    def _reason_color(self, reason: TerminationReason) -> str:
        if reason is TerminationReason.OPTIMAL:
            return self.theme.optimal
        if reason.is_limit:
            return self.theme.limit
        return self.theme.failure

    def _reason_icon(self, reason: TerminationReason) -> str:
        if reason is TerminationReason.OPTIMAL:
            return "✓"
        if reason.is_limit:
            return "⚠"
        return "✗"

    def _header(self, title: str) -> None:
        corner = self._chars["top_left"] + self._chars["horizontal"]
        print()
        print(f"{corner} {self._style(title, self.theme.title)}")
        print(self._chars["vertical"])

    def _footer(self) -> None:
        print(self._chars["bottom_left"] + self._chars["horizontal"] * 2)

    def _field(self, label: str, value: str) -> None:
        v = self._chars["vertical"]
        print(f"{v}  {self._style(f'{label:<18}', self.theme.label)} {value}")

    # ------------------------------------------------------------------
    # 单次求解
    # ------------------------------------------------------------------

    @override
    def report_result(self, result: SolveResult) -> None:
        reason = result.termination_reason
        self._header(result.instance_name or "<lp>")

        status = f"{self._reason_icon(reason)} {reason}"
        self._field("status", self._style(status, self._reason_color(reason)))
        objective = result.objective_value
        self._field("objective", f"{objective:.12g}" if objective is not None else "n/a")

        info = result.final_info
        if info is not None:
            self._field("relative gap", f"{info.relative_gap:.3e}")
            self._field("primal residual", f"{info.relative_primal_residual:.3e}")
            self._field("dual residual", f"{info.relative_dual_residual:.3e}")
        self._field("iterations", str(result.iterations))
        self._field("kkt passes", f"{result.kkt_passes:g}")
        self._field("restarts", str(result.restarts))
        if result.iterations:
            self._field("solution from", result.termination_point)
        if self.include_timing:
            self._field("wall time", f"{result.wall_seconds:.3f}s")

        if self.show_trace and result.trace:
            print(self._chars["vertical"])
            self._print_trace(result.trace)
        self._footer()

    def _print_trace(self, trace: list[TraceEntry]) -> None:
        v = self._chars["vertical"]
        header = f"{'iter':>8} {'kkt':>10} " + " ".join(
            f"{name:>10}" for name in ("omega", "eta", "gap", "pres", "dres")
        )
        print(f"{v}  {self._style(header, self.theme.label)}")
        for entry in trace:
            info = entry.current
            line = (
                f"{entry.iteration:>8} {entry.kkt_passes:>10.1f} {entry.primal_weight:>10.3e} "
                f"{entry.step_size:>10.3e} {info.relative_gap:>10.3e} "
                f"{info.relative_primal_residual:>10.3e} {info.relative_dual_residual:>10.3e}"
            )
            if entry.restart_reason:
                restart = f"restart: {entry.restart_reason}"
                line += " " + self._style(restart, self.theme.highlight)
            print(f"{v}  {line}")

    # ------------------------------------------------------------------
    # 基准测试
    # ------------------------------------------------------------------

    @override
    def report_bench(self, rows: list[BenchRow], summaries: list[BenchSummary]) -> None:
        by_config: dict[str, list[BenchRow]] = {}
        for row in rows:
            by_config.setdefault(row.config, []).append(row)

        v = self._chars["vertical"]
        for summary in summaries:
            self._header(summary.config)
            for row in by_config.get(summary.config, []):
                reason = row.termination_reason
                marker = self._style(self._reason_icon(reason), self._reason_color(reason))
                print(f"{v}  {marker} {row.instance:<28} {str(reason):<26} {row.kkt_passes:>12.1f}")
            print(v)
            self._field("solved", f"{summary.solved}/{summary.total}")
            self._field("SGM10 kkt passes", f"{summary.sgm10_kkt_passes:.2f}")
            if self.include_timing:
                self._field("SGM10 seconds", f"{summary.sgm10_seconds:.4f}")
            self._footer()
