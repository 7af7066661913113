"""CsvTableReporter - CSV 表格输出"""

from __future__ import annotations

import csv
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, TextIO, override

from folp.core.exceptions import FileWriteError
from folp.reporters.base import Reporter

if TYPE_CHECKING:
    from folp.core.result import SolveResult
    from folp.runner import BenchRow, BenchSummary

SGM_LABEL = "SGM10"

BENCH_COLUMNS = (
    "config",
    "instance",
    "termination_reason",
    "solved",
    "iterations",
    "kkt_passes",
    "wall_seconds",
    "objective",
)

RESULT_COLUMNS = (
    "instance",
    "termination_reason",
    "objective",
    "relative_gap",
    "relative_primal_residual",
    "relative_dual_residual",
    "iterations",
    "kkt_passes",
    "wall_seconds",
)


def _number(value: float | None) -> str:
    return "" if value is None else repr(float(value))


@dataclass
class CsvTableReporter(Reporter):
    """把结果写成 CSV

    基准测试每个 (配置, 实例) 一行，每个配置末尾追加一行 SGM10；
    instance 列为 "SGM10"，solved 列为 "k/N"。

    Attributes:
        output: 输出文件，None 时写到 stdout
        include_timing: 为假时 wall_seconds 列留空，保证输出可复现
    """

    name: str = "csv"
    description: str = "CSV table for benchmark runs"

    output: Path | None = None
    include_timing: bool = True

    def _write(self, header: tuple[str, ...], rows: list[list[str]]) -> None:
        if self.output is None:
            self._write_to(sys.stdout, header, rows)
            return
        try:
            self.output.parent.mkdir(parents=True, exist_ok=True)
            with self.output.open("w", encoding="utf-8", newline="") as handle:
                self._write_to(handle, header, rows)
        except OSError as e:
            raise FileWriteError(self.output, str(e)) from e

    @staticmethod
    def _write_to(handle: TextIO, header: tuple[str, ...], rows: list[list[str]]) -> None:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)

    def _seconds(self, value: float) -> str:
        return _number(value) if self.include_timing else ""

    @override
    def report_result(self, result: SolveResult) -> None:
        self._write(RESULT_COLUMNS, [self._result_row(result)])

    def _result_row(self, result: SolveResult) -> list[str]:
        info = result.final_info
        return [
            result.instance_name,
            str(result.termination_reason),
            _number(result.objective_value),
            _number(info.relative_gap if info else None),
            _number(info.relative_primal_residual if info else None),
            _number(info.relative_dual_residual if info else None),
            str(result.iterations),
            _number(result.kkt_passes),
            self._seconds(result.wall_seconds),
        ]

    @override
    def report_bench(self, rows: list[BenchRow], summaries: list[BenchSummary]) -> None:
        table: list[list[str]] = []
        for summary in summaries:
            for row in rows:
                if row.config != summary.config:
                    continue
                table.append(
                    [
                        row.config,
                        row.instance,
                        str(row.termination_reason),
                        str(row.solved).lower(),
                        str(row.iterations),
                        _number(row.kkt_passes),
                        self._seconds(row.wall_seconds),
                        _number(row.objective),
                    ]
                )
            table.append(
                [
                    summary.config,
                    SGM_LABEL,
                    "",
                    f"{summary.solved}/{summary.total}",
                    "",
                    _number(summary.sgm10_kkt_passes),
                    self._seconds(summary.sgm10_seconds),
                    "",
                ]
            )
        self._write(BENCH_COLUMNS, table)
