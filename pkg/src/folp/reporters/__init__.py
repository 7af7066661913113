"""Reporters module - 输出报告器"""

from folp.reporters.base import Reporter
from folp.reporters.console import ColorMode, ConsoleReporter, Theme
from folp.reporters.table import CsvTableReporter

__all__ = [
    "ColorMode",
    "ConsoleReporter",
    "CsvTableReporter",
    "Reporter",
    "Theme",
]
