"""命令行提示的着色

写出文件、列出组件、错误信息这类一次性提示从这里取颜色；
求解报告的配色由 ConsoleReporter 的 Theme 决定。
设置了 NO_COLOR 或目标流不是终端时原样返回文本。
"""

from __future__ import annotations

import os
import sys
from enum import Enum
from typing import TextIO


class Tone(Enum):
    """提示类别对应的 ANSI 颜色代码"""

    SUCCESS = "92"
    ERROR = "91"
    INFO = "96"


def color_enabled(stream: TextIO) -> bool:
    if os.environ.get("NO_COLOR"):
        return False
    isatty = getattr(stream, "isatty", None)
    return bool(isatty and isatty())


def paint(text: str, tone: Tone, stream: TextIO | None = None) -> str:
    """按 stream 是否支持颜色给 text 上色，stream 默认为 stdout"""
    if not color_enabled(stream if stream is not None else sys.stdout):
        return text
    return f"\033[{tone.value}m{text}\033[0m"


def success(text: str) -> str:
    return paint(text, Tone.SUCCESS)


def error(text: str) -> str:
    """错误信息写到 stderr，按 stderr 判断"""
    return paint(text, Tone.ERROR, sys.stderr)


def info(text: str) -> str:
    return paint(text, Tone.INFO)
