"""Results - 求解结果的 JSON 摘要与文本向量

输出文件（stem 为实例名）：

    {stem}_summary.json        终止原因、目标值、残差、计数器和完整 trace
    {stem}_primal.txt          原始解，每行一个数
    {stem}_dual.txt            对偶解
    {stem}_reduced_costs.txt   reduced costs

浮点数都以 repr 写出，相同输入得到逐字节相同的文件（include_timing=False 时）。
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np

from folp.core.exceptions import FileReadError, FileWriteError

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from folp.core.result import SolveResult

SUMMARY_SUFFIX = "_summary.json"
VECTOR_SUFFIXES = {
    "primal_solution": "_primal.txt",
    "dual_solution": "_dual.txt",
    "reduced_costs": "_reduced_costs.txt",
}


def summary_dict(result: SolveResult, *, include_timing: bool = True) -> dict[str, Any]:
    """结果的 JSON 可序列化摘要"""
    from folp import __version__

    info = result.final_info
    summary: dict[str, Any] = {
        "folp_version": __version__,
        "instance": result.instance_name,
        "termination_reason": str(result.termination_reason),
        "termination_point": result.termination_point,
        "is_maximization": result.is_maximization,
        "objective_value": result.objective_value,
        "relative_gap": info.relative_gap if info is not None else None,
        "relative_primal_residual": info.relative_primal_residual if info is not None else None,
        "relative_dual_residual": info.relative_dual_residual if info is not None else None,
        "final_info": info.to_dict() if info is not None else None,
        "iterations": result.iterations,
        "kkt_passes": result.kkt_passes,
        "restarts": result.restarts,
    }
    if include_timing:
        summary["wall_seconds"] = result.wall_seconds
    summary["trace"] = [entry.to_dict() for entry in result.trace]
    return summary


def format_vector(values: NDArray[np.float64]) -> str:
    return "".join(f"{float(v)!r}\n" for v in values)


def write_result(
    result: SolveResult,
    output_dir: Path | str,
    stem: str | None = None,
    *,
    include_timing: bool = True,
) -> Path:
    """写出摘要与向量文件，返回摘要路径

    Raises:
        FileWriteError: 目录无法创建或文件无法写入
    """
    output_dir = Path(output_dir)
    stem = stem or result.instance_name or "result"
    summary_path = output_dir / f"{stem}{SUMMARY_SUFFIX}"
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        summary = summary_dict(result, include_timing=include_timing)
        summary_path.write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
        for attribute, suffix in VECTOR_SUFFIXES.items():
            vector = getattr(result, attribute)
            (output_dir / f"{stem}{suffix}").write_text(format_vector(vector), encoding="utf-8")
    except OSError as e:
        raise FileWriteError(summary_path, str(e)) from e
    return summary_path


def read_result(path: Path | str) -> dict[str, Any]:
    """读取 JSON 摘要

    Raises:
        FileReadError: 文件不存在或不是合法 JSON
    """
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise FileReadError(path, str(e)) from e


def read_vector(path: Path | str) -> NDArray[np.float64]:
    """读取每行一个数的向量文件

    Raises:
        FileReadError: 文件无法读取或含非数字行
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").split()
        return np.array([float(token) for token in lines], dtype=np.float64)
    except (OSError, ValueError) as e:
        raise FileReadError(path, str(e)) from e
