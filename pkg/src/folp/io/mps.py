"""MPS - 读写 MPS 格式的线性规划

支持固定格式与自由格式：NAME、OBJSENSE、ROWS、COLUMNS、RHS、RANGES、BOUNDS。
整数标记被忽略（只保留 LP 松弛），L 行取负放入 G 块，
带 RANGES 的行拆成两条 G 行，E 行进入等式块。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np

from folp.core.exceptions import (
    DanglingReferenceError,
    FileReadError,
    MpsSyntaxError,
    UnknownSectionError,
)
from folp.core.model import LinearProgram
from folp.core.sparse import SparseMatrix

if TYPE_CHECKING:
    from collections.abc import Iterator

logger = logging.getLogger(__name__)


class Section(Enum):
    NAME = "NAME"
    OBJSENSE = "OBJSENSE"
    ROWS = "ROWS"
    COLUMNS = "COLUMNS"
    RHS = "RHS"
    RANGES = "RANGES"
    BOUNDS = "BOUNDS"
    ENDATA = "ENDATA"


_SECTION_NAMES = {section.value: section for section in Section}
_SENSE_KEYWORDS = {"MAX": True, "MAXIMIZE": True, "MIN": False, "MINIMIZE": False}
_VALUELESS_BOUNDS = frozenset({"FR", "MI", "PL", "BV"})
_VALUED_BOUNDS = frozenset({"LO", "UP", "FX", "LI", "UI"})
# 固定格式的六个字段（0 起始的列区间）
_FIXED_FIELDS = ((1, 3), (4, 12), (14, 22), (24, 36), (39, 47), (49, 61))


def _fixed_tokens(line: str) -> list[str]:
    fields = (line[start:end].strip() for start, end in _FIXED_FIELDS)
    tokens = [f for f in fields if f]
    # 第六字段之后还有内容时按空白切分补上
    if len(line) > 61 and line[61:].strip():
        tokens.extend(line[61:].split())
    return tokens


@dataclass
class _Row:
    kind: str
    name: str
    rhs: float = 0.0
    range_value: float | None = None


@dataclass
class _MpsReader:
    """逐行读取 MPS 文本并收集各段数据"""

    fixed_format: bool = False
    name: str = ""
    maximize: bool = False
    objective_row: str | None = None
    objective_rhs: float = 0.0
    rows: list[_Row] = field(default_factory=list)
    row_index: dict[str, int] = field(default_factory=dict)
    free_rows: set[str] = field(default_factory=set)
    columns: list[str] = field(default_factory=list)
    column_index: dict[str, int] = field(default_factory=dict)
    objective: dict[int, float] = field(default_factory=dict)
    entries: list[tuple[int, int, float]] = field(default_factory=list)
    lower: dict[int, float] = field(default_factory=dict)
    upper: dict[int, float] = field(default_factory=dict)
    _section: Section | None = None
    _expect_sense: bool = False

    def read(self, text: str) -> None:
        for line_number, raw in enumerate(text.splitlines(), start=1):
            line = raw.rstrip()
            if not line.strip() or line.lstrip().startswith("*"):
                continue
            if not line[0].isspace():
                self._enter_section(line, line_number)
                if self._section is Section.ENDATA:
                    return
                continue
            tokens = _fixed_tokens(line) if self.fixed_format else line.split()
            self._read_data(tokens, line_number)

    # ------------------------------------------------------------------
    # 段落
    # ------------------------------------------------------------------

    def _enter_section(self, line: str, line_number: int) -> None:
        keyword, *rest = line.split()
        section = _SECTION_NAMES.get(keyword.upper())
        if section is None:
            raise UnknownSectionError(line_number, keyword)
        self._section = section
        self._expect_sense = False
        if section is Section.NAME:
            self.name = " ".join(rest)
        elif section is Section.OBJSENSE:
            if rest:
                self._read_sense(rest[0], line_number)
            else:
                self._expect_sense = True

    def _read_data(self, tokens: list[str], line_number: int) -> None:
        match self._section:
            case Section.ROWS:
                self._read_row(tokens, line_number)
            case Section.COLUMNS:
                self._read_column(tokens, line_number)
            case Section.RHS:
                self._read_rhs(tokens, line_number)
            case Section.RANGES:
                self._read_range(tokens, line_number)
            case Section.BOUNDS:
                self._read_bound(tokens, line_number)
            case Section.OBJSENSE if self._expect_sense:
                self._read_sense(tokens[0], line_number)
                self._expect_sense = False
            case _:
                raise MpsSyntaxError(line_number, "data line outside of a data section")

    def _read_sense(self, token: str, line_number: int) -> None:
        sense = _SENSE_KEYWORDS.get(token.upper())
        if sense is None:
            raise MpsSyntaxError(line_number, f"unknown objective sense {token!r}")
        self.maximize = sense

    def _read_row(self, tokens: list[str], line_number: int) -> None:
        if len(tokens) != 2:
            raise MpsSyntaxError(line_number, "ROWS entries need a type and a name")
        kind, name = tokens[0].upper(), tokens[1]
        if kind == "N":
            if self.objective_row is None:
                self.objective_row = name
            else:
                logger.warning("Ignoring additional free row %s", name)
                self.free_rows.add(name)
            return
        if kind not in {"G", "L", "E"}:
            raise MpsSyntaxError(line_number, f"unknown row type {kind!r}")
        if name in self.row_index or name == self.objective_row:
            raise MpsSyntaxError(line_number, f"duplicate row {name!r}")
        self.row_index[name] = len(self.rows)
        self.rows.append(_Row(kind, name))

    def _read_column(self, tokens: list[str], line_number: int) -> None:
        if len(tokens) >= 3 and tokens[1].strip("'").upper() == "MARKER":
            return
        if len(tokens) not in (3, 5):
            raise MpsSyntaxError(
                line_number, "COLUMNS entries need a column and one or two (row, value) pairs"
            )
        column = tokens[0]
        j = self.column_index.get(column)
        if j is None:
            j = len(self.columns)
            self.column_index[column] = j
            self.columns.append(column)
        for row_name, value in _pairs(tokens[1:], line_number):
            if row_name == self.objective_row:
                self.objective[j] = self.objective.get(j, 0.0) + value
            elif row_name in self.free_rows:
                continue
            elif row_name in self.row_index:
                self.entries.append((self.row_index[row_name], j, value))
            else:
                raise DanglingReferenceError(row_name, line_number)

    def _read_rhs(self, tokens: list[str], line_number: int) -> None:
        for row_name, value in _pairs(_drop_set_name(tokens), line_number):
            if row_name == self.objective_row:
                self.objective_rhs = value
            elif row_name in self.free_rows:
                continue
            elif row_name in self.row_index:
                self.rows[self.row_index[row_name]].rhs = value
            else:
                raise DanglingReferenceError(row_name, line_number)

    def _read_range(self, tokens: list[str], line_number: int) -> None:
        for row_name, value in _pairs(_drop_set_name(tokens), line_number):
            if row_name not in self.row_index:
                raise DanglingReferenceError(row_name, line_number)
            self.rows[self.row_index[row_name]].range_value = value

    def _read_bound(self, tokens: list[str], line_number: int) -> None:
        if not tokens:
            raise MpsSyntaxError(line_number, "empty BOUNDS entry")
        kind = tokens[0].upper()
        if kind in _VALUELESS_BOUNDS:
            # BV 偶尔带一个多余的值
            if len(tokens) == 4 and kind == "BV":
                tokens = tokens[:3]
            if len(tokens) not in (2, 3):
                raise MpsSyntaxError(line_number, f"{kind} bound takes no value")
            column, value = tokens[-1], math.nan
        elif kind in _VALUED_BOUNDS:
            if len(tokens) not in (3, 4):
                raise MpsSyntaxError(line_number, f"{kind} bound needs a column and a value")
            column, value = tokens[-2], _number(tokens[-1], line_number)
        else:
            raise MpsSyntaxError(line_number, f"unknown bound type {kind!r}")

        j = self.column_index.get(column)
        if j is None:
            raise DanglingReferenceError(column, line_number)
        self._apply_bound(kind, j, value)

    def _apply_bound(self, kind: str, j: int, value: float) -> None:
        match kind:
            case "LO" | "LI":
                self.lower[j] = value
            case "UP" | "UI":
                self.upper[j] = value
                if value < 0 and self.lower.get(j, 0.0) == 0.0:
                    logger.warning(
                        "Negative upper bound on %s with zero lower bound; lower bound set to -inf",
                        self.columns[j],
                    )
                    self.lower[j] = -math.inf
            case "FX":
                self.lower[j] = value
                self.upper[j] = value
            case "FR":
                self.lower[j] = -math.inf
                self.upper[j] = math.inf
            case "MI":
                self.lower[j] = -math.inf
            case "PL":
                self.upper[j] = math.inf
            case "BV":
                self.lower[j] = 0.0
                self.upper[j] = 1.0

    # ------------------------------------------------------------------
    # 组装
    # ------------------------------------------------------------------

    def build(self) -> LinearProgram:
        """把收集到的数据组装成 (K, q, m1) 形式"""
        n = len(self.columns)
        # 原始行 -> [(新行号, 符号)]
        placement: dict[int, list[tuple[int, float]]] = {}
        inequality_rhs: list[float] = []
        inequality_names: list[str] = []
        equality_rows: list[int] = []

        def add_inequality(source: int, sign: float, rhs: float, name: str) -> None:
            placement.setdefault(source, []).append((len(inequality_rhs), sign))
            inequality_rhs.append(rhs)
            inequality_names.append(name)

        for i, row in enumerate(self.rows):
            interval = _range_interval(row)
            if interval is not None:
                low, high = interval
                add_inequality(i, 1.0, low, row.name)
                add_inequality(i, -1.0, -high, f"{row.name}_ub")
            elif row.kind == "G":
                add_inequality(i, 1.0, row.rhs, row.name)
            elif row.kind == "L":
                add_inequality(i, -1.0, -row.rhs, row.name)
            else:
                equality_rows.append(i)

        m1 = len(inequality_rhs)
        for offset, i in enumerate(equality_rows):
            placement[i] = [(m1 + offset, 1.0)]

        triplet_rows: list[int] = []
        triplet_cols: list[int] = []
        triplet_values: list[float] = []
        for i, j, value in self.entries:
            for target, sign in placement[i]:
                triplet_rows.append(target)
                triplet_cols.append(j)
                triplet_values.append(sign * value)

        m = m1 + len(equality_rows)
        matrix = SparseMatrix.from_triplets(
            np.asarray(triplet_rows, dtype=np.int64),
            np.asarray(triplet_cols, dtype=np.int64),
            np.asarray(triplet_values, dtype=np.float64),
            shape=(m, n),
        )

        rhs = np.array(inequality_rhs + [self.rows[i].rhs for i in equality_rows], dtype=np.float64)
        objective = np.zeros(n)
        for j, value in self.objective.items():
            objective[j] = value
        lower = np.array([self.lower.get(j, 0.0) for j in range(n)], dtype=np.float64)
        upper = np.array([self.upper.get(j, math.inf) for j in range(n)], dtype=np.float64)

        # 目标行上的 RHS 是目标常数的相反数
        constant = -self.objective_rhs
        if self.maximize:
            objective = -objective
            constant = -constant

        return LinearProgram(
            objective_vector=objective,
            constraint_matrix=matrix,
            right_hand_side=rhs,
            num_inequality_rows=m1,
            variable_lower=lower,
            variable_upper=upper,
            objective_constant=constant,
            is_maximization=self.maximize,
            name=self.name,
            variable_names=tuple(self.columns),
            constraint_names=(*inequality_names, *(self.rows[i].name for i in equality_rows)),
        )


def _number(token: str, line_number: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise MpsSyntaxError(line_number, f"invalid number {token!r}") from None


def _pairs(tokens: list[str], line_number: int) -> Iterator[tuple[str, float]]:
    if len(tokens) % 2 != 0 or not tokens:
        raise MpsSyntaxError(line_number, "expected (name, value) pairs")
    for k in range(0, len(tokens), 2):
        yield tokens[k], _number(tokens[k + 1], line_number)


def _drop_set_name(tokens: list[str]) -> list[str]:
    """RHS / RANGES 行的集合名可省略；奇数个字段时第一个是集合名"""
    return tokens[1:] if len(tokens) % 2 == 1 else tokens


def _range_interval(row: _Row) -> tuple[float, float] | None:
    """RANGES 给出的区间 [low, high]；E 行且 R = 0 时仍为等式"""
    if row.range_value is None:
        return None
    r = row.range_value
    match row.kind:
        case "G":
            return row.rhs, row.rhs + abs(r)
        case "L":
            return row.rhs - abs(r), row.rhs
        case _:
            if r > 0:
                return row.rhs, row.rhs + r
            if r < 0:
                return row.rhs + r, row.rhs
            return None


def parse_mps(text: str, *, fixed_format: bool = False) -> LinearProgram:
    """解析 MPS 文本

    自由格式按空白切分，也能读取名称中不含空格的固定格式文件；
    fixed_format=True 时按列位置读取。

    Raises:
        MpsSyntaxError: 行格式错误（带行号）
        UnknownSectionError: 未知段名
        DanglingReferenceError: 引用未声明的行或列
    """
    reader = _MpsReader(fixed_format=fixed_format)
    reader.read(text)
    lp = reader.build()
    logger.debug("Parsed MPS %r: %r", lp.name, lp)
    return lp


def read_mps(path: Path | str, *, fixed_format: bool = False) -> LinearProgram:
    """读取 MPS 文件；NAME 为空时用文件名作为实例名

    Raises:
        FileReadError: 文件无法读取
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise FileReadError(path, str(e)) from e
    lp = parse_mps(text, fixed_format=fixed_format)
    if not lp.name:
        lp = lp.with_updates(name=path.stem)
    return lp


# ============================================================================
# 写出
# ============================================================================


def _format(value: float) -> str:
    return repr(float(value))


def _unique_objective_name(constraint_names: tuple[str, ...]) -> str:
    taken = set(constraint_names)
    name = "OBJ"
    while name in taken:
        name += "_"
    return name


def write_mps(lp: LinearProgram) -> str:
    """以自由格式写出，浮点数用 repr 保证精确往返

    等式块写成 E 行，不等式块写成 G 行；最大化问题写 OBJSENSE MAX
    并把目标系数还原回原始符号。
    """
    n, m = lp.num_variables, lp.num_constraints
    variable_names = lp.variable_names or tuple(f"x{j}" for j in range(n))
    constraint_names = lp.constraint_names or tuple(f"c{i}" for i in range(m))
    objective_name = _unique_objective_name(constraint_names)

    sign = -1.0 if lp.is_maximization else 1.0
    objective = sign * lp.objective_vector
    # parse 时常数 = −RHS，最大化时再取一次负
    objective_rhs = -sign * lp.objective_constant

    lines = [f"NAME {lp.name}".rstrip()]
    if lp.is_maximization:
        lines += ["OBJSENSE", "    MAX"]
    lines.append("ROWS")
    lines.append(f" N  {objective_name}")
    for i, name in enumerate(constraint_names):
        kind = "G" if i < lp.num_inequality_rows else "E"
        lines.append(f" {kind}  {name}")

    lines.append("COLUMNS")
    csc = lp.constraint_matrix.to_scipy().tocsc()
    csc.sort_indices()
    for j, column in enumerate(variable_names):
        start, end = csc.indptr[j], csc.indptr[j + 1]
        if objective[j] != 0.0 or start == end:
            lines.append(f"    {column}  {objective_name}  {_format(objective[j])}")
        for i, value in zip(csc.indices[start:end], csc.data[start:end], strict=True):
            lines.append(f"    {column}  {constraint_names[i]}  {_format(value)}")

    lines.append("RHS")
    if objective_rhs != 0.0:
        lines.append(f"    RHS  {objective_name}  {_format(objective_rhs)}")
    for name, value in zip(constraint_names, lp.right_hand_side, strict=True):
        if value != 0.0:
            lines.append(f"    RHS  {name}  {_format(value)}")

    lines.append("BOUNDS")
    for column, low, high in zip(variable_names, lp.variable_lower, lp.variable_upper, strict=True):
        lines.extend(_bound_lines(column, float(low), float(high)))

    lines.append("ENDATA")
    return "\n".join(lines) + "\n"


def _bound_lines(column: str, low: float, high: float) -> list[str]:
    if low == high:
        return [f" FX BND  {column}  {_format(low)}"]
    if math.isinf(low) and math.isinf(high):
        return [f" FR BND  {column}"]
    lines = []
    if math.isinf(low):
        lines.append(f" MI BND  {column}")
    elif low != 0.0:
        lines.append(f" LO BND  {column}  {_format(low)}")
    if not math.isinf(high):
        lines.append(f" UP BND  {column}  {_format(high)}")
    return lines
