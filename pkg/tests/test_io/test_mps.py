"""Tests for MPS 读写"""

import math
from pathlib import Path

import numpy as np
import pytest

from folp.config import SolverParams
from folp.core.exceptions import (
    DanglingReferenceError,
    FileReadError,
    MpsSyntaxError,
    UnknownSectionError,
)
from folp.core.model import LinearProgram
from folp.io import parse_mps, read_mps, write_mps
from folp.solver import solve

BOUNDS_MPS = """NAME BNDS
ROWS
 N obj
 L lim
 E bal
 G low
COLUMNS
 x obj 1 lim 2
 x bal 1
 y obj -1 lim 1
 y low 1
 z obj 0.5 bal 1
 w obj 1 low 1
RHS
 rhs lim 4 bal 3
 rhs low 1
 rhs obj 2.5
BOUNDS
 FR bnd x
 MI bnd y
 UP bnd y 5
 BV bnd z
 UP bnd w -2
ENDATA
"""

RANGES_MPS = """NAME RNG
ROWS
 N obj
 G r1
 L r2
 E r3
 E r4
COLUMNS
 x obj 1 r1 1
 x r2 1 r3 1
 x r4 1
RHS
 rhs r1 1 r2 5
 rhs r3 2 r4 3
RANGES
 rng r1 3 r2 2
 rng r3 -1 r4 0
ENDATA
"""

MAX_MPS = """NAME MAXIMIZE
OBJSENSE
    MAX
ROWS
 N profit
 L cap
COLUMNS
 x profit 1 cap 1
RHS
 rhs cap 2
ENDATA
"""


class TestParseMps:
    """parse_mps 测试"""

    def test_minimal(self, one_var_text: str) -> None:
        """测试单变量问题"""
        lp = parse_mps(one_var_text)

        assert lp.name == "ONEVAR"
        assert lp.num_variables == 1
        assert lp.num_inequality_rows == 1
        np.testing.assert_array_equal(lp.objective_vector, [1.0])
        np.testing.assert_array_equal(lp.constraint_matrix.to_dense(), [[1.0]])
        np.testing.assert_array_equal(lp.right_hand_side, [1.0])
        assert lp.variable_lower[0] == 0.0
        assert np.isposinf(lp.variable_upper[0])

    def test_rows_and_bounds(self) -> None:
        """测试 L 行取负、E 行进入等式块以及各类变量界"""
        lp = parse_mps(BOUNDS_MPS)

        assert lp.num_inequality_rows == 2
        assert lp.constraint_names == ("lim", "low", "bal")
        assert lp.variable_names == ("x", "y", "z", "w")
        np.testing.assert_array_equal(
            lp.constraint_matrix.to_dense(),
            [[-2.0, -1.0, 0.0, 0.0], [0.0, 1.0, 0.0, 1.0], [1.0, 0.0, 1.0, 0.0]],
        )
        np.testing.assert_array_equal(lp.right_hand_side, [-4.0, 1.0, 3.0])
        np.testing.assert_array_equal(lp.objective_vector, [1.0, -1.0, 0.5, 1.0])
        assert lp.objective_constant == -2.5
        np.testing.assert_array_equal(lp.variable_lower, [-math.inf, -math.inf, 0.0, -math.inf])
        np.testing.assert_array_equal(lp.variable_upper, [math.inf, 5.0, 1.0, -2.0])

    def test_ranges(self) -> None:
        """测试 RANGES 把行拆成两条不等式，R = 0 的 E 行仍为等式"""
        lp = parse_mps(RANGES_MPS)

        assert lp.num_inequality_rows == 6
        assert lp.constraint_names == ("r1", "r1_ub", "r2", "r2_ub", "r3", "r3_ub", "r4")
        np.testing.assert_array_equal(
            lp.constraint_matrix.to_dense().ravel(), [1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0]
        )
        np.testing.assert_array_equal(lp.right_hand_side, [1.0, -4.0, 3.0, -5.0, 1.0, -2.0, 3.0])

    def test_objective_sense_max(self, test_params: SolverParams) -> None:
        """测试最大化问题取负后求解，目标值还原回原符号"""
        lp = parse_mps(MAX_MPS)

        assert lp.is_maximization
        np.testing.assert_array_equal(lp.objective_vector, [-1.0])

        result = solve(lp, test_params)
        assert result.is_optimal
        assert result.objective_value == pytest.approx(2.0, abs=1e-6)

    def test_comments_and_marker(self, one_var_text: str) -> None:
        """测试注释行与整数标记被忽略"""
        text = one_var_text.replace(
            "COLUMNS\n",
            "COLUMNS\n* comment\n    MARKER    'MARKER'    'INTORG'\n",
        )
        lp = parse_mps(text)
        assert lp.num_variables == 1

    def test_fixed_format(self) -> None:
        """测试按列位置读取含空格的名称"""
        text = (
            "NAME          FIXED\n"
            "ROWS\n"
            " N  COST\n"
            " G  ROW ONE\n"
            "COLUMNS\n"
            f"{'':4}{'X 1':<10}{'COST':<10}{'1.0':<15}{'ROW ONE':<10}1.0\n"
            "RHS\n"
            f"{'':4}{'RHS':<10}{'ROW ONE':<10}2.0\n"
            "ENDATA\n"
        )
        lp = parse_mps(text, fixed_format=True)

        assert lp.variable_names == ("X 1",)
        assert lp.constraint_names == ("ROW ONE",)
        np.testing.assert_array_equal(lp.right_hand_side, [2.0])


class TestMpsErrors:
    """MPS 错误测试"""

    def test_unknown_section(self) -> None:
        """测试未知段名带行号"""
        with pytest.raises(UnknownSectionError) as exc_info:
            parse_mps("NAME X\nFOO\n")
        assert exc_info.value.line == 2
        assert exc_info.value.section == "FOO"

    def test_dangling_row(self, one_var_text: str) -> None:
        """测试 COLUMNS 引用未声明的行"""
        text = one_var_text.replace("R1        1.0\nRHS", "NOPE      1.0\nRHS")
        with pytest.raises(DanglingReferenceError) as exc_info:
            parse_mps(text)
        assert exc_info.value.name == "NOPE"
        assert exc_info.value.line == 6

    def test_dangling_bound_column(self, one_var_text: str) -> None:
        """测试 BOUNDS 引用未声明的列"""
        text = one_var_text.replace("ENDATA", "BOUNDS\n UP BND X9 1.0\nENDATA")
        with pytest.raises(DanglingReferenceError):
            parse_mps(text)

    @pytest.mark.parametrize(
        ("old", "new"),
        [
            (" G  R1", " X  R1"),
            ("RHS       R1        1.0", "RHS       R1        abc"),
            ("X1        COST      1.0        R1        1.0", "X1        COST"),
        ],
    )
    def test_syntax_errors(self, old: str, new: str, one_var_text: str) -> None:
        """测试未知行类型、非法数字与缺少字段"""
        with pytest.raises(MpsSyntaxError) as exc_info:
            parse_mps(one_var_text.replace(old, new))
        assert exc_info.value.line > 0

    def test_unknown_bound_type(self, one_var_text: str) -> None:
        """测试未知界类型"""
        text = one_var_text.replace("ENDATA", "BOUNDS\n XX BND X1 1.0\nENDATA")
        with pytest.raises(MpsSyntaxError):
            parse_mps(text)

    def test_missing_file(self, tmp_path: Path) -> None:
        """测试文件不存在"""
        with pytest.raises(FileReadError):
            read_mps(tmp_path / "missing.mps")


class TestWriteMps:
    """write_mps 测试"""

    def test_round_trip(self, mixed_lp: LinearProgram) -> None:
        """测试写出再读回得到相同的问题（含最大化与常数项）"""
        lp = mixed_lp.with_updates(is_maximization=True, objective_constant=1.25)
        back = parse_mps(write_mps(lp))

        assert back.name == "mixed"
        assert back.is_maximization
        assert back.objective_constant == 1.25
        assert back.num_inequality_rows == lp.num_inequality_rows
        np.testing.assert_array_equal(back.objective_vector, lp.objective_vector)
        np.testing.assert_array_equal(
            back.constraint_matrix.to_dense(), lp.constraint_matrix.to_dense()
        )
        np.testing.assert_array_equal(back.right_hand_side, lp.right_hand_side)
        np.testing.assert_array_equal(back.variable_lower, lp.variable_lower)
        np.testing.assert_array_equal(back.variable_upper, lp.variable_upper)

    def test_objective_row_name_is_unique(self, one_var_lp: LinearProgram) -> None:
        """测试目标行名与约束名冲突时改名"""
        lp = one_var_lp.with_updates(constraint_names=("OBJ",))
        text = write_mps(lp)

        assert " N  OBJ_" in text
        np.testing.assert_array_equal(parse_mps(text).objective_vector, [1.0])

    def test_empty_name_uses_file_stem(self, one_var_lp: LinearProgram, tmp_path: Path) -> None:
        """测试 NAME 为空时以文件名命名"""
        path = tmp_path / "unnamed.mps"
        path.write_text(write_mps(one_var_lp.with_updates(name="")), encoding="utf-8")

        assert read_mps(path).name == "unnamed"
