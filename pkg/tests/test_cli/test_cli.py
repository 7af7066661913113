"""Tests for 命令行接口"""

from pathlib import Path

import pytest

from folp.cli import EXIT_INFEASIBLE, EXIT_LIMIT, EXIT_OK, EXIT_USAGE, exit_code, main
from folp.core.result import TerminationReason
from folp.io import parse_mps, read_result

CONFIG_TEXT = """
from folp import Config, OutputConfig

config = Config(output=OutputConfig(color="never"))
"""


@pytest.fixture
def config_file(tmp_path: Path) -> Path:
    """无颜色输出的配置文件"""
    path = tmp_path / "folp_config.py"
    path.write_text(CONFIG_TEXT, encoding="utf-8")
    return path


class TestExitCode:
    """退出码测试"""

    def test_mapping(self) -> None:
        """测试终止原因到退出码的映射"""
        assert exit_code(TerminationReason.OPTIMAL) == 0
        assert exit_code(TerminationReason.KKT_PASS_LIMIT) == 2
        assert exit_code(TerminationReason.TIME_LIMIT) == 2
        assert exit_code(TerminationReason.NUMERICAL_ERROR) == 3
        assert exit_code(TerminationReason.DUAL_UNBOUNDED) == 4


class TestSolveCommand:
    """solve 子命令测试"""

    def test_solve_optimal(
        self, one_var_mps: Path, config_file: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """测试求解单变量问题"""
        code = main(["solve", "--instance_path", str(one_var_mps), "--config", str(config_file)])
        output = capsys.readouterr().out

        assert code == EXIT_OK
        assert "Optimal" in output
        assert "ONEVAR" in output

    def test_writes_output_dir(
        self, one_var_mps: Path, config_file: Path, tmp_path: Path
    ) -> None:
        """测试写出结果文件"""
        out = tmp_path / "out"
        code = main(
            [
                "solve",
                "--instance_path",
                str(one_var_mps),
                "--config",
                str(config_file),
                "--output_dir",
                str(out),
                "--no_timing",
            ]
        )
        summary = read_result(out / "onevar_summary.json")

        assert code == EXIT_OK
        assert summary["objective_value"] == pytest.approx(1.0, abs=1e-6)
        assert "wall_seconds" not in summary

    def test_kkt_limit(self, one_var_mps: Path, config_file: Path) -> None:
        """测试 KKT pass 上限返回退出码 2"""
        code = main(
            [
                "solve",
                "--instance_path",
                str(one_var_mps),
                "--config",
                str(config_file),
                "--kkt_matrix_pass_limit=1",
            ]
        )
        assert code == EXIT_LIMIT

    def test_infeasible(
        self, one_var_text: str, config_file: Path, tmp_path: Path
    ) -> None:
        """测试变量界交叉返回退出码 4"""
        path = tmp_path / "crossed.mps"
        path.write_text(
            one_var_text.replace("ENDATA", "BOUNDS\n LO BND X1 2.0\n UP BND X1 1.0\nENDATA"),
            encoding="utf-8",
        )
        code = main(["solve", "--instance_path", str(path), "--config", str(config_file)])
        assert code == EXIT_INFEASIBLE

    def test_csv_format(
        self, one_var_mps: Path, config_file: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """测试 CSV 输出"""
        main(
            [
                "solve",
                "--instance_path",
                str(one_var_mps),
                "--config",
                str(config_file),
                "--format",
                "csv",
            ]
        )
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("instance,termination_reason")
        assert lines[1].startswith("ONEVAR,Optimal")

    def test_solver_flags(
        self, one_var_mps: Path, config_file: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """测试求解器参数开关"""
        code = main(
            [
                "solve",
                "--instance_path",
                str(one_var_mps),
                "--config",
                str(config_file),
                "--step_size_policy",
                "malitsky-pock",
                "--pock_chambolle_rescaling",
                "off",
                "--presolve",
                "false",
            ]
        )
        assert code == EXIT_OK

    def test_missing_instance(self, config_file: Path, tmp_path: Path) -> None:
        """测试 MPS 文件不存在"""
        code = main(
            ["solve", "--instance_path", str(tmp_path / "none.mps"), "--config", str(config_file)]
        )
        assert code == EXIT_USAGE

    def test_tolerance_mismatch(self, one_var_mps: Path, config_file: Path) -> None:
        """测试相对与绝对容差不一致"""
        code = main(
            [
                "solve",
                "--instance_path",
                str(one_var_mps),
                "--config",
                str(config_file),
                "--relative_optimality_tol",
                "1e-6",
                "--absolute_optimality_tol",
                "1e-4",
            ]
        )
        assert code == EXIT_USAGE

    def test_missing_required_flag(self, capsys: pytest.CaptureFixture[str]) -> None:
        """测试缺少必需参数时打印用法并以 1 退出"""
        with pytest.raises(SystemExit) as exc_info:
            main(["solve"])
        assert exc_info.value.code == EXIT_USAGE
        assert "--instance_path" in capsys.readouterr().err

    def test_invalid_bool(self, one_var_mps: Path) -> None:
        """测试非法布尔值"""
        with pytest.raises(SystemExit) as exc_info:
            main(["solve", "--instance_path", str(one_var_mps), "--presolve", "maybe"])
        assert exc_info.value.code == EXIT_USAGE

    def test_config_not_found(self, one_var_mps: Path, tmp_path: Path) -> None:
        """测试显式指定的配置文件不存在"""
        with pytest.raises(SystemExit) as exc_info:
            main(
                [
                    "solve",
                    "--instance_path",
                    str(one_var_mps),
                    "--config",
                    str(tmp_path / "missing.py"),
                ]
            )
        assert exc_info.value.code == EXIT_USAGE


class TestGenerateCommand:
    """generate 子命令测试"""

    def test_pagerank_to_stdout(self, capsys: pytest.CaptureFixture[str]) -> None:
        """测试 PageRank 实例写到 stdout"""
        code = main(["generate", "pagerank", "--nodes", "10"])
        lp = parse_mps(capsys.readouterr().out)

        assert code == EXIT_OK
        assert lp.num_variables == 10
        assert lp.constraint_matrix.nnz == 62

    def test_handcrafted_to_directory(self, tmp_path: Path) -> None:
        """测试手工实例写到目录"""
        code = main(["generate", "handcrafted", "--output", str(tmp_path)])

        assert code == EXIT_OK
        assert len(list(tmp_path.glob("*.mps"))) == 13

    def test_unknown_handcrafted(self) -> None:
        """测试未知实例名"""
        assert main(["generate", "handcrafted", "--name", "nope"]) == EXIT_USAGE

    def test_invalid_graph_size(self) -> None:
        """测试节点数小于连边数"""
        assert main(["generate", "pagerank", "--nodes", "2"]) == EXIT_USAGE


class TestListCommand:
    """list 子命令测试"""

    def test_list_all(self, capsys: pytest.CaptureFixture[str]) -> None:
        """测试列出全部组件"""
        assert main(["list"]) == EXIT_OK
        output = capsys.readouterr().out

        assert "adaptive" in output
        assert "malitsky-pock" in output
        assert "theory" in output
        assert "no-restart" in output

    def test_list_policies_only(self, capsys: pytest.CaptureFixture[str]) -> None:
        """测试只列出步长策略"""
        main(["list", "--policies"])
        output = capsys.readouterr().out

        assert "constant" in output
        assert "benchmark" not in output


class TestBenchCommand:
    """bench 子命令测试"""

    def test_sgm10_table(self, config_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """测试输出带 SGM10 行的 CSV"""
        code = main(
            [
                "bench",
                "--config",
                str(config_file),
                "--suite",
                "handcrafted",
                "--configs",
                "pdlp",
                "--workers",
                "1",
                "--kkt_matrix_pass_limit",
                "200000",
                "--sgm10",
                "--no_timing",
            ]
        )
        lines = capsys.readouterr().out.splitlines()

        assert code == EXIT_OK
        assert lines[0].startswith("config,instance")
        assert len(lines) == 1 + 13 + 1
        assert lines[-1].startswith("pdlp,SGM10,,13/13")

    def test_csv_file(self, config_file: Path, tmp_path: Path) -> None:
        """测试写出 CSV 文件"""
        output = tmp_path / "bench.csv"
        code = main(
            [
                "bench",
                "--config",
                str(config_file),
                "--suite",
                "handcrafted",
                "--configs",
                "pdlp",
                "--workers",
                "1",
                "--csv",
                str(output),
            ]
        )
        assert code == EXIT_OK
        assert "SGM10" in output.read_text(encoding="utf-8")

    def test_unknown_suite(self, config_file: Path) -> None:
        """测试未知的内置实例集"""
        code = main(
            ["bench", "--config", str(config_file), "--suite", "nope", "--workers", "1"]
        )
        assert code == EXIT_USAGE
