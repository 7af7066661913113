"""CLI - 命令行接口

退出码：0 最优，1 用法或 IO 错误，2 达到资源上限，3 数值错误，
4 预求解判定原始不可行或对偶无界。
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any, NoReturn

from folp import __version__
from folp.core.exceptions import ConfigNotFoundError, FolpError
from folp.core.result import TerminationReason

if TYPE_CHECKING:
    from folp.config import Config
    from folp.core.model import LinearProgram

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_LIMIT = 2
EXIT_NUMERICAL = 3
EXIT_INFEASIBLE = 4


class _ArgumentParser(argparse.ArgumentParser):
    """用法错误时打印完整参数说明并以退出码 1 结束"""

    def error(self, message: str) -> NoReturn:
        self.print_help(sys.stderr)
        self.exit(EXIT_USAGE, f"\n{self.prog}: error: {message}\n")


def main(argv: list[str] | None = None) -> int:
    """主入口函数"""
    parser = create_parser()
    args = parser.parse_args(argv)

    _configure_logging(getattr(args, "verbosity", 0))

    # 根据子命令执行
    if hasattr(args, "func"):
        return args.func(args)
    else:
        parser.print_help()
        return EXIT_OK


def exit_code(reason: TerminationReason) -> int:
    """终止原因对应的退出码"""
    if reason is TerminationReason.OPTIMAL:
        return EXIT_OK
    if reason.is_limit:
        return EXIT_LIMIT
    if reason.is_infeasibility:
        return EXIT_INFEASIBLE
    return EXIT_NUMERICAL


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("folp").setLevel(level)


def _parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value in {"true", "on", "yes", "1"}:
        return True
    if value in {"false", "off", "no", "0"}:
        return False
    raise argparse.ArgumentTypeError(f"expected true/false or on/off, got {text!r}")


def _load_config_or_exit(config_path: Path | None) -> Config:
    """加载配置文件；未显式指定且找不到时使用默认配置

    Raises:
        SystemExit: 加载失败时
    """
    from folp.config import Config, load_config
    from folp.core.colors import error

    try:
        config, _ = load_config(config_path)
    except ConfigNotFoundError:
        if config_path is not None:
            print(error(f"Config file not found: {config_path}"), file=sys.stderr)
            sys.exit(EXIT_USAGE)
        return Config()
    except FolpError as e:
        print(error(f"Error loading config: {e}"), file=sys.stderr)
        sys.exit(EXIT_USAGE)
    return config


# ============================================================================
# 参数
# ============================================================================


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", "-c", type=Path, help="Path to config file (folp_config.py)")
    parser.add_argument(
        "--verbosity",
        type=int,
        default=0,
        help="0 = warnings, 1 = progress, 2 = debug (default: 0)",
    )


def _add_limit_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--relative_optimality_tol", type=float, help="Termination tolerance eps (default: 1e-8)"
    )
    parser.add_argument(
        "--absolute_optimality_tol",
        type=float,
        help="Accepted for compatibility; must equal --relative_optimality_tol",
    )
    parser.add_argument("--kkt_matrix_pass_limit", type=float, help="KKT pass budget")
    parser.add_argument("--iteration_limit", type=int, help="Iteration budget")
    parser.add_argument("--time_sec_limit", type=float, help="Wall-clock budget in seconds")
    parser.add_argument(
        "--no_timing", action="store_true", help="Omit wall times from output (reproducible files)"
    )


def create_parser() -> argparse.ArgumentParser:
    """创建命令行解析器"""
    from folp.config import BENCH_PRESETS, RestartScheme, StepSizePolicy

    parser = _ArgumentParser(
        prog="folp",
        description="First-order LP solver based on restarted, scaled PDHG",
    )
    parser.add_argument("--version", "-V", action="version", version=f"%(prog)s {__version__}")

    subparsers = parser.add_subparsers(
        dest="command", help="Available commands", parser_class=_ArgumentParser
    )

    # solve 命令
    solve_parser = subparsers.add_parser("solve", help="Solve an LP read from an MPS file")
    _add_common_arguments(solve_parser)
    solve_parser.add_argument("--instance_path", type=Path, required=True, help="MPS file to solve")
    solve_parser.add_argument(
        "--output_dir", type=Path, help="Directory for JSON summary and vectors"
    )
    solve_parser.add_argument("--fixed_format", action="store_true", help="Read fixed-column MPS")
    _add_limit_arguments(solve_parser)
    solve_parser.add_argument("--method", choices=["pdhg"], default="pdhg", help="Solver method")
    solve_parser.add_argument(
        "--step_size_policy", choices=[str(p) for p in StepSizePolicy], help="Step size rule"
    )
    solve_parser.add_argument("--l_inf_ruiz_iterations", type=int, help="Ruiz equilibration passes")
    solve_parser.add_argument("--pock_chambolle_rescaling", type=_parse_bool, help="true/false")
    solve_parser.add_argument(
        "--pock_chambolle_alpha", type=float, help="Pock-Chambolle exponent in [0, 2]"
    )
    solve_parser.add_argument(
        "--restart_scheme", choices=[str(s) for s in RestartScheme], help="Restart rule"
    )
    solve_parser.add_argument("--restart_to_current", type=_parse_bool, help="true/false")
    solve_parser.add_argument(
        "--primal_weight_update_smoothing",
        type=float,
        help="Primal weight smoothing theta in [0, 1]",
    )
    solve_parser.add_argument(
        "--scale_invariant_initial_primal_weight", type=_parse_bool, help="true/false"
    )
    solve_parser.add_argument(
        "--primal_importance", type=float, help="Bias on the initial primal weight"
    )
    solve_parser.add_argument("--presolve", type=_parse_bool, help="on/off")
    solve_parser.add_argument(
        "--show_trace", action="store_true", help="Print the evaluation trace"
    )
    solve_parser.add_argument(
        "--format", choices=["console", "csv"], default="console", help="Output format"
    )
    solve_parser.set_defaults(func=cmd_solve)

    # generate 命令
    generate_parser = subparsers.add_parser("generate", help="Write a generated instance as MPS")
    _add_common_arguments(generate_parser)
    generate_parser.add_argument(
        "kind", choices=["pagerank", "handcrafted"], help="Instance family"
    )
    generate_parser.add_argument("--nodes", type=int, default=1000, help="PageRank graph size")
    generate_parser.add_argument("--seed", type=int, default=0, help="Random seed")
    generate_parser.add_argument("--attach", type=int, default=3, help="Edges per new node")
    generate_parser.add_argument(
        "--damping", type=float, default=0.85, help="PageRank damping factor"
    )
    generate_parser.add_argument(
        "--connected_seed", action="store_true", help="Connect the initial BA nodes to each other"
    )
    generate_parser.add_argument("--name", help="Handcrafted instance name (default: all)")
    generate_parser.add_argument(
        "--output",
        "-o",
        type=Path,
        help="Output file, or directory for handcrafted (default: stdout)",
    )
    generate_parser.set_defaults(func=cmd_generate)

    # bench 命令
    bench_parser = subparsers.add_parser("bench", help="Benchmark named configurations")
    _add_common_arguments(bench_parser)
    bench_parser.add_argument("--corpus", type=Path, help="Directory of MPS files")
    bench_parser.add_argument(
        "--suite", action="append", default=[], help="Built-in suite: handcrafted, pagerank, random"
    )
    bench_parser.add_argument(
        "--configs",
        action="append",
        default=[],
        choices=list(BENCH_PRESETS),
        help="Configuration to run (repeatable)",
    )
    bench_parser.add_argument(
        "--pagerank_nodes",
        type=int,
        action="append",
        default=[],
        help="PageRank sizes (repeatable)",
    )
    bench_parser.add_argument("--seed", type=int, help="Seed for generated instances")
    bench_parser.add_argument(
        "--workers", type=int, help="Worker processes (default: FOLP_NUM_THREADS or 1)"
    )
    bench_parser.add_argument(
        "--sgm10", action="store_true", help="Print the CSV table with SGM10 rows"
    )
    bench_parser.add_argument("--csv", type=Path, help="Write the CSV table to this file")
    _add_limit_arguments(bench_parser)
    bench_parser.set_defaults(func=cmd_bench)

    # list 命令
    list_parser = subparsers.add_parser("list", help="List available components")
    list_parser.add_argument("--policies", action="store_true", help="List step size policies")
    list_parser.add_argument("--restarts", action="store_true", help="List restart schemes")
    list_parser.add_argument("--configs", action="store_true", help="List benchmark configurations")
    list_parser.set_defaults(func=cmd_list)

    return parser


def _limit_overrides(args: argparse.Namespace) -> dict[str, Any]:
    """只收集命令行显式给出的精度与上限参数

    Raises:
        ConfigValidationError: 相对与绝对容差不相等
    """
    from folp.core.exceptions import ConfigValidationError

    overrides: dict[str, Any] = {}
    relative, absolute = args.relative_optimality_tol, args.absolute_optimality_tol
    if relative is not None and absolute is not None and relative != absolute:
        raise ConfigValidationError("absolute_optimality_tol", absolute, f"equal to {relative}")
    tolerance = relative if relative is not None else absolute
    if tolerance is not None:
        overrides["eps_optimal"] = tolerance
    if args.kkt_matrix_pass_limit is not None:
        overrides["kkt_pass_limit"] = args.kkt_matrix_pass_limit
    if args.iteration_limit is not None:
        overrides["iteration_limit"] = args.iteration_limit
    if args.time_sec_limit is not None:
        overrides["time_limit_seconds"] = args.time_sec_limit
    return overrides


_SOLVE_FLAGS = {
    "step_size_policy": "step_policy",
    "l_inf_ruiz_iterations": "ruiz_iterations",
    "pock_chambolle_rescaling": "use_pock_chambolle",
    "pock_chambolle_alpha": "pc_alpha",
    "restart_scheme": "restart_scheme",
    "restart_to_current": "restart_to_current",
    "primal_weight_update_smoothing": "theta_smoothing",
    "scale_invariant_initial_primal_weight": "scale_invariant_initial_primal_weight",
    "primal_importance": "primal_importance",
    "presolve": "presolve",
}


def _solver_overrides(args: argparse.Namespace) -> dict[str, Any]:
    overrides = _limit_overrides(args)
    for flag, field_name in _SOLVE_FLAGS.items():
        value = getattr(args, flag)
        if value is not None:
            overrides[field_name] = value
    return overrides


# ============================================================================
# 子命令
# ============================================================================


def cmd_solve(args: argparse.Namespace) -> int:
    """执行 solve 命令"""
    from folp.core.colors import error, success
    from folp.io.mps import read_mps
    from folp.io.results import write_result
    from folp.reporters import CsvTableReporter
    from folp.solver import solve

    config = _load_config_or_exit(args.config)
    try:
        config.solver = config.solver.with_overrides(**_solver_overrides(args))
        lp = read_mps(args.instance_path, fixed_format=args.fixed_format)
    except FolpError as e:
        print(error(f"✗ {e}"), file=sys.stderr)
        return EXIT_USAGE

    if config.before_solve:
        config.before_solve(lp)
    try:
        result = solve(lp, config.solver)
    except FolpError as e:
        print(error(f"✗ {e}"), file=sys.stderr)
        return EXIT_USAGE
    if config.after_solve:
        config.after_solve(result)

    include_timing = config.output.include_timing and not args.no_timing
    if args.format == "csv":
        CsvTableReporter(include_timing=include_timing).report_result(result)
    elif config.reporter:
        _apply_output_flags(config, args, include_timing)
        config.reporter.report_result(result)

    if args.output_dir:
        try:
            path = write_result(
                result,
                args.output_dir,
                _stem(lp, args.instance_path),
                include_timing=include_timing,
            )
        except FolpError as e:
            print(error(f"✗ {e}"), file=sys.stderr)
            return EXIT_USAGE
        print(success(f"✓ Wrote {path}"))

    return exit_code(result.termination_reason)


def _stem(lp: LinearProgram, path: Path) -> str:
    return path.stem or lp.name or "result"


def _apply_output_flags(config: Config, args: argparse.Namespace, include_timing: bool) -> None:
    from folp.reporters import ConsoleReporter

    reporter = config.reporter
    if isinstance(reporter, ConsoleReporter):
        reporter.include_timing = include_timing
        if getattr(args, "show_trace", False):
            reporter.show_trace = True


def cmd_generate(args: argparse.Namespace) -> int:
    """执行 generate 命令"""
    from folp.core.colors import error, success
    from folp.generators import (
        barabasi_albert,
        handcrafted_instance,
        handcrafted_suite,
        pagerank_lp,
    )
    from folp.io.mps import write_mps

    try:
        if args.kind == "pagerank":
            graph = barabasi_albert(
                args.nodes, args.attach, args.seed, connected_seed=args.connected_seed
            )
            lp = pagerank_lp(graph, args.damping)
            text = write_mps(lp)
            if args.output is None:
                sys.stdout.write(text)
            else:
                _write_text(args.output, text)
                print(success(f"✓ Wrote {args.output}"))
            return EXIT_OK

        instances = [handcrafted_instance(args.name)] if args.name else handcrafted_suite()
        if args.output is None:
            for instance in instances:
                sys.stdout.write(write_mps(instance.lp))
            return EXIT_OK
        for instance in instances:
            path = args.output / f"{instance.name}.mps"
            _write_text(path, write_mps(instance.lp))
        print(success(f"✓ Wrote {len(instances)} instance(s) to {args.output}"))
        return EXIT_OK
    except KeyError as e:
        print(error(f"✗ Unknown handcrafted instance: {e}"), file=sys.stderr)
        return EXIT_USAGE
    except FolpError as e:
        print(error(f"✗ {e}"), file=sys.stderr)
        return EXIT_USAGE


def _write_text(path: Path, text: str) -> None:
    from folp.core.exceptions import FileWriteError

    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise FileWriteError(path, str(e)) from e


def cmd_bench(args: argparse.Namespace) -> int:
    """执行 bench 命令"""
    from folp.core.colors import error
    from folp.reporters import CsvTableReporter
    from folp.runner import BenchRunner

    config = _load_config_or_exit(args.config)
    include_timing = config.output.include_timing and not args.no_timing
    try:
        config.solver = config.solver.with_overrides(**_limit_overrides(args))
        bench = config.bench
        if args.suite:
            bench.suites = list(args.suite)
        if args.configs:
            bench.configs = list(args.configs)
        if args.pagerank_nodes:
            bench.pagerank_nodes = list(args.pagerank_nodes)
        if args.seed is not None:
            bench.seed = args.seed
        if args.workers is not None:
            bench.workers = args.workers

        if args.sgm10 or args.csv:
            config.reporter = CsvTableReporter(output=args.csv, include_timing=include_timing)
        else:
            _apply_output_flags(config, args, include_timing)
        BenchRunner(config=config, corpus=args.corpus).run(report=True)
    except FolpError as e:
        print(error(f"✗ {e}"), file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def cmd_list(args: argparse.Namespace) -> int:
    """执行 list 命令"""
    from folp.config import BENCH_PRESETS, RestartScheme
    from folp.core.colors import info
    from folp.solver.steps import available_policies

    show_all = not (args.policies or args.restarts or args.configs)

    if args.policies or show_all:
        print("Available step size policies:")
        for policy in available_policies():
            print(f"  {info(policy.name)} - {policy.description}")

    if args.restarts or show_all:
        print("\nAvailable restart schemes:")
        for scheme in RestartScheme:
            print(f"  {info(str(scheme))}")

    if args.configs or show_all:
        print("\nAvailable benchmark configurations:")
        for name in BENCH_PRESETS:
            print(f"  {info(name)}")

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
