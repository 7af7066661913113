"""
folp 求解器配置文件

放在工作目录或项目根目录下，`folp solve` / `folp bench` 会自动加载。
命令行参数只在显式给出时覆盖这里的值。
"""

from folp import BenchConfig, Config, OutputConfig, SolverParams
from folp.reporters import ConsoleReporter
from folp.reporters.console import ColorMode

# =============================================================================
# 求解器参数
# =============================================================================

solver = SolverParams(
    # 终止容差（绝对与相对共用）
    eps_optimal=1e-8,
    # 步长策略: adaptive, constant, malitsky-pock
    step_policy="adaptive",
    # 重启方案: pdlp, theory, none
    restart_scheme="pdlp",
    # 原始权重平滑系数，0 表示不更新
    theta_smoothing=0.5,
    # 预处理
    ruiz_iterations=10,
    use_pock_chambolle=True,
    pc_alpha=1.0,
    presolve=True,
    # 资源上限
    kkt_pass_limit=100000.0,
)

# =============================================================================
# 基准测试配置
# =============================================================================

bench = BenchConfig(
    # 对比的命名配置（见 `folp list --configs`）
    configs=["pdlp", "baseline"],
    # 内置实例集: handcrafted, pagerank, random
    suites=["handcrafted", "pagerank"],
    pagerank_nodes=[100, 1000],
    seed=0,
)

# =============================================================================
# 输出配置
# =============================================================================

output = OutputConfig(
    color="auto",
    box_drawing=True,
    show_trace=False,
    include_timing=True,
)

console_reporter = ConsoleReporter(
    # 颜色模式: auto, always, never
    color=ColorMode.AUTO,
    # Unicode 框线
    box_drawing=True,
    # 输出每次评估的快照
    show_trace=False,
)

# =============================================================================
# 主配置
# =============================================================================

config = Config(
    solver=solver,
    bench=bench,
    output=output,
    reporter=console_reporter,
)
