"""PageRank - 优先连接图与 PageRank 线性规划

PageRank 向量是随机矩阵 S = d·S′ + (1−d)·J/n 的最大右特征向量，
这里把它写成可行性问题：

    x − d·S′x ≥ (1−d)/n,   1ᵀx = 1,   x ≥ 0

其中 S′ 为按列度数归一化的邻接矩阵。用 Jx = 1 代替稠密的 J，矩阵保持稀疏。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from folp.core.exceptions import InvalidSizeError, IsolatedNodeError
from folp.core.model import LinearProgram
from folp.core.sparse import SparseMatrix

logger = logging.getLogger(__name__)

DEFAULT_DAMPING = 0.85
DEFAULT_ATTACH = 3


@dataclass(frozen=True)
class Graph:
    """无向简单图

    Attributes:
        num_nodes: 节点数
        edges: 边 (a, b)，a < b
    """

    num_nodes: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.num_nodes < 0:
            raise InvalidSizeError("num_nodes", self.num_nodes, "must be >= 0")
        normalized = tuple((min(a, b), max(a, b)) for a, b in self.edges)
        seen: set[tuple[int, int]] = set()
        for a, b in normalized:
            if a == b:
                raise InvalidSizeError("self-loop at node", a, "edges must join distinct nodes")
            if a < 0 or b >= self.num_nodes:
                raise InvalidSizeError(
                    "edge endpoint", b if a >= 0 else a, f"must lie in [0, {self.num_nodes})"
                )
            if (a, b) in seen:
                raise InvalidSizeError("duplicate edge at node", a, "edges must be distinct")
            seen.add((a, b))
        object.__setattr__(self, "edges", normalized)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> NDArray[np.int64]:
        """每个节点的度"""
        degree = np.zeros(self.num_nodes, dtype=np.int64)
        for a, b in self.edges:
            degree[a] += 1
            degree[b] += 1
        return degree


def barabasi_albert(
    n: int,
    attach: int = DEFAULT_ATTACH,
    seed: int = 0,
    *,
    connected_seed: bool = False,
) -> Graph:
    """Barabási–Albert 优先连接图

    从 attach 个种子节点开始，之后每个新节点按当前度数成比例地连接 attach 个
    不同的已有节点；总度数为 0 时在零度节点中均匀选取。种子节点默认互不相连，
    此时边数恰为 attach·(n − attach)。

    Args:
        n: 节点总数
        attach: 每个新节点的连边数
        seed: 随机种子
        connected_seed: 种子节点之间连成完全图

    Raises:
        InvalidSizeError: 不满足 n ≥ attach ≥ 1
    """
    if attach < 1:
        raise InvalidSizeError("attach", attach, "must be >= 1")
    if n < attach:
        raise InvalidSizeError("n", n, f"must be >= attach ({attach})")

    rng = np.random.default_rng(seed)
    edges: list[tuple[int, int]] = []
    # 每条边的两个端点各出现一次，均匀抽取即按度数加权
    endpoints: list[int] = []

    if connected_seed:
        for a in range(attach):
            for b in range(a + 1, attach):
                edges.append((a, b))
                endpoints.extend((a, b))

    for source in range(attach, n):
        targets: list[int] = []
        if endpoints:
            while len(targets) < attach:
                candidate = endpoints[int(rng.integers(len(endpoints)))]
                if candidate not in targets:
                    targets.append(candidate)
        else:
            # 所有已有节点度数都为 0
            targets = sorted(int(t) for t in rng.choice(source, size=attach, replace=False))
        for target in targets:
            edges.append((target, source))
        endpoints.extend(targets)
        endpoints.extend([source] * attach)

    logger.debug("Generated BA graph with %d nodes and %d edges", n, len(edges))
    return Graph(n, tuple(edges))


def pagerank_lp(g: Graph, damping: float = DEFAULT_DAMPING, *, name: str = "") -> LinearProgram:
    """PageRank 可行性问题

    前 n 行为 xᵢ − d·(S′x)ᵢ ≥ (1−d)/n，最后一行为 1ᵀx = 1；c = 0，l = 0，u = +∞。
    非零元数为 2|E| + 2n。

    Raises:
        InvalidSizeError: damping 不在 (0, 1) 内
        IsolatedNodeError: 存在度为 0 的节点，列归一化无定义
    """
    if not 0.0 < damping < 1.0:
        raise InvalidSizeError("damping", damping, "must lie in (0, 1)")
    n = g.num_nodes
    if n == 0:
        raise InvalidSizeError("num_nodes", n, "must be >= 1")
    degree = g.degrees()
    isolated = np.flatnonzero(degree == 0)
    if isolated.size:
        raise IsolatedNodeError(int(isolated[0]))

    edge_array = np.asarray(g.edges, dtype=np.int64).reshape(-1, 2)
    heads, tails = edge_array[:, 0], edge_array[:, 1]
    nodes = np.arange(n, dtype=np.int64)

    rows = np.concatenate([nodes, heads, tails, np.full(n, n, dtype=np.int64)])
    cols = np.concatenate([nodes, tails, heads, nodes])
    values = np.concatenate(
        [
            np.ones(n),
            -damping / degree[tails],
            -damping / degree[heads],
            np.ones(n),
        ]
    )
    matrix = SparseMatrix.from_triplets(rows, cols, values, shape=(n + 1, n))

    rhs = np.full(n + 1, (1.0 - damping) / n)
    rhs[n] = 1.0
    return LinearProgram(
        objective_vector=np.zeros(n),
        constraint_matrix=matrix,
        right_hand_side=rhs,
        num_inequality_rows=n,
        variable_lower=np.zeros(n),
        variable_upper=np.full(n, np.inf),
        name=name or f"pagerank_{n}",
    )


def stochastic_matrix_residual(
    g: Graph, x: NDArray[np.float64], damping: float = DEFAULT_DAMPING
) -> float:
    """‖Sx − x‖_∞，S = d·S′ + (1−d)·J/n"""
    degree = g.degrees().astype(np.float64)
    x = np.asarray(x, dtype=np.float64)
    propagated = np.zeros(g.num_nodes)
    for a, b in g.edges:
        propagated[a] += x[b] / degree[b]
        propagated[b] += x[a] / degree[a]
    sx = damping * propagated + (1.0 - damping) * x.sum() / g.num_nodes
    return float(np.max(np.abs(sx - x)))
