"""d-一致超图与模体 (motif) 的核心数据结构"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.core.errors import InputError
from src.utils.logger import get_logger
from src.utils.rng import PURPOSE_HYPERGRAPH, stream

logger = get_logger()

Edge = Tuple[int, ...]

# 稠密邻接张量允许的最大元素个数
DENSE_TENSOR_LIMIT = 1 << 24


def _normalize_edge(raw: Iterable[int], n: int, d: int, position: Optional[int] = None) -> Edge:
    try:
        vertices = [int(v) for v in raw]
    except (TypeError, ValueError) as e:
        raise InputError(f"边包含非整数顶点: {raw!r}", position) from e
    if len(vertices) != d:
        raise InputError(f"边 {tuple(vertices)} 的元数为 {len(vertices)}，应为 {d}", position)
    if len(set(vertices)) != d:
        raise InputError(f"边 {tuple(vertices)} 含有重复顶点", position)
    for v in vertices:
        if v < 0 or v >= n:
            raise InputError(f"边 {tuple(vertices)} 的顶点 {v} 超出范围 0..{n - 1}", position)
    return tuple(sorted(vertices))


@dataclass(frozen=True)
class Hypergraph:
    """有限 d-一致超图 G = (V, E)，顶点为 0..n-1

    构造后不可变，可以在线程之间只读共享。d=2 时额外维护
    每个顶点一行的位矩阵（Python 整数位集）。
    """
    d: int
    n: int
    edges: FrozenSet[Edge]
    _rows: Tuple[int, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if self.d == 2 and not self._rows:
            rows = [0] * self.n
            for u, v in self.edges:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            object.__setattr__(self, "_rows", tuple(rows))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> List[Edge]:
        """按字典序排列的边列表"""
        return sorted(self.edges)

    def has_edge(self, vertices: Sequence[int]) -> bool:
        """判断一组顶点是否构成一条边（顶点重复时返回 False）"""
        key = tuple(sorted(vertices))
        if len(key) != self.d or len(set(key)) != self.d:
            return False
        return key in self.edges

    @property
    def rows(self) -> Tuple[int, ...]:
        """d=2 的位矩阵：第 u 行的第 v 位表示 {u,v} 是否为边"""
        if self.d != 2:
            raise InputError(f"位矩阵只对 d=2 的图定义，当前 d={self.d}")
        return self._rows

    def neighbors(self, u: int) -> List[int]:
        row = self.rows[u]
        return [v for v in range(self.n) if row >> v & 1]

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def adjacency_matrix(self) -> np.ndarray:
        """d=2 的对称布尔邻接矩阵，对角线为 False"""
        if self.d != 2:
            raise InputError(f"邻接矩阵只对 d=2 的图定义，当前 d={self.d}")
        adj = np.zeros((self.n, self.n), dtype=bool)
        if self.edges:
            arr = np.array(sorted(self.edges), dtype=np.int64)
            adj[arr[:, 0], arr[:, 1]] = True
            adj[arr[:, 1], arr[:, 0]] = True
        return adj

    def edge_tensor(self) -> Optional[np.ndarray]:
        """稠密的 n^d 布尔张量，对所有顶点排列对称；含重复顶点的位置为 False

        规模超过 DENSE_TENSOR_LIMIT 时返回 None，调用方应改用集合查找。
        """
        if self.n ** self.d > DENSE_TENSOR_LIMIT:
            return None
        if self.d == 2:
            return self.adjacency_matrix()
        tensor = np.zeros((self.n,) * self.d, dtype=bool)
        if self.edges:
            arr = np.array(sorted(self.edges), dtype=np.int64)
            for perm in permutations(range(self.d)):
                tensor[tuple(arr[:, p] for p in perm)] = True
        return tensor

    def density(self) -> Fraction:
        """边密度 |E| / C(n, d)"""
        total = comb(self.n, self.d)
        return Fraction(len(self.edges), total) if total else Fraction(0)

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """按置换 perm（perm[v] 为 v 的新标号）重新标号顶点"""
        if sorted(perm) != list(range(self.n)):
            raise InputError("relabel 需要 0..n-1 上的置换")
        return build(self.n, self.d, [tuple(perm[v] for v in e) for e in self.edges])

    def remove_edges(self, removed: Iterable[Sequence[int]]) -> "Hypergraph":
        """删除若干条边，返回新的超图"""
        drop = {tuple(sorted(e)) for e in removed}
        return Hypergraph(self.d, self.n, frozenset(e for e in self.edges if e not in drop))


@dataclass(frozen=True)
class MotifSpec:
    """模体 G_0 = (V_0, E_0)，顶点标号为 1..v0"""
    d: int
    v0: int
    edges0: FrozenSet[Edge]
    trivial: bool = False

    def __post_init__(self):
        if self.d < 1 or self.v0 < 1:
            raise InputError(f"模体参数无效: d={self.d}, v0={self.v0}")
        for e in self.edges0:
            if len(e) != self.d or len(set(e)) != self.d or any(v < 1 or v > self.v0 for v in e):
                raise InputError(f"模体边 {e} 不是 {{1..{self.v0}}} 的 {self.d} 元子集")
        if not self.edges0 and not self.trivial:
            raise InputError("模体边集为空；若确实需要空模体，请设置 trivial=True")

    @property
    def num_edges(self) -> int:
        return len(self.edges0)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges0)

    def isolated_vertices(self) -> List[int]:
        covered = {v for e in self.edges0 for v in e}
        return [v for v in range(1, self.v0 + 1) if v not in covered]


def motif(d: int, v0: int, edges0: Iterable[Sequence[int]], trivial: bool = False) -> MotifSpec:
    """构造模体，边会被排序去重"""
    return MotifSpec(d, v0, frozenset(tuple(sorted(int(v) for v in e)) for e in edges0), trivial)


def edge_motif(d: int = 2) -> MotifSpec:
    """单条 d-边"""
    return motif(d, d, [tuple(range(1, d + 1))])


def triangle_motif() -> MotifSpec:
    return motif(2, 3, [(1, 2), (2, 3), (1, 3)])


def clique_motif(d: int, k: int) -> MotifSpec:
    """k 个标号上的完全 d-一致超图"""
    if k < d:
        raise InputError(f"完全模体需要 k >= d，当前 k={k}, d={d}")
    return motif(d, k, combinations(range(1, k + 1), d))


def parse_motif(text: str, d: int = 2) -> MotifSpec:
    """解析命令行中的模体描述

    支持: "edge"、"triangle"、"k4"、"clique:k"，或显式写法
    "v0:1-2,2-3,1-3"（超边内部用 '-' 分隔顶点）。
    """
    text = text.strip().lower()
    if text == "edge":
        return edge_motif(d)
    if text == "triangle":
        if d != 2:
            raise InputError("triangle 模体只适用于 d=2")
        return triangle_motif()
    if text.startswith("k") and text[1:].isdigit():
        return clique_motif(d, int(text[1:]))
    if text.startswith("clique:"):
        try:
            return clique_motif(d, int(text.split(":", 1)[1]))
        except ValueError as e:
            raise InputError(f"无效的模体描述: {text!r}") from e
    if ":" in text:
        head, body = text.split(":", 1)
        try:
            v0 = int(head)
            edges = [tuple(int(v) for v in part.split("-")) for part in body.split(",") if part.strip()]
        except ValueError as e:
            raise InputError(f"无效的模体描述: {text!r}") from e
        return motif(d, v0, edges)
    raise InputError(f"无法识别的模体: {text!r}")


def build(n: int, d: int, edges: Iterable[Sequence[int]]) -> Hypergraph:
    """构造并规范化超图（边内排序、去重）

    Raises:
        InputError: 顶点越界、元数错误或边内顶点重复
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"顶点数必须是正整数: {n!r}")
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise InputError(f"一致度 d 必须是正整数: {d!r}")
    normalized = set()
    for idx, raw in enumerate(edges):
        normalized.add(_normalize_edge(raw, n, d, idx))
    if normalized and d > n:
        raise InputError(f"d={d} 大于顶点数 n={n}")
    return Hypergraph(d, n, frozenset(normalized))


def empty_graph(n: int, d: int = 2) -> Hypergraph:
    return build(n, d, [])


def complete_graph(n: int, d: int = 2) -> Hypergraph:
    return build(n, d, combinations(range(n), d))


def random_hypergraph(n: int, d: int, p: Union[float, Fraction], seed: int) -> Hypergraph:
    """随机 d-一致超图：每个 d 元子集独立地以概率 p 成为边

    Args:
        n: 顶点数
        d: 一致度
        p: 边概率，0 <= p <= 1
        seed: 非负整数种子，相同种子得到相同的图

    Raises:
        InputError: p 越界或种子无效
    """
    try:
        p_value = float(p)
    except (TypeError, ValueError) as e:
        raise InputError(f"边概率无效: {p!r}") from e
    if not 0.0 <= p_value <= 1.0:
        raise InputError(f"边概率必须在 [0,1] 内: {p!r}")
    if n < 1 or d < 1:
        raise InputError(f"参数无效: n={n}, d={d}")

    subsets = list(combinations(range(n), d)) if d <= n else []
    draws = stream(seed, PURPOSE_HYPERGRAPH, n, d).random(len(subsets))
    chosen = [e for e, u in zip(subsets, draws) if u < p_value]
    logger.debug(f"生成随机超图: n={n}, d={d}, p={p}, seed={seed}, 边数={len(chosen)}")
    return Hypergraph(d, n, frozenset(chosen))


def degree_sequence(G: Hypergraph) -> Dict[int, int]:
    """每个顶点所在的边数"""
    degrees = {v: 0 for v in range(G.n)}
    for e in G.edges:
        for v in e:
            degrees[v] += 1
    return degrees
