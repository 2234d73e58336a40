"""图 / 超图的通用嵌入：在 n^K 个赋值上精确枚举，或用蒙特卡洛采样"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

import numpy as np

from src.core.embedding.events import KIND_GRAPH, Leaf, RegularEvent, evaluate
from src.core.errors import InputError
from src.core.hypergraph.hypergraph import Hypergraph
from src.utils.config_manager import ConfigManager
from src.utils.logger import get_logger
from src.utils.rng import PURPOSE_EMBEDDING_MC, require_seed, stream
from src.utils.worker_pool import run_blocks

logger = get_logger()


@dataclass(frozen=True)
class McEstimate:
    """蒙特卡洛估计值及其标准误差"""
    estimate: float
    stderr: float
    samples: int
    hits: int

    def to_report(self) -> Dict[str, Any]:
        return {"estimate": self.estimate, "stderr": self.stderr, "samples": self.samples, "hits": self.hits}


def _check_event(G: Hypergraph, E: RegularEvent) -> None:
    if E.kind != KIND_GRAPH:
        raise InputError("图嵌入只接受 A(i,j,...) 形式的事件")
    if E.leaf_arity != G.d:
        raise InputError(f"事件叶子元数 {E.leaf_arity} 与图的一致度 {G.d} 不一致")


class _LeafLookup:
    """把叶子翻译为对采样顶点数组的边成员判断

    images[k] 是第 k 个用到的下标对应的顶点数组；顶点重复时叶子为假。
    """

    def __init__(self, G: Hypergraph, used: List[int]):
        self.G = G
        self.slot = {index: k for k, index in enumerate(used)}
        self.tensor = G.edge_tensor()

    def values(self, images: np.ndarray):
        def leaf_values(leaf: Leaf) -> np.ndarray:
            cols = [images[self.slot[i]] for i in leaf.indices]
            if self.tensor is not None:
                return self.tensor[tuple(cols)]
            edges = self.G.edges
            return np.fromiter(
                (tuple(sorted(vs)) in edges and len(set(vs)) == len(vs) for vs in zip(*(c.tolist() for c in cols))),
                dtype=bool, count=images.shape[1],
            )
        return leaf_values


def _enumeration_cap(cap: Optional[int]) -> int:
    if cap is not None:
        return int(cap)
    return int(ConfigManager().get("embedding", "enumeration_cap", 6))


def embed_prob_exact(G: Hypergraph, E: RegularEvent, cap: Optional[int] = None,
                     threads: Optional[int] = None) -> Fraction:
    """P^(m)(E) 的精确值：满足公式的赋值数 / n^K

    Args:
        G: 超图
        E: 图事件，叶子元数等于 G.d
        cap: 允许的最大 K，None 时读取配置 embedding.enumeration_cap
        threads: 线程数

    Raises:
        InputError: 元数不匹配，或 K 超过上限（此时应改用蒙特卡洛）
    """
    _check_event(G, E)
    K = E.arity
    limit = _enumeration_cap(cap)
    if K > limit:
        raise InputError(f"事件用到 {K} 个采样下标，超过精确枚举上限 {limit}，请改用蒙特卡洛 (--mode mc)")

    used = E.used_indices()
    lookup = _LeafLookup(G, used)
    n = G.n
    rest_shape = (n,) * (len(used) - 1)
    rest_total = n ** len(rest_shape)
    chunk = _block_size(None)
    # 每块只展开 (x1, 其余下标的一段平铺区间)，内存随块大小而非 n^K 增长
    blocks = [(x1, lo, min(lo + chunk, rest_total))
              for x1 in range(n) for lo in range(0, rest_total, chunk)]

    def count_chunk(block) -> int:
        x1, lo, hi = block
        if rest_shape:
            rest = np.vstack(np.unravel_index(np.arange(lo, hi, dtype=np.int64), rest_shape)).astype(np.int64)
        else:
            rest = np.zeros((0, hi - lo), dtype=np.int64)
        images = np.vstack([np.full((1, hi - lo), x1, dtype=np.int64), rest])
        return int(np.count_nonzero(evaluate(E.formula, lookup.values(images))))

    hits = sum(run_blocks(count_chunk, blocks, threads, label="精确嵌入"))
    # 公式中未出现的下标对概率没有影响
    return Fraction(hits, n ** len(used))


def _block_size(block_size: Optional[int]) -> int:
    if block_size is not None:
        return max(1, int(block_size))
    return max(1, int(ConfigManager().get("embedding", "mc_block_size", 4096)))


def embed_prob_mc(G: Hypergraph, E: RegularEvent, samples: int, seed: int,
                  threads: Optional[int] = None, block_size: Optional[int] = None) -> McEstimate:
    """P^(m)(E) 的蒙特卡洛估计

    样本被切成固定大小的块，第 b 块使用 stream(seed, PURPOSE_EMBEDDING_MC, b)，
    因此结果只取决于 (seed, samples, 块大小)，与线程数无关。
    """
    _check_event(G, E)
    seed = require_seed(seed)
    if samples < 1:
        raise InputError(f"样本数必须 >= 1: {samples}")
    size = _block_size(block_size)
    used = E.used_indices()
    lookup = _LeafLookup(G, used)

    blocks = [(b, min(size, samples - b * size)) for b in range((samples + size - 1) // size)]

    def run(block) -> int:
        b, count = block
        rng = stream(seed, PURPOSE_EMBEDDING_MC, b)
        images = rng.integers(0, G.n, size=(len(used), count))
        return int(np.count_nonzero(evaluate(E.formula, lookup.values(images))))

    hits = sum(run_blocks(run, blocks, threads, label="蒙特卡洛嵌入"))
    p = hits / samples
    stderr = math.sqrt(p * (1.0 - p) / samples)
    logger.debug(f"蒙特卡洛嵌入: 事件={E}, 样本={samples}, 命中={hits}, 估计={p:.6f}±{stderr:.6f}")
    return McEstimate(p, stderr, samples, hits)


def embed_prob(G: Hypergraph, E: RegularEvent, mode: str = "exact", samples: Optional[int] = None,
               seed: Optional[int] = None, threads: Optional[int] = None) -> Union[Fraction, McEstimate]:
    """按 mode 分派到精确枚举或蒙特卡洛"""
    if mode == "exact":
        return embed_prob_exact(G, E, threads=threads)
    if mode == "mc":
        if samples is None:
            raise InputError("蒙特卡洛模式需要 samples")
        return embed_prob_mc(G, E, samples, seed, threads=threads)
    raise InputError(f"未知的模式: {mode}")
