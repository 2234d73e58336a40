"""贪心删除与穷举最优删除"""
import time
from collections import Counter
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from src.core.errors import InputError
from src.core.hypergraph.counting import check_uniformity, isolated_multiplicity, labeled_copies
from src.core.hypergraph.hypergraph import Edge, Hypergraph, MotifSpec
from src.core.removal.result import RemovalResult, removal_budget_factor, verify_free
from src.utils.logger import get_logger

logger = get_logger()

METHOD_GREEDY = "greedy"

# 穷举最优删除允许的最大边数
EXHAUSTIVE_EDGE_LIMIT = 20


def greedy_deletions(G: Hypergraph, G0: MotifSpec) -> List[Edge]:
    """反复删除落在最多剩余带标号拷贝中的边（并列时取字典序最小的边），直到没有拷贝"""
    check_uniformity(G, G0)
    if G0.num_edges == 0:
        return []
    multiplicity = isolated_multiplicity(G, G0)
    # 相同边像的拷贝合并计数
    images: Counter = Counter(labeled_copies(G, G0))
    copies: List[Tuple[FrozenSet[Edge], int]] = [(img, m * multiplicity) for img, m in sorted(
        images.items(), key=lambda item: sorted(item[0]))]

    index: Dict[Edge, List[int]] = {}
    counts: Dict[Edge, int] = {}
    for cid, (img, weight) in enumerate(copies):
        for e in img:
            index.setdefault(e, []).append(cid)
            counts[e] = counts.get(e, 0) + weight
    alive: Set[int] = set(range(len(copies)))

    deleted: List[Edge] = []
    while alive:
        edge = min((e for e, c in counts.items() if c > 0), key=lambda e: (-counts[e], e))
        deleted.append(edge)
        for cid in index[edge]:
            if cid not in alive:
                continue
            alive.discard(cid)
            img, weight = copies[cid]
            for e in img:
                counts[e] -= weight
    return deleted


def remove_copies_greedy(G: Hypergraph, G0: MotifSpec, threads: Optional[int] = None) -> RemovalResult:
    """贪心删除，直到 G0 的带标号拷贝数为 0

    模体边集为空时原样返回 G，验证视为平凡成立。
    """
    start = time.perf_counter()
    deleted = greedy_deletions(G, G0)
    G_prime = G.remove_edges(deleted)
    budget = removal_budget_factor(G.d, G0)
    if G0.num_edges == 0:
        return RemovalResult(METHOD_GREEDY, [], G, 0, {"greedy": 0}, budget, trivial=True,
                             elapsed=time.perf_counter() - start)
    free, residual = verify_free(G_prime, G0, threads)
    logger.debug(f"贪心删除: n={G.n}, 删除 {len(deleted)} 条边, 剩余拷贝 {residual}")
    return RemovalResult(METHOD_GREEDY, deleted, G_prime, residual, {"greedy": len(deleted)}, budget,
                         elapsed=time.perf_counter() - start)


def minimum_deletion(G: Hypergraph, G0: MotifSpec) -> Tuple[int, List[Edge]]:
    """穷举求最少删除边数（只适用于很小的实例）

    Raises:
        InputError: 相关边数超过 EXHAUSTIVE_EDGE_LIMIT
    """
    check_uniformity(G, G0)
    if G0.num_edges == 0:
        return 0, []
    images = set(labeled_copies(G, G0))
    if not images:
        return 0, []
    relevant = sorted({e for img in images for e in img})
    if len(relevant) > EXHAUSTIVE_EDGE_LIMIT:
        raise InputError(f"相关边数 {len(relevant)} 超过穷举上限 {EXHAUSTIVE_EDGE_LIMIT}")
    for size in range(1, len(relevant) + 1):
        for subset in combinations(relevant, size):
            hit = set(subset)
            if all(img & hit for img in images):
                return size, list(subset)
    return len(relevant), relevant
