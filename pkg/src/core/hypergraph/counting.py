"""模体拷贝的精确计数

所有计数都是带标号的：统计满足 {x_i : i∈e} ∈ E（对所有 e∈E0）的
元组 (x_1..x_v0) ∈ V^{v0} 的个数。候选顶点集合用 Python 整数位集表示，
搜索按第一个模体顶点的像分块，块之间只做整数加法。
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from src.core.errors import InputError
from src.core.hypergraph.hypergraph import Edge, Hypergraph, MotifSpec
from src.utils.logger import get_logger
from src.utils.worker_pool import run_blocks

logger = get_logger()

# 每个并行块包含的首顶点个数
FIRST_VERTEX_BLOCK = 8


@dataclass(frozen=True)
class _SearchPlan:
    """模体顶点的搜索顺序

    order[k] 是第 k 个被赋值的模体顶点；closing[k] 列出在第 k 步
    恰好闭合的模体边，每条边以其余顶点在 order 中的位置给出。
    """
    order: Tuple[int, ...]
    closing: Tuple[Tuple[Tuple[int, ...], ...], ...]
    edge_positions: Tuple[Tuple[int, ...], ...]
    isolated: int


def check_uniformity(G: Hypergraph, G0: MotifSpec) -> None:
    if G.d != G0.d:
        raise InputError(f"一致度不匹配: 图 d={G.d}, 模体 d={G0.d}")


def _plan(G0: MotifSpec) -> _SearchPlan:
    edges = G0.sorted_edges()
    covered = sorted({v for e in edges for v in e})
    incident: Dict[int, List[Edge]] = {v: [e for e in edges if v in e] for v in covered}

    order: List[int] = []
    placed = set()
    while len(order) < len(covered):
        def score(v):
            closes = sum(1 for e in incident[v] if all(u in placed or u == v for u in e))
            touches = sum(1 for e in incident[v] if any(u in placed for u in e))
            return (closes, touches, len(incident[v]), -v)
        v = max((u for u in covered if u not in placed), key=score)
        order.append(v)
        placed.add(v)

    position = {v: k for k, v in enumerate(order)}
    closing: List[List[Tuple[int, ...]]] = [[] for _ in order]
    for e in edges:
        last = max(position[v] for v in e)
        closing[last].append(tuple(sorted(position[v] for v in e if position[v] != last)))
    edge_positions = tuple(tuple(position[v] for v in e) for e in edges)
    return _SearchPlan(tuple(order), tuple(tuple(c) for c in closing), edge_positions,
                       G0.v0 - len(covered))


def _link_masks(G: Hypergraph) -> Dict[Tuple[int, ...], int]:
    """(d-1) 元顶点组 -> 能与之组成边的顶点位集"""
    if G.d == 2:
        return {(u,): row for u, row in enumerate(G.rows) if row}
    link: Dict[Tuple[int, ...], int] = {}
    for e in G.edges:
        for i, v in enumerate(e):
            key = e[:i] + e[i + 1:]
            link[key] = link.get(key, 0) | (1 << v)
    return link


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Searcher:
    """回溯搜索，候选集合由闭合边的 link 位集求交得到"""

    def __init__(self, G: Hypergraph, G0: MotifSpec, injective: bool):
        self.plan = _plan(G0)
        self.link = _link_masks(G)
        self.full = (1 << G.n) - 1
        self.injective = injective
        self.depth = len(self.plan.order)

    def candidates(self, k: int, images: List[int], used: int) -> int:
        mask = self.full
        for others in self.plan.closing[k]:
            key = tuple(sorted(images[p] for p in others))
            if len(set(key)) != len(key):
                return 0
            mask &= self.link.get(key, 0)
            if not mask:
                return 0
        if self.injective:
            mask &= ~used
        return mask

    def count_from(self, k: int, images: List[int], used: int) -> int:
        mask = self.candidates(k, images, used)
        if k == self.depth - 1:
            return mask.bit_count()
        total = 0
        for v in _iter_bits(mask):
            images[k] = v
            total += self.count_from(k + 1, images, used | (1 << v))
        return total

    def count_block(self, first_vertices: List[int]) -> int:
        images = [0] * self.depth
        total = 0
        for v in first_vertices:
            images[0] = v
            if self.depth == 1:
                total += 1
            else:
                total += self.count_from(1, images, 1 << v)
        return total

    def walk(self, k: int, images: List[int], used: int) -> Iterator[Tuple[int, ...]]:
        if k == self.depth:
            yield tuple(images)
            return
        for v in _iter_bits(self.candidates(k, images, used)):
            images[k] = v
            yield from self.walk(k + 1, images, used | (1 << v))


def _isolated_factor(n: int, placed: int, isolated: int, injective: bool) -> int:
    if not injective:
        return n ** isolated
    factor = 1
    for j in range(isolated):
        factor *= max(n - placed - j, 0)
    return factor


def _count(G: Hypergraph, G0: MotifSpec, injective: bool, threads: Optional[int]) -> int:
    check_uniformity(G, G0)
    searcher = _Searcher(G, G0, injective)
    plan = searcher.plan
    factor = _isolated_factor(G.n, len(plan.order), plan.isolated, injective)
    if not plan.order or factor == 0:
        return factor if not plan.order else 0

    first = list(_iter_bits(searcher.candidates(0, [0] * searcher.depth, 0)))
    blocks = [first[i:i + FIRST_VERTEX_BLOCK] for i in range(0, len(first), FIRST_VERTEX_BLOCK)]
    partial = run_blocks(searcher.count_block, blocks, threads, label="模体计数")
    return sum(partial) * factor


def count_labeled_copies(G: Hypergraph, G0: MotifSpec, threads: Optional[int] = None) -> int:
    """带标号拷贝数 |{(x_i) ∈ V^{V0} : 每条模体边的像都是 G 的边}|

    Args:
        G: 宿主超图
        G0: 模体，一致度必须与 G 相同
        threads: 并行线程数，None 表示使用默认值；结果与线程数无关

    Returns:
        int: 精确计数（任意精度整数）

    Raises:
        InputError: 一致度不匹配
    """
    total = _count(G, G0, injective=False, threads=threads)
    logger.debug(f"带标号拷贝计数: n={G.n}, |E|={G.num_edges}, 模体边数={G0.num_edges}, 结果={total}")
    return total


def count_injective_copies(G: Hypergraph, G0: MotifSpec, threads: Optional[int] = None) -> int:
    """顶点两两不同的带标号拷贝数"""
    return _count(G, G0, injective=True, threads=threads)


def copy_density(G: Hypergraph, G0: MotifSpec, threads: Optional[int] = None) -> Fraction:
    """拷贝密度 count_labeled_copies / n^{v0}"""
    return Fraction(count_labeled_copies(G, G0, threads), G.n ** G0.v0)


# 回溯搜索自同构时允许的最大顶点数（约化之后）
AUTOMORPHISM_SEARCH_CAP = 12


def _search_automorphisms(vertices: List[int], edges: FrozenSet[Edge]) -> int:
    """逐个顶点指定像的回溯计数，每步检查已全部指定的边是否仍映到边"""
    degree = {v: sum(1 for e in edges if v in e) for v in vertices}
    incident = {v: [e for e in edges if v in e] for v in vertices}
    image: Dict[int, int] = {}
    used = set()

    def extend(i: int) -> int:
        if i == len(vertices):
            return 1
        v = vertices[i]
        total = 0
        for w in vertices:
            if w in used or degree[w] != degree[v]:
                continue
            image[v] = w
            used.add(w)
            if all(tuple(sorted(image[u] for u in e)) in edges
                   for e in incident[v] if all(u in image for u in e)):
                total += extend(i + 1)
            used.discard(w)
            del image[v]
        return total

    return extend(0)


def automorphism_count(G0: MotifSpec) -> int:
    """模体的自同构个数 |Aut(G0)|

    先换成边数不超过一半的补图（自同构群不变），孤立顶点贡献阶乘因子，
    完全与空的情形直接给出，其余部分回溯搜索。

    Raises:
        InputError: 约化后仍需搜索的顶点数超过 AUTOMORPHISM_SEARCH_CAP
    """
    vertices = list(range(1, G0.v0 + 1))
    edges = G0.edges0
    total = comb(G0.v0, G0.d)
    if 2 * len(edges) > total:
        edges = frozenset(e for e in combinations(vertices, G0.d) if e not in edges)
    if not edges:
        return factorial(G0.v0)
    covered = sorted({v for e in edges for v in e})
    free = factorial(G0.v0 - len(covered))
    if len(covered) > AUTOMORPHISM_SEARCH_CAP:
        raise InputError(f"模体约化后仍有 {len(covered)} 个顶点，超过自同构搜索上限 {AUTOMORPHISM_SEARCH_CAP}")
    return free * _search_automorphisms(covered, edges)


def count_unlabeled_copies(G: Hypergraph, G0: MotifSpec, threads: Optional[int] = None) -> int:
    """G 中与 G0 同构的（不一定导出的）子超图个数

    等于单射拷贝数除以 |Aut(G0)|。
    """
    return count_injective_copies(G, G0, threads) // automorphism_count(G0)


def triangle_count(G: Hypergraph) -> int:
    """有序三元组形式的三角形个数，对有序边求 popcount(row[u] & row[v])

    Raises:
        InputError: d != 2
    """
    if G.d != 2:
        raise InputError(f"triangle_count 只适用于 d=2，当前 d={G.d}")
    rows = G.rows
    total = 0
    for u, v in G.edges:
        total += (rows[u] & rows[v]).bit_count()
    # 每条无序边对应两条有序边
    return 2 * total


def isolated_multiplicity(G: Hypergraph, G0: MotifSpec) -> int:
    """孤立模体顶点带来的倍数 n^{孤立顶点数}"""
    return G.n ** len(G0.isolated_vertices())


def labeled_copies(G: Hypergraph, G0: MotifSpec) -> Iterator[FrozenSet[Edge]]:
    """逐个给出带标号拷贝的边像集合

    只对非孤立的模体顶点赋值；每个结果在完整计数中出现
    isolated_multiplicity(G, G0) 次。
    """
    check_uniformity(G, G0)
    searcher = _Searcher(G, G0, injective=False)
    if not searcher.plan.order:
        return
    positions = searcher.plan.edge_positions
    for images in searcher.walk(0, [0] * searcher.depth, 0):
        yield frozenset(tuple(sorted(images[p] for p in pos)) for pos in positions)


def edge_copy_counts(G: Hypergraph, G0: MotifSpec) -> Dict[Edge, int]:
    """每条边所在的带标号拷贝数（含孤立顶点倍数）"""
    multiplicity = isolated_multiplicity(G, G0)
    counts: Dict[Edge, int] = {}
    for image in labeled_copies(G, G0):
        for e in image:
            counts[e] = counts.get(e, 0) + multiplicity
    return counts