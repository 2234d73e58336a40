"""等差数列与角的精确计数，以及角到三部图的归约"""
from fractions import Fraction
from typing import Optional

import numpy as np

from src.core.arithmetic.sets import GridSet, ZnSet
from src.core.errors import InputError
from src.core.hypergraph.hypergraph import Hypergraph
from src.utils.worker_pool import run_blocks


def _steps(modulus: int, include_trivial: bool) -> list:
    return list(range(0 if include_trivial else 1, modulus))


def count_aps(A: ZnSet, k: int, include_trivial: bool = True, threads: Optional[int] = None) -> int:
    """|{(x, r) ∈ Z_N² : x, x+r, …, x+(k−1)r ∈ A}|

    Args:
        A: Z_N 的子集
        k: 长度，k >= 1
        include_trivial: 是否计入 r = 0 的退化数列（默认计入）

    Raises:
        InputError: k < 1
    """
    if k < 1:
        raise InputError(f"等差数列长度必须 >= 1: {k}")
    member = A.indicator()
    x = np.arange(A.N, dtype=np.int64)

    def count_step(r: int) -> int:
        hit = np.ones(A.N, dtype=bool)
        for j in range(k):
            hit &= member[(x + j * r) % A.N]
        return int(np.count_nonzero(hit))

    return sum(run_blocks(count_step, _steps(A.N, include_trivial), threads, label="等差数列计数"))


def ap_density(A: ZnSet, k: int, include_trivial: bool = True) -> Fraction:
    """count_aps / N²"""
    return Fraction(count_aps(A, k, include_trivial), A.N ** 2)


def count_corners(A: GridSet, include_trivial: bool = True, threads: Optional[int] = None) -> int:
    """|{(x, y, r) ∈ Z_M³ : (x,y), (x+r,y), (x,y+r) ∈ A}|"""
    grid = A.grid()

    def count_step(r: int) -> int:
        hit = grid & np.roll(grid, -r, axis=0) & np.roll(grid, -r, axis=1)
        return int(np.count_nonzero(hit))

    return sum(run_blocks(count_step, _steps(A.M, include_trivial), threads, label="角计数"))


def corner_density(A: GridSet, include_trivial: bool = True) -> Fraction:
    """count_corners / M³"""
    return Fraction(count_corners(A, include_trivial), A.M ** 3)


def corners_to_tripartite(A: GridSet) -> Hypergraph:
    """角到三部图的归约

    顶点类 X = 行 (0..M−1)、Y = 列 (M..2M−1)、Z = 对角线 (2M..3M−1)。
    边：(x, y) ∈ A 时连 x–y；(z−y, y) ∈ A 时连 y–z；(x, z−x) ∈ A 时连 x–z（均取模 M）。
    三角形 (x, y, z) 与角 (x, y, r) 一一对应，r = z − x − y；每个角恰好给出 6 个有序三角形。
    """
    M = A.M
    edges = set()
    for x in range(M):
        for y in range(M):
            if (x, y) in A:
                edges.add((x, M + y))
    for y in range(M):
        for z in range(M):
            if ((z - y) % M, y) in A:
                edges.add((M + y, 2 * M + z))
    for x in range(M):
        for z in range(M):
            if (x, (z - x) % M) in A:
                edges.add((x, 2 * M + z))
    return Hypergraph(2, 3 * M, frozenset(edges))
