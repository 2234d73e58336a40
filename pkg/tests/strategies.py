"""测试共用的 hypothesis 生成策略与小工具"""
from fractions import Fraction
from itertools import combinations, product
from typing import List

from hypothesis import strategies as st

from src.core.hypergraph.hypergraph import Hypergraph, build
from src.core.probspace.space import Factor, FiniteProbSpace


@st.composite
def hypergraphs(draw, min_n: int = 1, max_n: int = 6, d: int = 2) -> Hypergraph:
    """n ≤ max_n 的随机 d-一致超图"""
    n = draw(st.integers(min_value=max(min_n, 1), max_value=max_n))
    candidates = list(combinations(range(n), d)) if d <= n else []
    chosen = draw(st.lists(st.sampled_from(candidates), unique=True)) if candidates else []
    return build(n, d, chosen)


@st.composite
def rational_spaces(draw, max_points: int = 12, allow_zero: bool = True) -> FiniteProbSpace:
    """带有理数权重的有限空间，允许零权重点"""
    size = draw(st.integers(min_value=1, max_value=max_points))
    low = 0 if allow_zero else 1
    raw = draw(st.lists(st.integers(min_value=low, max_value=6), min_size=size, max_size=size))
    if sum(raw) == 0:
        raw[0] = 1
    total = sum(raw)
    return FiniteProbSpace(list(range(size)), [Fraction(w, total) for w in raw])


@st.composite
def factors(draw, space: FiniteProbSpace, max_atoms: int = 4) -> Factor:
    labels = draw(st.lists(st.integers(min_value=0, max_value=max_atoms - 1),
                           min_size=space.size, max_size=space.size))
    return Factor.from_labels(space, labels)


@st.composite
def events(draw, space: FiniteProbSpace) -> frozenset:
    return frozenset(draw(st.sets(st.integers(min_value=0, max_value=space.size - 1))))


def refine(coarse: Factor, extra: Factor) -> Factor:
    """coarse ∨ extra，保证 coarse 是结果的子因子"""
    return Factor.from_labels(coarse.space, list(zip(coarse.atoms, extra.atoms)))


def stanley_sequence(limit: int) -> List[int]:
    """三进制只含数字 0 和 1 的非负整数 (< limit)，不含非平凡的三项等差数列"""
    result = []
    for x in range(limit):
        y = x
        ok = True
        while y:
            if y % 3 == 2:
                ok = False
                break
            y //= 3
        if ok:
            result.append(x)
    return result


def brute_force_embed(G: Hypergraph, leaves_formula, K: int) -> Fraction:
    """独立的暴力枚举：对 V^K 上的每个赋值调用 leaves_formula(assignment)"""
    hits = 0
    for assignment in product(range(G.n), repeat=K):
        if leaves_formula(assignment):
            hits += 1
    return Fraction(hits, G.n ** K)
