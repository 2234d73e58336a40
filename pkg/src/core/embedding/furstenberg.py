"""Furstenberg 嵌入：Z_N 中的集合 A 与随机的 (x, λ)"""
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, Optional

import numpy as np

from src.core.embedding.events import KIND_FURSTENBERG, RegularEvent, ShiftLeaf, evaluate
from src.core.errors import InputError
from src.utils.worker_pool import run_blocks

# 每个并行块包含的 λ 个数
LAMBDA_BLOCK = 16


@dataclass(frozen=True)
class FurstenbergInstance:
    """(N, A, m)，L = ⌊N/m⌋

    Raises:
        InputError: N < 1、m 不在 1..N 内或 A 的元素越界
    """
    N: int
    A: FrozenSet[int]
    m: int

    def __post_init__(self):
        if self.N < 1:
            raise InputError(f"模数 N 必须 >= 1: {self.N}")
        if self.m < 1 or self.m > self.N:
            raise InputError(f"尺度参数 m 必须满足 1 <= m <= N，当前 m={self.m}, N={self.N}")
        bad = [a for a in self.A if a < 0 or a >= self.N]
        if bad:
            raise InputError(f"A 的元素超出 0..{self.N - 1}: {sorted(bad)}")

    @classmethod
    def of(cls, N: int, A: Iterable[int], m: int) -> "FurstenbergInstance":
        return cls(int(N), frozenset(int(a) for a in A), int(m))

    @property
    def L(self) -> int:
        return self.N // self.m


def furstenberg_prob(inst: FurstenbergInstance, E: RegularEvent, threads: Optional[int] = None) -> Fraction:
    """|{(x,λ) ∈ Z_N × [L] : 公式成立}| / (N·L)，其中 A_n ↦ (x + nλ mod N ∈ A)"""
    if E.kind != KIND_FURSTENBERG:
        raise InputError("furstenberg_prob 只接受 A[n] 形式的事件")
    N, L = inst.N, inst.L
    member = np.zeros(N, dtype=bool)
    if inst.A:
        member[np.fromiter(sorted(inst.A), dtype=np.int64)] = True
    x = np.arange(N, dtype=np.int64)

    def count_block(lambdas: range) -> int:
        xs, ls = np.meshgrid(x, np.arange(lambdas.start, lambdas.stop, dtype=np.int64), indexing="ij")
        xs, ls = xs.ravel(), ls.ravel()

        def leaf_values(leaf: ShiftLeaf) -> np.ndarray:
            # 偏移先约化到 [0, N)，任意大的整数偏移也不会溢出 int64
            off = leaf.offset % N
            return member[(xs + off * ls) % N]

        return int(np.count_nonzero(evaluate(E.formula, leaf_values)))

    blocks = [range(lo, min(lo + LAMBDA_BLOCK, L + 1)) for lo in range(1, L + 1, LAMBDA_BLOCK)]
    hits = sum(run_blocks(count_block, blocks, threads, label="Furstenberg 嵌入"))
    return Fraction(hits, N * L)
