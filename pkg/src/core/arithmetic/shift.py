"""Z_M × Z_M 上的两个交换平移 T(a,b) = (a+1,b)、S(a,b) = (a,b+1)

按点的约定：P(A ∧ T^i A ∧ S^j A) 表示 P{x : x ∈ A, T^i x ∈ A, S^j x ∈ A}。
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

import numpy as np

from src.core.arithmetic.sets import GridSet
from src.core.errors import InputError
from src.utils.worker_pool import run_blocks


@dataclass(frozen=True)
class FiniteShiftSystem:
    """均匀测度下的 (Z_M², T, S, A)；T 与 S 按构造可交换且保测"""
    A: GridSet

    @classmethod
    def of(cls, M: int, members: Iterable[Tuple[int, int]]) -> "FiniteShiftSystem":
        return cls(GridSet.of(M, members))

    @property
    def M(self) -> int:
        return self.A.M

    def shifted(self, i: int, j: int) -> np.ndarray:
        """{x : T^i S^j x ∈ A} 的示性网格"""
        return np.roll(self.A.grid(), (-i, -j), axis=(0, 1))

    def prob(self, mask: np.ndarray) -> Fraction:
        return Fraction(int(np.count_nonzero(mask)), self.M ** 2)


def _require_window(N: int) -> None:
    if N < 1:
        raise InputError(f"窗口 N 必须 >= 1: {N}")


def tripartite_embed_prob(sys: FiniteShiftSystem, N: int, threads: Optional[int] = None) -> Fraction:
    """(1/(M²N³)) · |{(x, n1, n2, n3) : T^{n1}S^{n2}x ∈ A, T^{n3−n2}S^{n2}x ∈ A, T^{n1}S^{n3−n1}x ∈ A}|

    三个条件是三部图嵌入在 (0,0) 位置的三个边事件，n_i 取遍 [N] = {1..N}。
    """
    _require_window(N)

    def count_n1(n1: int) -> int:
        total = 0
        for n2 in range(1, N + 1):
            first = sys.shifted(n1, n2)
            for n3 in range(1, N + 1):
                mask = first & sys.shifted(n3 - n2, n2) & sys.shifted(n1, n3 - n1)
                total += int(np.count_nonzero(mask))
        return total

    hits = sum(run_blocks(count_n1, list(range(1, N + 1)), threads, label="三部图嵌入"))
    return Fraction(hits, sys.M ** 2 * N ** 3)


def recurrence_value(sys: FiniteShiftSystem, n: int) -> Fraction:
    """P(A ∧ T^n A ∧ S^n A)"""
    return sys.prob(sys.shifted(0, 0) & sys.shifted(n, 0) & sys.shifted(0, n))


def tripartite_rhs_average(sys: FiniteShiftSystem, N: int) -> Fraction:
    """(1/N³) Σ_{n1,n2,n3 ∈ [N]} P(A ∧ T^{n3−n2−n1} A ∧ S^{n3−n2−n1} A)"""
    _require_window(N)
    cache: Dict[int, Fraction] = {}
    total = Fraction(0)
    for n1 in range(1, N + 1):
        for n2 in range(1, N + 1):
            for n3 in range(1, N + 1):
                k = n3 - n2 - n1
                if k not in cache:
                    cache[k] = recurrence_value(sys, k)
                total += cache[k]
    return total / N ** 3


def tripartite_upper_bound(sys: FiniteShiftSystem, N: int) -> Fraction:
    """(1/N) Σ_{n=−2N}^{N} P(A ∧ T^n A ∧ S^n A)"""
    _require_window(N)
    return sum((recurrence_value(sys, n) for n in range(-2 * N, N + 1)), Fraction(0)) / N


def recurrence_average(sys: FiniteShiftSystem, n: int) -> Tuple[Fraction, Fraction]:
    """返回 (P(A ∧ T^n A ∧ S^n A), (1/(2|n|+1)) Σ_{m=−|n|}^{|n|} P(A ∧ T^m A ∧ S^m A))"""
    window = abs(n)
    values = [recurrence_value(sys, m) for m in range(-window, window + 1)]
    return recurrence_value(sys, n), sum(values, Fraction(0)) / (2 * window + 1)


def recurrence_series(sys: FiniteShiftSystem, N: int) -> Dict[int, Fraction]:
    """n ∈ [−N, N] 上的逐项值"""
    return {n: recurrence_value(sys, n) for n in range(-N, N + 1)}
