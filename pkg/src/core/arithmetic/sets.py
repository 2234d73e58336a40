"""Z_N 与 Z_M × Z_M 中的集合及其文本文件格式

ZnSet 文件：第一行 N，之后每行一个元素。
网格集合文件：第一行 M，之后每行 "x y"。空行与 # 开头的行被忽略。
"""
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Tuple

import numpy as np

from src.core.errors import InputError


@dataclass(frozen=True)
class ZnSet:
    """Z_N 的子集 A"""
    N: int
    members: FrozenSet[int]

    def __post_init__(self):
        if self.N < 1:
            raise InputError(f"模数 N 必须 >= 1: {self.N}")
        bad = sorted(a for a in self.members if a < 0 or a >= self.N)
        if bad:
            raise InputError(f"元素超出 0..{self.N - 1}: {bad}")

    @classmethod
    def of(cls, N: int, members: Iterable[int]) -> "ZnSet":
        return cls(int(N), frozenset(int(a) for a in members))

    def indicator(self) -> np.ndarray:
        mask = np.zeros(self.N, dtype=bool)
        if self.members:
            mask[np.fromiter(sorted(self.members), dtype=np.int64)] = True
        return mask

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class GridSet:
    """Z_M × Z_M 的子集"""
    M: int
    members: FrozenSet[Tuple[int, int]]

    def __post_init__(self):
        if self.M < 1:
            raise InputError(f"边长 M 必须 >= 1: {self.M}")
        bad = sorted(p for p in self.members if not (0 <= p[0] < self.M and 0 <= p[1] < self.M))
        if bad:
            raise InputError(f"点超出 Z_{self.M}²: {bad}")

    @classmethod
    def of(cls, M: int, members: Iterable[Tuple[int, int]]) -> "GridSet":
        return cls(int(M), frozenset((int(x), int(y)) for x, y in members))

    def grid(self) -> np.ndarray:
        """grid[x, y] 表示 (x, y) ∈ A"""
        mask = np.zeros((self.M, self.M), dtype=bool)
        for x, y in self.members:
            mask[x, y] = True
        return mask

    def __contains__(self, point: Tuple[int, int]) -> bool:
        return point in self.members

    def __len__(self) -> int:
        return len(self.members)


def _content_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append((lineno, line))
    return lines


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError as e:
        raise InputError(f"第 {lineno} 行不是整数: {token!r}", position=lineno) from e


def parse_zn_set(text: str) -> ZnSet:
    lines = _content_lines(text)
    if not lines:
        raise InputError("集合文件为空，缺少模数 N", position=1)
    lineno, head = lines[0]
    N = _int(head, lineno)
    members = []
    for lineno, line in lines[1:]:
        value = _int(line, lineno)
        if not 0 <= value < N:
            raise InputError(f"第 {lineno} 行的元素 {value} 超出 0..{N - 1}", position=lineno)
        members.append(value)
    return ZnSet.of(N, members)


def parse_grid_set(text: str) -> GridSet:
    lines = _content_lines(text)
    if not lines:
        raise InputError("集合文件为空，缺少边长 M", position=1)
    lineno, head = lines[0]
    M = _int(head, lineno)
    members = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"第 {lineno} 行应为 'x y'", position=lineno)
        x, y = _int(parts[0], lineno), _int(parts[1], lineno)
        if not (0 <= x < M and 0 <= y < M):
            raise InputError(f"第 {lineno} 行的点 ({x}, {y}) 超出 Z_{M}²", position=lineno)
        members.append((x, y))
    return GridSet.of(M, members)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise InputError(f"无法读取集合文件 {path}: {e}") from e


def read_zn_set(path: str) -> ZnSet:
    return parse_zn_set(_read(path))


def read_grid_set(path: str) -> GridSet:
    return parse_grid_set(_read(path))


def format_zn_set(A: ZnSet) -> str:
    return "\n".join([str(A.N)] + [str(a) for a in sorted(A.members)]) + "\n"


def format_grid_set(A: GridSet) -> str:
    return "\n".join([str(A.M)] + [f"{x} {y}" for x, y in sorted(A.members)]) + "\n"


def write_zn_set(A: ZnSet, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_zn_set(A))


def write_grid_set(A: GridSet, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_grid_set(A))
