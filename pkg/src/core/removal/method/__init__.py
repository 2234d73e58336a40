from abc import ABC, abstractmethod
from typing import Any, Optional

from src.core.errors import InputError
from src.core.hypergraph.hypergraph import Hypergraph, MotifSpec
from src.core.removal.result import RemovalResult


class RemovalMethod(ABC):
    """删除方法抽象基类"""

    @abstractmethod
    def remove(self, G: Hypergraph, G0: MotifSpec) -> RemovalResult:
        """删除若干条边使 G 不含 G0 的拷贝

        Args:
            G: 宿主图
            G0: 模体

        Returns:
            RemovalResult: 删除结果，residual 必须为 0
        """
        pass

    @property
    @abstractmethod
    def method_tag(self) -> str:
        """获取方法标签

        Returns:
            str: 方法标签
        """
        pass

# 导出删除方法接口和实现类
from .greedy_method import GreedyRemoval
from .partition_method import PartitionRemoval, StrongPartitionRemoval


def get_method(tag: str, poll_size: Optional[int] = None, tau: Any = None, seed: Optional[int] = None,
               threads: Optional[int] = None) -> RemovalMethod:
    """按标签构造删除方法

    Raises:
        InputError: 未知的标签，或基于划分的方法缺少种子
    """
    if tag == GreedyRemoval.TAG:
        return GreedyRemoval(threads)
    if tag == PartitionRemoval.TAG:
        return PartitionRemoval(poll_size, tau, seed, threads)
    if tag == StrongPartitionRemoval.TAG:
        return StrongPartitionRemoval(poll_size, tau, seed, threads)
    raise InputError(f"未知的删除方法: {tag}（可选 greedy / partition / strong）")
