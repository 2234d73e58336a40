from typing import Any, Optional

from . import RemovalMethod
from src.core.errors import InputError
from src.core.hypergraph.hypergraph import Hypergraph, MotifSpec, triangle_motif
from src.core.removal.partition import (
    METHOD_PARTITION,
    METHOD_STRONG,
    remove_triangles_partition,
    resolve_poll_size,
    resolve_threshold,
    strong_removal_partition,
)
from src.core.removal.result import RemovalResult
from src.utils.rng import require_seed


def _require_triangle(G0: MotifSpec) -> None:
    if G0 != triangle_motif():
        raise InputError("基于划分的方法只处理三角形模体")


class PartitionRemoval(RemovalMethod):
    """投票聚类 + 稀疏块删除 + 贪心补删"""

    TAG = METHOD_PARTITION

    def __init__(self, poll_size: Optional[int] = None, tau: Any = None, seed: Optional[int] = None,
                 threads: Optional[int] = None):
        self.poll_size = resolve_poll_size(poll_size)
        self.tau = resolve_threshold(tau)
        self.seed = require_seed(seed)
        self.threads = threads

    @property
    def method_tag(self) -> str:
        return self.TAG

    def remove(self, G: Hypergraph, G0: MotifSpec) -> RemovalResult:
        _require_triangle(G0)
        return remove_triangles_partition(G, self.poll_size, self.tau, self.seed, self.threads)


class StrongPartitionRemoval(PartitionRemoval):
    """块对判定为 complete / empty 的强删除，结果图可能新增边"""

    TAG = METHOD_STRONG

    def remove(self, G: Hypergraph, G0: MotifSpec) -> RemovalResult:
        _require_triangle(G0)
        _, result = strong_removal_partition(G, self.poll_size, self.tau, self.seed, self.threads)
        return result
