from typing import Optional

from . import RemovalMethod
from src.core.hypergraph.hypergraph import Hypergraph, MotifSpec
from src.core.removal.greedy import METHOD_GREEDY, remove_copies_greedy
from src.core.removal.result import RemovalResult


class GreedyRemoval(RemovalMethod):
    """贪心删除，适用于任意一致度"""

    TAG = METHOD_GREEDY

    def __init__(self, threads: Optional[int] = None):
        self.threads = threads

    @property
    def method_tag(self) -> str:
        return self.TAG

    def remove(self, G: Hypergraph, G0: MotifSpec) -> RemovalResult:
        return remove_copies_greedy(G, G0, self.threads)
