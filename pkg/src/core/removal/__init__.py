"""删除引理算法包

贪心删除、投票聚类划分删除与强删除，所有结果都经过精确的模体重新计数验证。
"""

from .result import PartitionDescription, RemovalResult, removal_budget_factor, verify_free
from .greedy import greedy_deletions, minimum_deletion, remove_copies_greedy
from .partition import block_densities, poll_clusters, remove_triangles_partition, strong_removal_partition
from .method import GreedyRemoval, PartitionRemoval, RemovalMethod, StrongPartitionRemoval, get_method

__all__ = [
    "PartitionDescription", "RemovalResult", "removal_budget_factor", "verify_free", "greedy_deletions",
    "minimum_deletion", "remove_copies_greedy", "block_densities", "poll_clusters",
    "remove_triangles_partition", "strong_removal_partition", "GreedyRemoval", "PartitionRemoval",
    "RemovalMethod", "StrongPartitionRemoval", "get_method",
]
