"""删除结果与分块描述"""
from dataclasses import dataclass, field
from math import factorial
from typing import Any, Dict, List, Optional, Tuple

from src.core.errors import InputError
from src.core.hypergraph.counting import check_uniformity, count_labeled_copies
from src.core.hypergraph.hypergraph import Edge, Hypergraph, MotifSpec

VERDICT_COMPLETE = "complete"
VERDICT_EMPTY = "empty"


def verify_free(G: Hypergraph, G0: MotifSpec, threads: Optional[int] = None) -> Tuple[bool, int]:
    """重新精确计数，返回 (是否不含模体, 带标号拷贝数)

    Raises:
        InputError: 一致度不匹配
    """
    check_uniformity(G, G0)
    count = count_labeled_copies(G, G0, threads)
    return count == 0, count


def removal_budget_factor(d: int, G0: MotifSpec) -> int:
    """2^d · d! · |E_0|，只作为报告中的元数据"""
    if d < 1:
        raise InputError(f"一致度必须 >= 1: {d}")
    return (2 ** d) * factorial(d) * G0.num_edges


@dataclass
class RemovalResult:
    """一次删除的结果

    Attributes:
        method: 方法标签
        deleted: 按删除顺序排列的边
        graph: 删除后的图 G'
        residual: G' 中模体的带标号拷贝数，必须为 0
        phases: 各阶段的删除数
        budget_factor: 2^d·d!·|E_0|
        trivial: 模体边集为空时的平凡验证
    """
    method: str
    deleted: List[Edge]
    graph: Hypergraph
    residual: int
    phases: Dict[str, int] = field(default_factory=dict)
    budget_factor: int = 0
    trivial: bool = False
    extra: Dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def deletion_count(self) -> int:
        return len(self.deleted)

    @property
    def free(self) -> bool:
        return self.residual == 0

    def to_report(self) -> Dict[str, Any]:
        """JSON 报告；耗时放在单独的 timing 字段"""
        report = {
            "method": self.method,
            "deletions": {"count": self.deletion_count, "edges": [list(e) for e in self.deleted]},
            "phases": dict(self.phases),
            "residual_count": self.residual,
            "free": self.free,
            "budget_factor": self.budget_factor,
            "timing": {"seconds": self.elapsed},
        }
        if self.trivial:
            report["trivial_verification"] = True
        report.update(self.extra)
        return report


@dataclass
class PartitionDescription:
    """顶点的 M 块划分以及每个无序块对的判定（complete / empty，含块内）"""
    parts: List[List[int]]
    verdicts: Dict[Tuple[int, int], str]

    @property
    def size(self) -> int:
        return len(self.parts)

    def part_of(self) -> Dict[int, int]:
        return {v: k for k, part in enumerate(self.parts) for v in part}

    def verdict(self, a: int, b: int) -> str:
        return self.verdicts[(min(a, b), max(a, b))]

    def complete_pairs(self) -> List[Tuple[int, int]]:
        return sorted(k for k, v in self.verdicts.items() if v == VERDICT_COMPLETE)

    def blow_up(self, n: int) -> Hypergraph:
        """由判定定义的图：u,v 所在块对为 complete 时 {u,v} 为边"""
        owner = self.part_of()
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if self.verdict(owner[u], owner[v]) == VERDICT_COMPLETE]
        return Hypergraph(2, n, frozenset(edges))

    def to_report(self) -> Dict[str, Any]:
        return {
            "parts": [list(p) for p in self.parts],
            "verdicts": [{"pair": list(k), "verdict": v} for k, v in sorted(self.verdicts.items())],
        }
