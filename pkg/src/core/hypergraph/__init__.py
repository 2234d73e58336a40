"""d-一致超图包

提供超图与模体的表示、随机生成、精确拷贝计数以及文本文件读写。
"""

from .hypergraph import (
    Edge,
    Hypergraph,
    MotifSpec,
    build,
    clique_motif,
    complete_graph,
    edge_motif,
    empty_graph,
    motif,
    parse_motif,
    random_hypergraph,
    triangle_motif,
)
from .counting import (
    automorphism_count,
    copy_density,
    count_injective_copies,
    count_labeled_copies,
    count_unlabeled_copies,
    edge_copy_counts,
    labeled_copies,
    triangle_count,
)
from .io import format_hypergraph, parse_hypergraph, read_hypergraph, write_hypergraph

__all__ = [
    "Edge", "Hypergraph", "MotifSpec", "build", "clique_motif", "complete_graph", "edge_motif",
    "empty_graph", "motif", "parse_motif", "random_hypergraph", "triangle_motif",
    "automorphism_count", "copy_density", "count_injective_copies", "count_labeled_copies",
    "count_unlabeled_copies", "edge_copy_counts", "labeled_copies", "triangle_count",
    "format_hypergraph", "parse_hypergraph", "read_hypergraph", "write_hypergraph",
]
