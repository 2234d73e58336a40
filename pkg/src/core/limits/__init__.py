"""弱收敛诊断包

密度表与对角子序列提取，以及有限尺度的投票正则性缺陷曲线。
"""

from .table import DensityTable, density_table, density_vector, diagonal_subsequence, subsequence_report
from .polling import (
    iid_polls,
    poll_signatures,
    polled_graph_system,
    regularity_defect_curve,
    trial_defect,
)

__all__ = [
    "DensityTable", "density_table", "density_vector", "diagonal_subsequence", "subsequence_report",
    "iid_polls", "poll_signatures", "polled_graph_system", "regularity_defect_curve", "trial_defect",
]
