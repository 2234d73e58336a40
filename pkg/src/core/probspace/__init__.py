"""有限概率空间包

提供带权有限样本空间、以划分表示的因子、条件期望以及相对独立性的度量。
"""

from .space import MODE_FLOAT, MODE_RATIONAL, Event, Factor, FiniteProbSpace, RandomVar
from .operations import (
    best_regular_approx,
    cond_expect,
    energy,
    equiv_independence_check,
    expectation,
    independence_defect,
    indicator,
    is_factor_of,
    is_measurable,
    join,
    join_all,
    lp_norm,
    prob,
)
from .serialization import factor_from_json, factor_to_json, space_from_json, space_to_json

__all__ = [
    "MODE_FLOAT", "MODE_RATIONAL", "Event", "Factor", "FiniteProbSpace", "RandomVar",
    "best_regular_approx", "cond_expect", "energy", "equiv_independence_check", "expectation",
    "independence_defect", "indicator", "is_factor_of", "is_measurable", "join", "join_all",
    "lp_norm", "prob", "factor_from_json", "factor_to_json", "space_from_json", "space_to_json",
]
