"""一致交性质包

下集组合、因子系统与假设检查、三种扩展步骤，以及按高度归纳的 UIP 构造器。
"""

from .downset import Downset, downset_ops, format_mask, mask_of
from .system import FactorSystem, check_hypotheses
from .extensions import chain_limit_step, finite_rank_decompose, reassemble, weak_mixing_step
from .constructor import (
    Slot,
    UipProblem,
    UipSolution,
    construct_for_ideals,
    merge_repeated,
    uip_construct,
    validate_solution,
)
from .generators import product_system, random_null_events, three_point_example
from .serialization import problem_from_json, problem_to_json, read_problem, solution_to_json

__all__ = [
    "Downset", "downset_ops", "format_mask", "mask_of", "FactorSystem", "check_hypotheses",
    "chain_limit_step", "finite_rank_decompose", "reassemble", "weak_mixing_step", "Slot", "UipProblem",
    "UipSolution", "construct_for_ideals", "merge_repeated", "uip_construct", "validate_solution",
    "product_system", "random_null_events", "three_point_example", "problem_from_json", "problem_to_json",
    "read_problem", "solution_to_json",
]
