"""算术组合包

Z_N 中的等差数列计数、Z_M² 中的角计数与三部图归约，以及有限交换平移系统上的嵌入恒等式。
"""

from .sets import (
    GridSet,
    ZnSet,
    format_grid_set,
    format_zn_set,
    parse_grid_set,
    parse_zn_set,
    read_grid_set,
    read_zn_set,
    write_grid_set,
    write_zn_set,
)
from .counting import ap_density, corner_density, corners_to_tripartite, count_aps, count_corners
from .shift import (
    FiniteShiftSystem,
    recurrence_average,
    recurrence_series,
    recurrence_value,
    tripartite_embed_prob,
    tripartite_rhs_average,
    tripartite_upper_bound,
)

__all__ = [
    "GridSet", "ZnSet", "format_grid_set", "format_zn_set", "parse_grid_set", "parse_zn_set",
    "read_grid_set", "read_zn_set", "write_grid_set", "write_zn_set", "ap_density", "corner_density",
    "corners_to_tripartite", "count_aps", "count_corners", "FiniteShiftSystem", "recurrence_average",
    "recurrence_series", "recurrence_value", "tripartite_embed_prob", "tripartite_rhs_average",
    "tripartite_upper_bound",
]
