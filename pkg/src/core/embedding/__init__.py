"""通用嵌入包

正则事件小语言、图 / 超图嵌入的精确与蒙特卡洛概率，以及 Furstenberg 嵌入。
"""

from .events import (
    IndexPermutation,
    RegularEvent,
    ap_event,
    evaluate,
    format_event,
    parse_event,
    permute_event,
    shift_event,
)
from .furstenberg import FurstenbergInstance, furstenberg_prob
from .sampler import McEstimate, embed_prob, embed_prob_exact, embed_prob_mc

__all__ = [
    "IndexPermutation", "RegularEvent", "ap_event", "evaluate", "format_event", "parse_event",
    "permute_event", "shift_event", "FurstenbergInstance", "furstenberg_prob", "McEstimate",
    "embed_prob", "embed_prob_exact", "embed_prob_mc",
]
