"""密度表与对角子序列提取"""
import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from src.core.embedding.events import RegularEvent, format_event
from src.core.embedding.sampler import embed_prob_exact, embed_prob_mc
from src.core.errors import InputError
from src.core.hypergraph.hypergraph import Hypergraph
from src.utils.logger import get_logger
from src.utils.rational import format_rational, parse_rational
from src.utils.worker_pool import run_blocks

logger = get_logger()

Number = Union[Fraction, float]


@dataclass
class DensityTable:
    """行是序列下标 m，列是正则事件，值是概率 P^(m)(E)

    Raises:
        InputError: 行长度与事件数不一致或值不在 [0,1] 内
    """
    events: List[RegularEvent]
    rows: List[List[Number]]
    labels: List[str] = field(default_factory=list)

    def __post_init__(self):
        for k, row in enumerate(self.rows):
            if len(row) != len(self.events):
                raise InputError(f"第 {k} 行有 {len(row)} 个值，与事件数 {len(self.events)} 不一致")
            if any(v < 0 or v > 1 for v in row):
                raise InputError(f"第 {k} 行含有不在 [0,1] 内的值")
        if not self.labels:
            self.labels = [str(k) for k in range(len(self.rows))]

    @property
    def headers(self) -> List[str]:
        return [format_event(E) for E in self.events]

    def column(self, j: int, rows: Optional[Sequence[int]] = None) -> List[Number]:
        indices = range(len(self.rows)) if rows is None else rows
        return [self.rows[i][j] for i in indices]

    def column_spread(self, rows: Optional[Sequence[int]] = None) -> List[Number]:
        """每列在给定行上的 max − min"""
        spreads = []
        for j in range(len(self.events)):
            values = self.column(j, rows)
            spreads.append(max(values) - min(values) if values else 0)
        return spreads

    def format_csv(self) -> str:
        """表头是事件字符串；精确值写成 num/den"""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["row"] + self.headers)
        for label, row in zip(self.labels, self.rows):
            writer.writerow([label] + [format_rational(v) for v in row])
        return buffer.getvalue()

    def write_csv(self, path: str) -> None:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(self.format_csv())


def density_vector(G: Hypergraph, events: Sequence[RegularEvent], mode: str = "exact",
                   samples: Optional[int] = None, seed: Optional[int] = None,
                   threads: Optional[int] = None) -> List[Number]:
    """每个事件的 P^(m)(E)：exact 为精确有理数，mc 为浮点估计"""
    if mode == "exact":
        return [embed_prob_exact(G, E, threads=threads) for E in events]
    if mode == "mc":
        if samples is None:
            raise InputError("蒙特卡洛模式需要 samples")
        return [embed_prob_mc(G, E, samples, seed, threads=threads).estimate for E in events]
    raise InputError(f"未知的模式: {mode}")


def density_table(graphs: Sequence[Hypergraph], events: Sequence[RegularEvent], mode: str = "exact",
                  samples: Optional[int] = None, seed: Optional[int] = None,
                  threads: Optional[int] = None, labels: Optional[Sequence[str]] = None) -> DensityTable:
    """整张密度表，各行并行计算（行内单线程）"""
    rows = run_blocks(lambda G: density_vector(G, events, mode, samples, seed, threads=1),
                      list(graphs), threads, label="密度表")
    return DensityTable(list(events), rows, list(labels or []))


def _resolve_tol(tol: Any) -> Number:
    value = parse_rational(tol) if isinstance(tol, str) else tol
    if value <= 0:
        raise InputError(f"容差必须 > 0: {tol}")
    return value


def _best_window(values: List[Tuple[int, Number]], tol: Number) -> List[int]:
    """以某个值为下端点、宽度为 tol 的窗口中成员最多者（并列取下端点最小），保持行顺序"""
    best_lo, best_members = None, []
    for lo in sorted({v for _, v in values}):
        members = [i for i, v in values if lo <= v <= lo + tol]
        if len(members) > len(best_members):
            best_lo, best_members = lo, members
    return best_members


def diagonal_subsequence(table: DensityTable, tol: Any) -> List[int]:
    """逐列细化：每列保留存活行中成员最多的 tol 宽窗口，返回存活的行下标

    存活行少于 2 时记录为退化，不抛出异常。

    Raises:
        InputError: tol <= 0 或表为空
    """
    tol = _resolve_tol(tol)
    if not table.rows:
        raise InputError("密度表为空")
    surviving = list(range(len(table.rows)))
    for j in range(len(table.events)):
        values = [(i, table.rows[i][j]) for i in surviving]
        surviving = _best_window(values, tol)
    if len(surviving) < 2:
        logger.warning(f"对角子序列退化: 只剩 {len(surviving)} 行")
    return surviving


def subsequence_report(table: DensityTable, tol: Any) -> Tuple[bool, Dict[str, Any]]:
    """(是否非退化, {"rows", "spread", "degenerate"})"""
    rows = diagonal_subsequence(table, tol)
    degenerate = len(rows) < 2
    return not degenerate, {"rows": rows, "spread": table.column_spread(rows), "degenerate": degenerate}
