"""有限尺度下的投票正则性：投票签名条件下 A_{1,3} 与 A_{2,3} 的相对独立性缺陷"""
from fractions import Fraction
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.core.errors import InputError
from src.core.hypergraph.hypergraph import Hypergraph
from src.core.probspace.operations import independence_defect
from src.core.probspace.space import Factor, FiniteProbSpace
from src.core.uip.downset import Downset, mask_of
from src.core.uip.system import FactorSystem
from src.utils.config_manager import ConfigManager
from src.utils.logger import get_logger
from src.utils.rng import PURPOSE_DEFECT, PURPOSE_POLL, require_seed, stream
from src.utils.worker_pool import run_blocks

logger = get_logger()

# polled_graph_system 的点数 n³ 上限
POLLED_SPACE_LIMIT = 20000


def _require_graph(G: Hypergraph) -> np.ndarray:
    if G.d != 2:
        raise InputError(f"投票正则性只适用于图 (d=2)，收到 d={G.d}")
    if G.n < 1:
        raise InputError("图至少需要一个顶点")
    return np.asarray(G.adjacency_matrix(), dtype=bool)


def iid_polls(n: int, s: int, rng: np.random.Generator) -> List[int]:
    """有放回地均匀抽取 s 个投票顶点"""
    if s == 0:
        return []
    return [int(v) for v in rng.integers(0, n, size=s)]


def poll_signatures(adj: np.ndarray, polls: Sequence[int]) -> List[Tuple[int, ...]]:
    """每个顶点对投票顶点的邻接向量"""
    if not polls:
        return [()] * adj.shape[0]
    cols = adj[:, list(polls)]
    return [tuple(int(v) for v in row) for row in cols]


def _exact_trial_space(adj: np.ndarray, signatures: List[Tuple[int, ...]]):
    """(x3, a, b) 上的精确空间：x1、x2 被积分掉，a、b 在给定 x3 时独立，成功概率 deg(x3)/n"""
    n = adj.shape[0]
    degrees = adj.sum(axis=1)
    points, weights, a_labels, b_labels, sig_labels = [], [], [], [], []
    for x in range(n):
        p = Fraction(int(degrees[x]), n)
        for a, b in product((0, 1), repeat=2):
            w = Fraction(1, n) * (p if a else 1 - p) * (p if b else 1 - p)
            if w == 0:
                continue
            points.append((x, a, b))
            weights.append(w)
            a_labels.append(a)
            b_labels.append(b)
            sig_labels.append(signatures[x])
    space = FiniteProbSpace(points, weights)
    return space, a_labels, b_labels, sig_labels


def _sampled_trial_space(adj: np.ndarray, signatures: List[Tuple[int, ...]], samples: int,
                         rng: np.random.Generator):
    """由 samples 个抽样三元组 (x1, x2, x3) 构成的经验空间"""
    n = adj.shape[0]
    triples = rng.integers(0, n, size=(samples, 3))
    x1, x2, x3 = triples[:, 0], triples[:, 1], triples[:, 2]
    a_labels = adj[x1, x3].astype(int).tolist()
    b_labels = adj[x2, x3].astype(int).tolist()
    sig_labels = [signatures[int(x)] for x in x3]
    space = FiniteProbSpace.uniform(list(range(samples)))
    return space, a_labels, b_labels, sig_labels


def trial_defect(G: Hypergraph, polls: Sequence[int], samples: Optional[int] = None,
                 rng: Optional[np.random.Generator] = None) -> Fraction:
    """一组投票顶点下的缺陷 ‖E(1_a 1_b | sig) − E(1_a|sig)E(1_b|sig)‖_{L¹} 的最大值"""
    adj = _require_graph(G)
    signatures = poll_signatures(adj, polls)
    if samples is None:
        space, a_labels, b_labels, sig_labels = _exact_trial_space(adj, signatures)
    else:
        if rng is None:
            raise InputError("抽样模式需要随机数生成器")
        space, a_labels, b_labels, sig_labels = _sampled_trial_space(adj, signatures, samples, rng)
    return independence_defect(Factor.from_labels(space, a_labels), Factor.from_labels(space, b_labels),
                               Factor.from_labels(space, sig_labels))


def _resolve_trials(trials: Optional[int]) -> int:
    if trials is None:
        trials = int(ConfigManager().get("limits", "defect_trials", 5))
    if trials < 1:
        raise InputError(f"试验次数必须 >= 1: {trials}")
    return int(trials)


def regularity_defect_curve(G: Hypergraph, poll_sizes: Sequence[int], trials: Optional[int] = None,
                            seed: Optional[int] = None, samples: Optional[int] = None,
                            threads: Optional[int] = None) -> List[Dict[str, Any]]:
    """每个投票规模 s 的缺陷曲线

    第 t 次试验的投票顶点取自 stream(seed, PURPOSE_DEFECT, s, t)，
    所以结果只依赖 (G, s, t, seed)，与线程数无关。

    Args:
        G: 图 (d=2)
        poll_sizes: 投票规模列表，每个 >= 0
        trials: 每个规模的试验次数，None 时读取配置 limits.defect_trials
        seed: 种子
        samples: None 表示对 x1、x2 精确积分；否则每次试验抽样这么多三元组

    Returns:
        [{"poll_size", "defects", "mean"}]，顺序与 poll_sizes 一致

    Raises:
        InputError: d != 2、规模为负、试验次数或样本数非法、缺少种子
    """
    _require_graph(G)
    seed = require_seed(seed)
    trials = _resolve_trials(trials)
    if any(s < 0 for s in poll_sizes):
        raise InputError(f"投票规模不能为负: {list(poll_sizes)}")
    if samples is not None and samples < 1:
        raise InputError(f"样本数必须 >= 1: {samples}")

    def run(job: Tuple[int, int]) -> Fraction:
        s, t = job
        rng = stream(seed, PURPOSE_DEFECT, s, t)
        polls = iid_polls(G.n, s, rng)
        return trial_defect(G, polls, samples, rng)

    jobs = [(int(s), t) for s in poll_sizes for t in range(trials)]
    results = run_blocks(run, jobs, threads, label="投票缺陷曲线")

    curve = []
    for k, s in enumerate(poll_sizes):
        defects = results[k * trials:(k + 1) * trials]
        mean = sum(defects, Fraction(0)) / trials
        curve.append({"poll_size": int(s), "defects": defects, "mean": mean})
        logger.debug(f"投票规模 {s}: 平均缺陷 {float(mean):.6f}")
    return curve


def polled_graph_system(G: Hypergraph, s: int, seed: int) -> FactorSystem:
    """V³ 上由投票签名与边生成的因子系统，i_max = 基数不超过 2 的子集

    B_∅ 平凡；B_{i} 由 x_i 的签名生成；B_{ij} 由两端签名和 A(x_i, x_j) 生成。
    投票顶点有放回抽取自 stream(seed, PURPOSE_POLL, n, s)。

    Raises:
        InputError: d != 2、s < 0 或 n³ 超过上限
    """
    adj = _require_graph(G)
    n = G.n
    if s < 0:
        raise InputError(f"投票规模不能为负: {s}")
    if n ** 3 > POLLED_SPACE_LIMIT:
        raise InputError(f"V³ 有 {n ** 3} 个点，超过上限 {POLLED_SPACE_LIMIT}")
    seed = require_seed(seed)
    signatures = poll_signatures(adj, iid_polls(n, s, stream(seed, PURPOSE_POLL, n, s)))

    points = list(product(range(n), repeat=3))
    space = FiniteProbSpace.uniform(points)
    i_max = Downset.up_to(3, 2)
    factors = {0: Factor.trivial(space)}
    for i in range(3):
        factors[mask_of([i])] = Factor.from_labels(space, [signatures[x[i]] for x in points])
    for i, j in ((0, 1), (0, 2), (1, 2)):
        labels = [(signatures[x[i]], signatures[x[j]], bool(adj[x[i], x[j]])) for x in points]
        factors[mask_of([i, j])] = Factor.from_labels(space, labels)
    return FactorSystem(space, i_max, factors)
