"""带证书的因子系统生成器：每个成员一个独立坐标，并植入零权重取值"""
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

from src.core.errors import InputError
from src.core.probspace.space import Event, Factor, FiniteProbSpace
from src.core.uip.downset import Downset, mask_of, submasks
from src.core.uip.system import FactorSystem
from src.utils.logger import get_logger
from src.utils.rng import PURPOSE_UIP, require_seed, stream

logger = get_logger()

# 生成的空间允许的最大点数
MAX_POINTS = 20000


def product_system(J: int, i_max: Downset, values: int = 2, seed: int = 0, zero_mass: int = 1,
                   filtered: bool = False) -> FactorSystem:
    """乘积空间上的因子系统

    每个非空成员 e 有一个独立坐标 c_e，取 values 个正权重值；zero_mass 个随机成员的坐标额外带一个零权重值。
    B_e 由 e 的全部子集的坐标生成，因此嵌套与独立性都精确成立。

    Args:
        J: 基集大小
        i_max: 下集
        values: 每个坐标的正权重取值个数
        seed: 种子
        zero_mass: 植入零权重取值的坐标个数
        filtered: 为最高层成员生成两层过滤，第一层把自身坐标粗化为 c_e // 2

    Raises:
        InputError: 参数越界或空间过大
    """
    seed = require_seed(seed)
    if i_max.J != J:
        raise InputError(f"下集的 J={i_max.J} 与参数 J={J} 不一致")
    if values < 1:
        raise InputError(f"坐标取值个数必须 >= 1: {values}")
    rng = stream(seed, PURPOSE_UIP, 1)
    members = i_max.sorted_members()
    nonempty = [e for e in members if e]
    if zero_mass < 0 or zero_mass > len(nonempty):
        raise InputError(f"zero_mass 必须在 0..{len(nonempty)} 之间: {zero_mass}")
    planted = set(rng.choice(nonempty, size=zero_mass, replace=False).tolist()) if zero_mass else set()

    coordinate_weights: Dict[int, List[Fraction]] = {}
    for e in members:
        count = values if e else 1
        raw = [int(x) for x in rng.integers(1, 5, size=count)]
        total = sum(raw)
        weights = [Fraction(r, total) for r in raw]
        if e in planted:
            weights.append(Fraction(0))
        coordinate_weights[e] = weights

    size = 1
    for w in coordinate_weights.values():
        size *= len(w)
    if size > MAX_POINTS:
        raise InputError(f"乘积空间有 {size} 个点，超过上限 {MAX_POINTS}")

    points: List[Tuple[int, ...]] = list(product(*(range(len(coordinate_weights[e])) for e in members)))
    point_weights = []
    for point in points:
        w = Fraction(1)
        for e, v in zip(members, point):
            w *= coordinate_weights[e][v]
        point_weights.append(w)
    space = FiniteProbSpace(points, point_weights)

    position = {e: k for k, e in enumerate(members)}
    factors: Dict[int, Factor] = {}
    for e in members:
        coords = [position[f] for f in submasks(e)]
        factors[e] = Factor(space, [tuple(p[c] for c in coords) for p in points], [f"B{e}"])

    filtrations: Dict[int, List[Factor]] = {}
    if filtered and i_max.height > 0:
        for e in i_max.top(i_max.height):
            coords = [position[f] for f in submasks(e) if f != e]
            own = position[e]
            coarse = Factor(space, [tuple(p[c] for c in coords) + (p[own] // 2,) for p in points])
            filtrations[e] = [coarse, factors[e]]
    logger.debug(f"生成乘积因子系统: J={J}, 成员 {len(members)} 个, 点数 {space.size}, 零权重坐标 {len(planted)} 个")
    return FactorSystem(space, i_max, factors, filtrations)


def random_null_events(system: FactorSystem, seed: int, keep: Fraction = Fraction(3, 4)) -> Dict[int, Event]:
    """随机取 E_e ∈ B_e（每个原子以概率 keep 保留），再按整原子删减直到 P(∧E_e) = 0"""
    seed = require_seed(seed)
    rng = stream(seed, PURPOSE_UIP, 2)
    space = system.space
    members = system.i_max.sorted_members()
    events: Dict[int, Event] = {}
    for e in members:
        B = system.factor(e)
        chosen = [a for a in range(B.atom_count) if rng.random() < float(keep)]
        events[e] = B.event_from_atoms(chosen)

    def positive_meet() -> List[int]:
        meet = space.omega
        for ev in events.values():
            meet = meet & ev
        return sorted(i for i in meet if space.weights[i] > 0)

    alive = positive_meet()
    while alive:
        point = alive[int(rng.integers(0, len(alive)))]
        e = members[int(rng.integers(0, len(members)))]
        B = system.factor(e)
        events[e] = events[e] - B.members()[B.atom_of(point)]
        alive = positive_meet()
    return events


def three_point_example() -> Tuple[FactorSystem, Dict[int, Event]]:
    """权重 (1/2, 1/2, 0) 的三点空间，J=2，i_max={∅,{0},{1}}

    B_{0} = {{a},{b,c}}，B_{1} = {{a,b},{c}}，E_{0} = {b,c}，E_{1} = {c}，E_∅ = Ω。
    """
    space = FiniteProbSpace(["a", "b", "c"], [Fraction(1, 2), Fraction(1, 2), Fraction(0)])
    i_max = Downset.from_sets(2, [[], [0], [1]])
    e0, e1 = mask_of([0]), mask_of([1])
    factors = {
        0: Factor.trivial(space),
        e0: Factor.from_partition(space, [[0], [1, 2]]),
        e1: Factor.from_partition(space, [[0, 1], [2]]),
    }
    events = {0: space.omega, e0: space.event(["b", "c"]), e1: space.event(["c"])}
    return FactorSystem(space, i_max, factors), events
