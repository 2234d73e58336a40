"""条件期望、范数与相对独立性的有限计算"""
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from src.core.errors import InputError, VerificationFailure
from src.core.probspace.space import (
    MODE_FLOAT,
    FLOAT_TOLERANCE,
    Event,
    Factor,
    FiniteProbSpace,
    Number,
    RandomVar,
    require_same_space,
)
from src.utils.logger import get_logger

logger = get_logger()

# (iv) 条件枚举 B1 全部事件时允许的最大原子数
EVENT_ENUMERATION_ATOMS = 12


def join(B1: Factor, B2: Factor) -> Factor:
    """B1 ∨ B2：原子为两者原子的非空交"""
    space = require_same_space(B1.space, B2.space)
    return Factor(space, list(zip(B1.atoms, B2.atoms)), B1.tags + B2.tags)


def join_all(space: FiniteProbSpace, factors: Iterable[Factor]) -> Factor:
    """多个因子的联合，空列表得到平凡因子"""
    result = Factor.trivial(space)
    for B in factors:
        result = B if result.atom_count == 1 else join(result, B)
    return result


def is_factor_of(B: Factor, B_prime: Factor) -> bool:
    """B ⊆ B'：B' 的每个原子都落在 B 的某个原子内"""
    require_same_space(B.space, B_prime.space)
    owner: Dict[int, int] = {}
    for a, a_prime in zip(B.atoms, B_prime.atoms):
        if owner.setdefault(a_prime, a) != a:
            return False
    return True


def is_measurable(event: Iterable[int], B: Factor) -> bool:
    """事件是否为 B 的若干原子之并"""
    event = frozenset(event)
    inside: Dict[int, bool] = {}
    for i, a in enumerate(B.atoms):
        if inside.setdefault(a, i in event) != (i in event):
            return False
    return True


def indicator(space: FiniteProbSpace, event: Iterable[int]) -> RandomVar:
    """示性函数 I(E)"""
    event = frozenset(event)
    return RandomVar(space, [1 if i in event else 0 for i in range(space.size)])


def prob(space: FiniteProbSpace, event: Iterable[int]) -> Number:
    return space.prob(event)


def expectation(f: RandomVar) -> Number:
    """E(f) = Σ w_i f_i"""
    space = f.space
    return sum((w * v for w, v in zip(space.weights, f.values)), space.zero)


def cond_expect(f: RandomVar, B: Factor) -> RandomVar:
    """条件期望 E(f|B)：在每个原子上取加权平均，零权重原子上取 0"""
    space = require_same_space(f.space, B.space)
    mass = [space.zero] * B.atom_count
    weight = [space.zero] * B.atom_count
    for i, a in enumerate(B.atoms):
        mass[a] += space.weights[i] * f.values[i]
        weight[a] += space.weights[i]
    means = [m / w if w != 0 else space.zero for m, w in zip(mass, weight)]
    return RandomVar(space, [means[a] for a in B.atoms])


def lp_norm(f: RandomVar, p: Union[int, str, float]) -> Number:
    """加权 L^p 范数

    Args:
        f: 随机变量
        p: 1、2 或 "inf"

    Returns:
        p=1 返回 E|f|；p=2 返回范数的平方 E(f²)；p=∞ 返回正权重点上 |f| 的最大值
    """
    space = f.space
    if p == 1:
        return sum((w * abs(v) for w, v in zip(space.weights, f.values)), space.zero)
    if p == 2:
        return sum((w * v * v for w, v in zip(space.weights, f.values)), space.zero)
    if p in ("inf", "∞") or p == float("inf"):
        return max((abs(f.values[i]) for i in space.positive_points()), default=space.zero)
    raise InputError(f"只支持 p ∈ {{1, 2, ∞}}，收到 {p!r}")


def energy(f: RandomVar, B: Factor) -> Number:
    """‖E(f|B)‖²_{L²}"""
    return lp_norm(cond_expect(f, B), 2)


def _scaled_weights(space: FiniteProbSpace) -> Tuple[List[Any], Any]:
    """rational 模式下把权重放大为公分母 D 上的整数"""
    if space.mode == MODE_FLOAT:
        return list(space.weights), 1.0
    D = 1
    for w in space.weights:
        D = lcm(D, w.denominator)
    return [w.numerator * (D // w.denominator) for w in space.weights], D


def _mass_tables(B1: Factor, B2: Factor, B: Factor, weights: Sequence[Any]):
    """按 B 的原子分组的联合质量、两个边缘质量以及原子质量"""
    blocks: Dict[int, Tuple[Dict, Dict, Dict]] = {}
    wb: Dict[int, Any] = {}
    for i, w in enumerate(weights):
        if w == 0:
            continue
        a1, a2, b = B1.atoms[i], B2.atoms[i], B.atoms[i]
        joint, m1, m2 = blocks.setdefault(b, ({}, {}, {}))
        joint[(a1, a2)] = joint.get((a1, a2), 0) + w
        m1[a1] = m1.get(a1, 0) + w
        m2[a2] = m2.get(a2, 0) + w
        wb[b] = wb.get(b, 0) + w
    return blocks, wb


def independence_defect(B1: Factor, B2: Factor, B: Factor, pairs: str = "max"
                        ) -> Union[Number, Tuple[Number, Optional[Tuple[int, int]]]]:
    """相对独立性缺陷

    对 B1 的原子 E1、B2 的原子 E2，计算
    ‖E(I(E1)I(E2)|B) − E(I(E1)|B)·E(I(E2)|B)‖_{L¹}，返回所有原子对上的最大值。
    在 B 的每个正权重原子 b 上，该积分等于 |P(E1∧E2∧b) − P(E1∧b)P(E2∧b)/P(b)|。

    Args:
        pairs: "max" 只返回最大值；"atoms" 同时返回取到最大值的原子对

    Returns:
        缺陷值，或 (缺陷值, (E1 原子号, E2 原子号))
    """
    space = require_same_space(B1.space, B2.space, B.space)
    if pairs not in ("max", "atoms"):
        raise InputError(f"未知的 pairs 选项: {pairs}")
    weights, D = _scaled_weights(space)
    blocks, wb = _mass_tables(B1, B2, B, weights)
    rational = space.mode != MODE_FLOAT

    # rational 模式：每项 |J·Wb − M1·M2| / (D·Wb)，统一到 L = lcm(Wb) 上做整数累加
    L = 1
    if rational:
        for w in wb.values():
            L = lcm(L, w)
    totals: Dict[Tuple[int, int], Any] = {}
    for b, (joint, m1, m2) in blocks.items():
        w = wb[b]
        scale = L // w if rational else 1.0 / w
        for a1, p1 in m1.items():
            for a2, p2 in m2.items():
                term = abs(joint.get((a1, a2), 0) * w - p1 * p2) * scale
                if term:
                    totals[(a1, a2)] = totals.get((a1, a2), 0) + term

    if totals:
        witness = min(totals, key=lambda k: (-totals[k], k))
        raw = totals[witness]
        best = Fraction(raw, D * L) if rational else raw / D
    else:
        witness, best = (0, 0), space.zero
    if pairs == "atoms":
        return best, witness
    return best


def _close(a: Number, b: Number, mode: str) -> bool:
    if mode == MODE_FLOAT:
        return abs(a - b) <= FLOAT_TOLERANCE
    return a == b


def best_regular_approx(space: FiniteProbSpace, event: Iterable[int], generators: Sequence[Iterable[int]],
                        eps: Any) -> Tuple[bool, Dict[str, Any]]:
    """用生成事件的布尔组合逼近 E（多数原则）

    取生成因子中条件密度 P(E|A) > 1/2 的原子之并 F。

    Returns:
        Tuple[bool, Dict]: (是否满足 P(EΔF) ≤ ε, {"event": F, "distance": P(EΔF)})
    """
    if not generators:
        raise InputError("生成事件列表不能为空")
    target = frozenset(event)
    B = Factor.from_events(space, list(generators))
    half = space.coerce(Fraction(1, 2))
    chosen = []
    for a, members in enumerate(B.members()):
        w = space.prob(members)
        if w == 0:
            continue
        if space.prob(members & target) / w > half:
            chosen.append(a)
    approx = B.event_from_atoms(chosen)
    distance = space.prob(target ^ approx)
    eps = space.coerce(eps)
    return distance <= eps, {"event": approx, "distance": distance}


def _b1_events(B1: Factor) -> List[Event]:
    members = B1.members()
    if B1.atom_count > EVENT_ENUMERATION_ATOMS:
        logger.debug(f"B1 原子数 {B1.atom_count} 过多，条件 (iv) 只检查单原子及其补集")
        omega = B1.space.omega
        return [m for m in members] + [omega - m for m in members]
    events = []
    for r in range(B1.atom_count + 1):
        for combo in combinations(range(B1.atom_count), r):
            events.append(frozenset().union(*(members[a] for a in combo)))
    return events


def equiv_independence_check(B1: Factor, B2: Factor, B: Factor) -> Dict[str, Any]:
    """分别计算相对独立性的几个等价刻画，并断言它们一致

    (i) 缺陷为 0；(ii) 对 B1 原子示性函数 E(f1|B∨B2) = E(f1|B)（几乎处处）；
    (iii) 对 B1 原子示性函数 ‖E(f1|B∨B2)‖² = ‖E(f1|B)‖²；(iv) 对 B1 的所有事件同 (iii)。

    Raises:
        VerificationFailure: 各条件的结论不一致
    """
    space = require_same_space(B1.space, B2.space, B.space)
    defect = independence_defect(B1, B2, B)
    big = join(B, B2)
    positive = space.positive_points()

    cond_i = _close(defect, space.zero, space.mode)
    cond_ii = True
    cond_iii = True
    for atom in B1.members():
        f1 = indicator(space, atom)
        fine = cond_expect(f1, big)
        coarse = cond_expect(f1, B)
        if not all(_close(fine.values[i], coarse.values[i], space.mode) for i in positive):
            cond_ii = False
        if not _close(lp_norm(fine, 2), lp_norm(coarse, 2), space.mode):
            cond_iii = False
    cond_iv = all(_close(energy(indicator(space, e), big), energy(indicator(space, e), B), space.mode)
                  for e in _b1_events(B1))

    verdicts = {"i": cond_i, "ii": cond_ii, "iii": cond_iii, "iv": cond_iv}
    if len(set(verdicts.values())) != 1:
        logger.error(f"相对独立性的等价条件不一致: {verdicts}, 缺陷={defect}")
        raise VerificationFailure(f"相对独立性的等价条件不一致: {verdicts}")
    return {"independent": cond_i, "defect": defect, "verdicts": verdicts}
