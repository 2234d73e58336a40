"""扩展引理的有限版本：弱混合替换、有限秩分解与过滤链取极限"""
from fractions import Fraction
from itertools import product
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.core.errors import InputError
from src.core.probspace.operations import is_measurable, join_all
from src.core.probspace.space import Event, Factor, FiniteProbSpace, require_same_space
from src.core.uip.downset import Downset, format_mask
from src.utils.logger import get_logger

logger = get_logger()


def atom_conditionals(event: Iterable[int], B: Factor) -> List[Tuple[Any, Any]]:
    """每个原子上的 (P(E ∧ atom), P(atom))"""
    space = B.space
    event = frozenset(event)
    inside = [space.zero] * B.atom_count
    total = [space.zero] * B.atom_count
    for i, a in enumerate(B.atoms):
        w = space.weights[i]
        total[a] += w
        if i in event:
            inside[a] += w
    return list(zip(inside, total))


def weak_mixing_step(E_prime: Iterable[int], B: Factor) -> Event:
    """P(E'|B) 的支撑：P(E'|atom) > 0 的正权重原子之并，满足 P(E'∖E) = 0"""
    chosen = [a for a, (inside, total) in enumerate(atom_conditionals(E_prime, B)) if total != 0 and inside != 0]
    return B.event_from_atoms(chosen)


def threshold_event(event: Iterable[int], B: Factor, threshold: Any) -> Event:
    """{P(E|B) > threshold}，只取正权重原子"""
    chosen = [a for a, (inside, total) in enumerate(atom_conditionals(event, B))
              if total != 0 and inside > threshold * total]
    return B.event_from_atoms(chosen)


def finite_rank_decompose(E: Iterable[int], B0: Factor, parts: Sequence[Factor]
                          ) -> List[Tuple[Event, ...]]:
    """把 B0 ∨ parts_1 ∨ … ∨ parts_l 可测的 E 写成 ∪_m (E_{0,m} ∧ E_{1,m} ∧ … ∧ E_{l,m})

    对 parts 原子的每个组合 (a_1, …, a_l)，记 C = ∩ a_j；E_{0,m} 取满足 A ∩ C ⊆ E 的 B0 原子之并（最大选择），
    E_{j,m} = a_j。E ∩ C 为空的组合被丢弃。

    Returns:
        项的列表，每项为 (E_{0,m}, E_{1,m}, …, E_{l,m})

    Raises:
        InputError: E 在联合因子中不可测
    """
    space = require_same_space(B0.space, *(p.space for p in parts))
    E = frozenset(E)
    if not is_measurable(E, join_all(space, [B0, *parts])):
        raise InputError("事件在 B0 与各部分因子的联合中不可测")
    part_members = [p.members() for p in parts]
    b0_members = B0.members()

    terms: List[Tuple[Event, ...]] = []
    for combo in product(*(range(p.atom_count) for p in parts)):
        cell = space.omega
        for members, a in zip(part_members, combo):
            cell = cell & members[a]
            if not cell:
                break
        if not cell or not (cell & E):
            continue
        E0 = frozenset().union(*(A for A in b0_members if (A & cell) <= E))
        terms.append((E0, *(members[a] for members, a in zip(part_members, combo))))
    return terms


def reassemble(terms: Sequence[Tuple[Event, ...]], space: FiniteProbSpace) -> Event:
    """∪_m ∧_j E_{j,m}"""
    result = frozenset()
    for term in terms:
        cell = space.omega
        for ev in term:
            cell = cell & ev
        result = result | cell
    return result


def chain_threshold(slot_count: int) -> Fraction:
    """|I| / (|I| + 1)"""
    return Fraction(slot_count, slot_count + 1)


def chain_limit_step(system, events: Mapping[int, Iterable[int]], level: int
                     ) -> Tuple[Dict[int, Event], Dict[str, Any]]:
    """用过滤的第 level 层替代最高层成员的因子，得到阈值事件 E_{α,e} = {P(E_e | B_{α}(⟨e⟩)) > |I|/(|I|+1)}

    Args:
        system: FactorSystem
        events: 成员 -> 事件 E_e
        level: 过滤层级 α（从 1 开始）

    Returns:
        (阈值事件, 报告)；报告含阈值、P(∧E_{α,e}) 以及交是否为零测

    Raises:
        InputError: 某个最高层成员缺少过滤，或事件的成员不属于 i_max
    """
    members = sorted(events)
    if not members:
        raise InputError("至少需要一个事件")
    for e in members:
        if e not in system.i_max:
            raise InputError(f"{format_mask(e)} 不是 i_max 的成员")
    top = max(bin(e).count("1") for e in members)
    missing = [format_mask(e) for e in members if bin(e).count("1") == top and e not in system.filtrations]
    if missing:
        raise InputError(f"以下成员缺少过滤: {', '.join(missing)}")

    space = system.space
    threshold = space.coerce(chain_threshold(len(members)))
    thresholded: Dict[int, Event] = {}
    for e in members:
        slot = system.slot_factor(Downset.principal(system.J, e), level)
        thresholded[e] = threshold_event(events[e], slot, threshold)

    meet = space.omega
    for ev in thresholded.values():
        meet = meet & ev
    p_meet = space.prob(meet)
    losses = {format_mask(e): space.prob(frozenset(events[e]) - thresholded[e]) for e in members}
    report = {
        "level": level,
        "threshold": threshold,
        "intersection_prob": p_meet,
        "null_intersection": p_meet == 0,
        "losses": losses,
    }
    if p_meet != 0:
        logger.warning(f"第 {level} 层阈值事件的交不是零测: P={p_meet}")
    return thresholded, report
