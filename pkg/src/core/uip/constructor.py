"""一致交性质的构造器：按理想高度归纳，把零测的交替换为字面上为空的交"""
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.core.errors import InputError, PreconditionError, VerificationFailure
from src.core.probspace.operations import is_measurable
from src.core.probspace.space import MODE_FLOAT, FLOAT_TOLERANCE, Event
from src.core.uip.downset import Downset, format_mask
from src.core.uip.extensions import chain_threshold, finite_rank_decompose, threshold_event, weak_mixing_step
from src.core.uip.system import FactorSystem, check_hypotheses
from src.utils.config_manager import ConfigManager
from src.utils.logger import get_logger
from src.utils.rational import parse_rational

logger = get_logger()


@dataclass(frozen=True)
class Slot:
    """归纳中的一个位置：子理想及其过滤层级（None 表示使用完整的 B(i)）"""
    ideal: Downset
    level: Optional[int] = None

    def __str__(self) -> str:
        return f"{self.ideal}@{self.level}" if self.level is not None else str(self.ideal)


@dataclass
class UipProblem:
    """E_e ∈ B_e 且 P(∧E_e) = 0 的事件族与容差 ε

    Raises:
        InputError: 缺少事件、事件不可测或 ε 不为正
    """
    system: FactorSystem
    events: Dict[int, Event]
    eps: Any

    def __post_init__(self):
        space = self.system.space
        self.events = {e: frozenset(ev) for e, ev in self.events.items()}
        members = self.system.i_max.sorted_members()
        missing = [format_mask(e) for e in members if e not in self.events]
        if missing:
            raise InputError(f"以下成员缺少事件: {', '.join(missing)}")
        for e, ev in self.events.items():
            if e not in self.system.i_max:
                raise InputError(f"{format_mask(e)} 不是 i_max 的成员")
            if any(i < 0 or i >= space.size for i in ev):
                raise InputError(f"E_{format_mask(e)} 含有越界的点")
            if not is_measurable(ev, self.system.factor(e)):
                raise InputError(f"E_{format_mask(e)} 在 B_{format_mask(e)} 中不可测")
        if isinstance(self.eps, str):
            self.eps = parse_rational(self.eps)
        self.eps = space.coerce(self.eps)
        if self.eps < 0:
            raise InputError(f"ε 不能为负: {self.eps}")

    @property
    def members(self) -> List[int]:
        return self.system.i_max.sorted_members()

    def intersection(self) -> Event:
        meet = self.system.space.omega
        for ev in self.events.values():
            meet = meet & ev
        return meet


@dataclass
class UipSolution:
    """构造结果 F_e 以及独立校验得到的证书"""
    events: Dict[int, Event]
    certificate: Dict[str, Any]
    stats: Dict[str, int] = field(default_factory=dict)
    elapsed: float = 0.0


def merge_repeated(slots: Sequence[Slot], events: Sequence[Event]
                   ) -> Tuple[List[Slot], List[Event], List[List[int]]]:
    """合并重复的位置：同一位置上的事件取交

    Returns:
        (去重后的位置, 合并后的事件 M, 每个去重位置对应的原下标)
    """
    order: Dict[Slot, int] = {}
    groups: List[List[int]] = []
    merged: List[Event] = []
    for k, (slot, ev) in enumerate(zip(slots, events)):
        if slot in order:
            g = order[slot]
            groups[g].append(k)
            merged[g] = merged[g] & ev
        else:
            order[slot] = len(groups)
            groups.append([k])
            merged.append(ev)
    return list(order), merged, groups


class _Solver:
    def __init__(self, system: FactorSystem):
        self.system = system
        self.space = system.space
        self.stats = {"calls": 0, "merge": 0, "chain": 0, "finite_rank": 0, "weak_mixing": 0, "null_slot": 0}
        self._memo: Dict[Tuple, Tuple[Event, ...]] = {}

    def solve(self, slots: Sequence[Slot], events: Sequence[Event], eps) -> List[Event]:
        key = (tuple(slots), tuple(events), eps)
        if key not in self._memo:
            self.stats["calls"] += 1
            self._memo[key] = tuple(self._solve(list(slots), list(events), eps))
        return list(self._memo[key])

    def _solve(self, slots: List[Slot], events: List[Event], eps) -> List[Event]:
        space = self.space
        omega = space.omega
        meet = omega
        for ev in events:
            meet = meet & ev
        if not meet:
            return list(events)

        # 零测位置取 ∅，其余位置保留 E_i
        for k, ev in enumerate(events):
            if space.is_null(ev):
                self.stats["null_slot"] += 1
                return [frozenset() if j == k else e for j, e in enumerate(events)]

        keep = [k for k, ev in enumerate(events) if ev != omega]
        if not keep:
            # 只有在假设被破坏时才会出现；牺牲第一个位置以保证交为空
            return [frozenset()] + [omega] * (len(events) - 1)
        if len(keep) < len(events):
            sub = self.solve([slots[k] for k in keep], [events[k] for k in keep], eps)
            result = [omega] * len(events)
            for k, f in zip(keep, sub):
                result[k] = f
            return result

        unique, merged, groups = merge_repeated(slots, events)
        if len(unique) < len(slots):
            self.stats["merge"] += 1
            sub = self.solve(unique, merged, eps)
            result: List[Event] = [frozenset()] * len(slots)
            for g, members in enumerate(groups):
                for k in members:
                    result[k] = (events[k] - merged[g]) | sub[g]
            return result

        if len(slots) == 1:
            return [frozenset()]

        d = max(s.ideal.height for s in slots)
        if d < 0:
            return [frozenset()] + [omega] * (len(events) - 1)

        if self._chain_applies(slots, d):
            return self._chain(slots, events, eps, d)
        for k, slot in enumerate(slots):
            if slot.ideal.height == d and not slot.ideal.is_principal():
                return self._finite_rank(slots, events, eps, k, d)
        for k, slot in enumerate(slots):
            if slot.ideal.height == d:
                return self._weak_mixing(slots, events, eps, k)
        raise VerificationFailure(f"高度 {d} 处没有可处理的位置")

    def _chain_applies(self, slots: Sequence[Slot], d: int) -> bool:
        filtrations = self.system.filtrations
        for slot in slots:
            if slot.ideal.height != d or slot.level is not None:
                continue
            if any(len(filtrations.get(e, ())) > 1 for e in slot.ideal.top(d)):
                return True
        return False

    def _chain(self, slots: List[Slot], events: List[Event], eps, d: int) -> List[Event]:
        self.stats["chain"] += 1
        space = self.space
        threshold = space.coerce(chain_threshold(len(slots)))
        half = eps / 2
        top_levels = [len(self.system.filtrations.get(e, ())) for s in slots if s.ideal.height == d
                      for e in s.ideal.top(d)]
        T = max(top_levels)
        for n in range(1, T + 1):
            new_slots = [Slot(s.ideal, n) if s.ideal.height == d else s for s in slots]
            new_events = []
            for slot, old, ev in zip(new_slots, slots, events):
                if old.ideal.height == d:
                    ev = threshold_event(ev, self.system.slot_factor(slot.ideal, n), threshold)
                new_events.append(ev)
            close = all(space.prob(ev - new) <= half for ev, new in zip(events, new_events))
            meet = space.omega
            for ev in new_events:
                meet = meet & ev
            if close and space.is_null(meet):
                logger.debug(f"过滤链取第 {n} 层，阈值 {threshold}")
                return self.solve(new_slots, new_events, half)
        # 只有独立性假设不成立时才会走到这里：最后一层的因子就是 B(i)
        logger.debug("过滤链没有满足条件的层级，使用最后一层")
        return self.solve([Slot(s.ideal, T) if s.ideal.height == d else s for s in slots], events, eps)

    def _finite_rank(self, slots: List[Slot], events: List[Event], eps, k: int, d: int) -> List[Event]:
        self.stats["finite_rank"] += 1
        space = self.space
        slot = slots[k]
        tops = slot.ideal.top(d)
        bar = slot.ideal.bar()
        B0 = self.system.ideal_factor(bar)
        parts = [self.system.level_factor(e, slot.level) for e in tops]
        terms = finite_rank_decompose(events[k], B0, parts)

        others = [s for j, s in enumerate(slots) if j != k]
        other_events = [ev for j, ev in enumerate(events) if j != k]
        new_slots = others + [Slot(Downset.principal(self.system.J, e), slot.level) for e in tops] + [Slot(bar)]
        sub_eps = eps / (max(len(terms), 1) * (len(tops) + 1))

        F_star: Event = frozenset()
        F_others = [space.omega] * len(others)
        for E0, *parts_events in terms:
            sub = self.solve(new_slots, other_events + parts_events + [E0], sub_eps)
            F_others = [a & b for a, b in zip(F_others, sub[:len(others)])]
            cell = space.omega
            for f in sub[len(others):]:
                cell = cell & f
            F_star = F_star | cell
        result = list(F_others)
        result.insert(k, F_star)
        return result

    def _weak_mixing(self, slots: List[Slot], events: List[Event], eps, k: int) -> List[Event]:
        self.stats["weak_mixing"] += 1
        slot = slots[k]
        bar = slot.ideal.bar()
        support = weak_mixing_step(events[k], self.system.ideal_factor(bar))
        new_slots = list(slots)
        new_events = list(events)
        new_slots[k] = Slot(bar)
        new_events[k] = support
        return self.solve(new_slots, new_events, eps)


def construct_for_ideals(system: FactorSystem, slots: Sequence[Slot], events: Sequence[Iterable[int]],
                         eps: Any) -> Tuple[List[Event], Dict[str, int]]:
    """对任意有限个子理想（可重复）求 F_i ∈ B(i)，使 ∧F_i = ∅ 且 P(E_i∖F_i) ≤ ε

    输出总满足 F_i ⊆ E_i。某个 E_k 零测时取 F_k = ∅ 而其余 F_i = E_i；
    把其余位置放大为 Ω 同样合法，但这里不做放大，E_i = Ω 的位置自然得到 Ω。

    Returns:
        (F 列表, 各步骤的调用次数)

    Raises:
        InputError: 位置数与事件数不一致、理想不在 i_max 内或事件不可测
    """
    if len(slots) != len(events):
        raise InputError(f"位置数 {len(slots)} 与事件数 {len(events)} 不一致")
    events = [frozenset(ev) for ev in events]
    for slot, ev in zip(slots, events):
        if not slot.ideal.issubset(system.i_max):
            raise InputError(f"理想 {slot.ideal} 不是 i_max 的子理想")
        if not is_measurable(ev, system.slot_factor(slot.ideal, slot.level)):
            raise InputError(f"事件在位置 {slot} 的因子中不可测")
    solver = _Solver(system)
    eps = system.space.coerce(eps)
    result = solver.solve(slots, events, eps)
    # F_i ⊆ E_i
    return [f & ev for f, ev in zip(result, events)], solver.stats


def _le(a, b, mode: str) -> bool:
    if mode == MODE_FLOAT:
        return a <= b + FLOAT_TOLERANCE
    return a <= b


def validate_solution(problem: UipProblem, events: Mapping[int, Iterable[int]]) -> Dict[str, Any]:
    """独立校验：点集意义下 ∧F_e 为空、F_e ∈ B_e 以及精确的 P(E_e∖F_e)"""
    space = problem.system.space
    meet = space.omega
    losses: Dict[str, Any] = {}
    measurable = True
    within = True
    max_loss = space.zero
    for e in problem.members:
        F = frozenset(events.get(e, frozenset()))
        meet = meet & F
        if not is_measurable(F, problem.system.factor(e)):
            measurable = False
        loss = space.prob(problem.events[e] - F)
        losses[format_mask(e)] = loss
        max_loss = max(max_loss, loss)
        if not _le(loss, problem.eps, space.mode):
            within = False
    return {
        "empty": not meet,
        "measurable": measurable,
        "within_eps": within,
        "losses": losses,
        "max_loss": max_loss,
        "eps": problem.eps,
    }


def _best_effort_tolerance(tol: Any) -> Fraction:
    if tol is None:
        tol = ConfigManager().get("uip", "best_effort_tolerance", "1/10")
    return parse_rational(tol) if isinstance(tol, str) else tol


def uip_construct(problem: UipProblem, best_effort: bool = False, tol: Any = None,
                  check: bool = True) -> UipSolution:
    """构造 F_e ∈ B_e：∧F_e 在点集意义下为空且 P(E_e∖F_e) ≤ ε

    Args:
        problem: UIP 问题
        best_effort: 为 True 时允许独立性缺陷不超过 tol，ε 界可能退化并在证书中报告
        tol: best-effort 模式的容差，None 时读取配置 uip.best_effort_tolerance
        check: 是否先运行 check_hypotheses

    Raises:
        PreconditionError: P(∧E_e) ≠ 0 或假设检查超出容差
        VerificationFailure: 证书校验失败（交不为空、不可测，或严格模式下超出 ε）
    """
    start = time.perf_counter()
    system = problem.system
    space = system.space
    tolerance = space.coerce(_best_effort_tolerance(tol)) if best_effort else space.zero

    p_meet = space.prob(problem.intersection())
    if not _le(p_meet, tolerance, space.mode):
        raise PreconditionError(f"事件交的概率必须为 0，实际为 {p_meet}")

    hypotheses = None
    if check:
        hypotheses = check_hypotheses(system, tolerance)
        if not hypotheses["ok"]:
            raise PreconditionError(
                f"因子系统不满足假设: 嵌套失败 {len(hypotheses['nesting']['failures'])} 处, "
                f"独立性缺陷 {hypotheses['independence']['max_defect']}, 裁剪缺陷 {hypotheses['crop']['max_defect']}"
            )

    members = problem.members
    slots = [Slot(Downset.principal(system.J, e)) for e in members]
    F_list, stats = construct_for_ideals(system, slots, [problem.events[e] for e in members], problem.eps)
    F = dict(zip(members, F_list))

    certificate = validate_solution(problem, F)
    certificate["mode"] = "best-effort" if best_effort else "strict"
    if hypotheses is not None:
        certificate["hypotheses"] = {
            "independence_defect": hypotheses["independence"]["max_defect"],
            "crop_defect": hypotheses["crop"]["max_defect"],
        }
    if not certificate["empty"]:
        raise VerificationFailure("构造结果的交不是空集")
    if not certificate["measurable"]:
        raise VerificationFailure("构造结果存在不可测的事件")
    if not certificate["within_eps"]:
        if not best_effort:
            raise VerificationFailure(f"构造结果超出 ε: 最大损失 {certificate['max_loss']} > {problem.eps}")
        logger.warning(f"best-effort 模式: ε 界退化为 {certificate['max_loss']}")
    elapsed = time.perf_counter() - start
    logger.debug(f"UIP 构造完成: 步骤={stats}, 最大损失={certificate['max_loss']}, 用时 {elapsed:.3f}s")
    return UipSolution(F, certificate, stats, elapsed)
