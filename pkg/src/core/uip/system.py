"""因子系统 (B_e)_{e ∈ i_max} 及其假设检查"""
from itertools import combinations
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from src.core.errors import InputError
from src.core.probspace.operations import independence_defect, is_factor_of, join_all
from src.core.probspace.space import MODE_FLOAT, FLOAT_TOLERANCE, Factor, FiniteProbSpace, require_same_space
from src.core.uip.downset import Downset, format_mask, submasks
from src.utils.config_manager import ConfigManager
from src.utils.logger import get_logger
from src.utils.rng import PURPOSE_UIP, stream

logger = get_logger()

# 枚举子理想时的数量上限
SUB_IDEAL_LIMIT = 4096


class FactorSystem:
    """i_max 上的一族因子，可选地为最高层成员提供递增过滤 B_{e,1} ⊆ … ⊆ B_{e,T} = B_e

    Args:
        space: 概率空间
        i_max: 下集
        factors: 成员位掩码 -> 因子
        filtrations: 成员位掩码 -> 递增的因子列表（可选）

    Raises:
        InputError: 缺少成员的因子、因子不在同一空间或过滤不是递增链
    """

    def __init__(self, space: FiniteProbSpace, i_max: Downset, factors: Mapping[int, Factor],
                 filtrations: Optional[Mapping[int, Sequence[Factor]]] = None):
        missing = [format_mask(e) for e in i_max.sorted_members() if e not in factors]
        if missing:
            raise InputError(f"以下成员缺少因子: {', '.join(missing)}")
        extra = [format_mask(e) for e in factors if e not in i_max]
        if extra:
            raise InputError(f"以下因子不属于 i_max: {', '.join(extra)}")
        require_same_space(space, *(B.space for B in factors.values()))
        self.space = space
        self.i_max = i_max
        self.factors: Dict[int, Factor] = dict(factors)
        self.filtrations: Dict[int, Tuple[Factor, ...]] = {}
        for e, chain in (filtrations or {}).items():
            self._add_filtration(e, chain)
        self._ideal_cache: Dict[frozenset, Factor] = {}
        self._slot_cache: Dict[Tuple[frozenset, Optional[int]], Factor] = {}

    def _add_filtration(self, e: int, chain: Sequence[Factor]) -> None:
        if e not in self.i_max:
            raise InputError(f"过滤所属的 {format_mask(e)} 不是 i_max 的成员")
        chain = tuple(chain)
        if not chain:
            raise InputError(f"{format_mask(e)} 的过滤为空")
        require_same_space(self.space, *(B.space for B in chain))
        for lo, hi in zip(chain, chain[1:]):
            if not is_factor_of(lo, hi):
                raise InputError(f"{format_mask(e)} 的过滤不是递增链")
        if chain[-1] != self.factors[e]:
            raise InputError(f"{format_mask(e)} 的过滤最后一层必须等于 B_e")
        self.filtrations[e] = chain

    @property
    def J(self) -> int:
        return self.i_max.J

    @property
    def max_level(self) -> int:
        """用户过滤的最大长度，没有过滤时为 1"""
        return max((len(c) for c in self.filtrations.values()), default=1)

    def factor(self, e: int) -> Factor:
        return self.factors[e]

    def level_factor(self, e: int, level: Optional[int]) -> Factor:
        """B_{e,n}；没有过滤、level 为 None 或超过链长时就是 B_e"""
        chain = self.filtrations.get(e)
        if level is None or chain is None:
            return self.factors[e]
        if level < 1:
            raise InputError(f"过滤层级从 1 开始: {level}")
        return chain[min(level, len(chain)) - 1]

    def ideal_factor(self, ideal: Downset) -> Factor:
        """B(i) = ∨_{e ∈ i} B_e，空理想为平凡因子"""
        key = ideal.members
        if key not in self._ideal_cache:
            self._ideal_cache[key] = join_all(self.space, (self.factors[e] for e in ideal.sorted_members()))
        return self._ideal_cache[key]

    def slot_factor(self, ideal: Downset, level: Optional[int] = None) -> Factor:
        """B_n(i) = ∨_{e ∈ i, |e| = h(i)} B_{e,n} ∨ B(ī)"""
        key = (ideal.members, level)
        if key not in self._slot_cache:
            if not ideal.members or level is None:
                result = self.ideal_factor(ideal)
            else:
                tops = [self.level_factor(e, level) for e in ideal.top(ideal.height)]
                result = join_all(self.space, [*tops, self.ideal_factor(ideal.bar())])
            self._slot_cache[key] = result
        return self._slot_cache[key]

    def sub_ideals(self, limit: int = SUB_IDEAL_LIMIT) -> List[Downset]:
        """i_max 的子理想（含空理想），逐层加入所有真子集都已在内的成员"""
        members = self.i_max.sorted_members()
        found = {frozenset()}
        frontier = [frozenset()]
        while frontier and len(found) < limit:
            nxt = []
            for ideal in frontier:
                for e in members:
                    if e in ideal:
                        continue
                    if all(s in ideal for s in submasks(e) if s != e):
                        grown = ideal | {e}
                        if grown not in found:
                            found.add(grown)
                            nxt.append(grown)
            frontier = nxt
        return sorted((Downset(self.J, m) for m in found), key=lambda i: (len(i), sorted(i.members)))


def _exceeds(value, tol, mode: str) -> bool:
    if mode == MODE_FLOAT:
        return value > tol + FLOAT_TOLERANCE
    return value > tol


def _check_nesting(system: FactorSystem) -> List[Dict[str, Any]]:
    failures = []
    members = system.i_max.sorted_members()
    for e in members:
        for f in members:
            if e != f and e & f == e and not is_factor_of(system.factors[e], system.factors[f]):
                failures.append({"e": format_mask(e), "e_prime": format_mask(f)})
    return failures


def _check_independence(system: FactorSystem, tuple_bound: int) -> Tuple[Any, Optional[Dict[str, Any]]]:
    space = system.space
    members = system.i_max.sorted_members()
    best, witness = space.zero, None
    for e in members:
        others = [f for f in members if f & e != e]
        for l in range(1, tuple_bound + 1):
            for tup in combinations(others, l):
                B_big = join_all(space, (system.factors[f] for f in tup))
                B_common = join_all(space, (system.factors[e & f] for f in tup))
                defect = independence_defect(system.factors[e], B_big, B_common)
                if witness is None or defect > best:
                    best = defect
                    witness = {"e": format_mask(e), "tuple": [format_mask(f) for f in tup]}
    return best, witness


def crop_pairs(system: FactorSystem) -> List[Tuple[Downset, Downset, int]]:
    """没有共同 d 阶成员的子理想对 (i, i', d)，d 为两者高度的最大值且 i 含 d 阶成员"""
    ideals = [i for i in system.sub_ideals() if i.members]
    pairs = []
    for i in ideals:
        for j in ideals:
            d = max(i.height, j.height)
            if i.height != d or i == j:
                continue
            if set(i.top(d)) & set(j.top(d)):
                continue
            pairs.append((i, j, d))
    return pairs


def _check_crop(system: FactorSystem, samples: int, seed: int) -> Tuple[Any, Optional[Dict[str, Any]], int]:
    space = system.space
    pairs = crop_pairs(system)
    if len(pairs) > samples:
        rng = stream(seed, PURPOSE_UIP, 0)
        picked = sorted(rng.choice(len(pairs), size=samples, replace=False).tolist())
        pairs = [pairs[k] for k in picked]
    best, witness = space.zero, None
    for i, j, d in pairs:
        defect = independence_defect(system.ideal_factor(i), system.ideal_factor(j),
                                     system.ideal_factor(i.lower_part(d)))
        if witness is None or defect > best:
            best, witness = defect, {"i": str(i), "i_prime": str(j), "d": d}
    return best, witness, len(pairs)


def check_hypotheses(system: FactorSystem, tol: Any = 0, tuple_bound: Optional[int] = None,
                     crop_samples: Optional[int] = None, seed: int = 0) -> Dict[str, Any]:
    """检查嵌套、独立性与子理想对的相对独立性

    Args:
        system: 因子系统
        tol: 独立性缺陷的容差，rational 模式下默认 0
        tuple_bound: (e; e_1..e_l) 中 l 的上限，None 时读取配置 uip.independence_tuple_bound
        crop_samples: 抽查的子理想对数，None 时读取配置 uip.crop_pair_samples
        seed: 抽查子理想对时使用的种子

    Returns:
        报告字典，失败时带有见证；不抛出异常
    """
    config = ConfigManager()
    if tuple_bound is None:
        tuple_bound = int(config.get("uip", "independence_tuple_bound", 2))
    if crop_samples is None:
        crop_samples = int(config.get("uip", "crop_pair_samples", 16))
    space = system.space
    tol = space.coerce(tol)

    nesting = _check_nesting(system)
    ind_defect, ind_witness = _check_independence(system, tuple_bound)
    crop_defect, crop_witness, checked = _check_crop(system, crop_samples, seed)

    report = {
        "nesting": {"ok": not nesting, "failures": nesting},
        "independence": {
            "ok": not _exceeds(ind_defect, tol, space.mode),
            "max_defect": ind_defect,
            "witness": ind_witness,
            "tuple_bound": tuple_bound,
        },
        "crop": {
            "ok": not _exceeds(crop_defect, tol, space.mode),
            "max_defect": crop_defect,
            "witness": crop_witness,
            "pairs_checked": checked,
        },
        "tolerance": tol,
    }
    report["ok"] = report["nesting"]["ok"] and report["independence"]["ok"] and report["crop"]["ok"]
    if report["ok"]:
        logger.debug(f"因子系统假设检查通过: 独立性缺陷={ind_defect}, 裁剪缺陷={crop_defect}")
    else:
        logger.warning(f"因子系统假设检查未通过: 嵌套失败 {len(nesting)} 处, "
                       f"独立性缺陷={ind_defect}, 裁剪缺陷={crop_defect}")
    return report
