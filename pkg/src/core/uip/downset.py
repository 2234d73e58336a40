"""J 的下集（理想）：对取子集封闭的子集族，成员以位掩码存储"""
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterable, List, Sequence

from src.core.errors import InputError

# 空下集的高度
EMPTY_HEIGHT = -1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for x in elements:
        mask |= 1 << int(x)
    return mask


def elements_of(mask: int) -> List[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def format_mask(mask: int) -> str:
    return "{" + ",".join(str(i) for i in elements_of(mask)) + "}"


def submasks(mask: int) -> List[int]:
    """mask 的全部子集（含空集与自身）"""
    subs = []
    sub = mask
    while True:
        subs.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return sorted(subs)


@dataclass(frozen=True)
class Downset:
    """J 上的下集

    Attributes:
        J: 基集大小，元素为 0..J-1
        members: 成员位掩码集合
    """
    J: int
    members: FrozenSet[int]

    def __post_init__(self):
        if self.J < 0:
            raise InputError(f"基集大小不能为负: {self.J}")
        limit = 1 << self.J
        for e in self.members:
            if e < 0 or e >= limit:
                raise InputError(f"成员 {e} 超出 J={self.J} 的范围")
            for sub in submasks(e):
                if sub not in self.members:
                    raise InputError(f"不是下集: {format_mask(e)} 的子集 {format_mask(sub)} 不在其中")

    @classmethod
    def closure(cls, J: int, generators: Iterable[int]) -> "Downset":
        """由若干集合生成的下集"""
        members = set()
        for g in generators:
            members.update(submasks(g))
        return cls(J, frozenset(members))

    @classmethod
    def from_sets(cls, J: int, sets: Iterable[Iterable[int]]) -> "Downset":
        return cls(J, frozenset(mask_of(s) for s in sets))

    @classmethod
    def principal(cls, J: int, e: int) -> "Downset":
        """主理想 ⟨e⟩ = e 的全部子集"""
        return cls(J, frozenset(submasks(e)))

    @classmethod
    def up_to(cls, J: int, h: int) -> "Downset":
        """全部基数不超过 h 的子集"""
        return cls(J, frozenset(mask_of(c) for r in range(min(h, J) + 1) for c in combinations(range(J), r)))

    @classmethod
    def empty(cls, J: int) -> "Downset":
        return cls(J, frozenset())

    @property
    def height(self) -> int:
        """最大成员基数；空下集返回 EMPTY_HEIGHT"""
        return max((popcount(e) for e in self.members), default=EMPTY_HEIGHT)

    def sorted_members(self) -> List[int]:
        return sorted(self.members, key=lambda e: (popcount(e), e))

    def top(self, d: int) -> List[int]:
        """基数恰为 d 的成员"""
        return sorted(e for e in self.members if popcount(e) == d)

    def lower_part(self, d: int) -> "Downset":
        """{e ∈ i : |e| < d}"""
        return Downset(self.J, frozenset(e for e in self.members if popcount(e) < d))

    def bar(self) -> "Downset":
        """去掉最高层成员的下集 ī = lower_part(h(i))"""
        return self.lower_part(self.height)

    def maximal(self) -> List[int]:
        return sorted(e for e in self.members if not any(e != f and e & f == e for f in self.members))

    def is_principal(self) -> bool:
        return len(self.maximal()) == 1

    def union(self, other: "Downset") -> "Downset":
        return Downset(self.J, self.members | other.members)

    def issubset(self, other: "Downset") -> bool:
        return self.members <= other.members

    def __contains__(self, e: int) -> bool:
        return e in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return "{" + ", ".join(format_mask(e) for e in self.sorted_members()) + "}"


def downset_ops(i: Downset) -> Dict[str, Any]:
    """高度、极大元、是否为主理想以及 ī"""
    return {
        "height": i.height,
        "maximal": i.maximal(),
        "principal": i.is_principal(),
        "lower_part": i.bar() if i.members else i,
    }


def principal(J: int, e: int) -> Downset:
    return Downset.principal(J, e)


def lower_part(i: Downset, d: int) -> Downset:
    return i.lower_part(d)


def height(i: Downset) -> int:
    return i.height


def parse_members(J: int, data: Sequence[Any]) -> Downset:
    """从 JSON 读取：成员可以是位掩码整数或元素列表"""
    masks = []
    for item in data:
        if isinstance(item, int) and not isinstance(item, bool):
            masks.append(item)
        elif isinstance(item, list):
            masks.append(mask_of(item))
        else:
            raise InputError(f"无法识别的下集成员: {item!r}")
    return Downset(J, frozenset(masks))
