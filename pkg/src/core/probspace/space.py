"""有限概率空间、因子（划分）与随机变量

事件统一表示为点下标的 frozenset。数值模式是空间级别的属性：
rational（默认，Fraction 精确运算）或 float；不同模式混用视为输入错误。
"""
from fractions import Fraction
from numbers import Rational
from typing import Any, Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

from src.core.errors import InputError

Number = Union[Fraction, float]
Event = FrozenSet[int]

MODE_RATIONAL = "rational"
MODE_FLOAT = "float"

# float 模式下的比较容差
FLOAT_TOLERANCE = 1e-9


def _coerce(value: Any, mode: str) -> Number:
    if isinstance(value, bool):
        value = int(value)
    if mode == MODE_RATIONAL:
        if isinstance(value, float):
            raise InputError(f"rational 模式的空间不接受浮点数: {value!r}")
        if not isinstance(value, Rational):
            raise InputError(f"无法识别的数值: {value!r}")
        return Fraction(value)
    try:
        return float(value)
    except (TypeError, ValueError) as e:
        raise InputError(f"无法识别的数值: {value!r}") from e


class FiniteProbSpace:
    """有限带权样本空间 (Ω, P)

    Args:
        points: 样本点标识（任意可哈希对象）
        weights: 每个点的非负权重，总和必须为 1（允许 0 权重点）
        mode: "rational" 或 "float"
    """

    def __init__(self, points: Sequence[Hashable], weights: Sequence[Any], mode: str = MODE_RATIONAL):
        if mode not in (MODE_RATIONAL, MODE_FLOAT):
            raise InputError(f"未知的数值模式: {mode}")
        if len(points) != len(weights):
            raise InputError(f"点数 {len(points)} 与权重数 {len(weights)} 不一致")
        if not points:
            raise InputError("样本空间不能为空")
        self.mode = mode
        self.points: Tuple[Hashable, ...] = tuple(points)
        self.weights: Tuple[Number, ...] = tuple(_coerce(w, mode) for w in weights)
        if any(w < 0 for w in self.weights):
            raise InputError("权重不能为负")
        total = sum(self.weights, self.zero)
        if mode == MODE_RATIONAL and total != 1:
            raise InputError(f"权重之和必须精确为 1，实际为 {total}")
        if mode == MODE_FLOAT and abs(total - 1.0) > FLOAT_TOLERANCE:
            raise InputError(f"权重之和必须为 1，实际为 {total}")
        self._index = {p: i for i, p in enumerate(self.points)}
        if len(self._index) != len(self.points):
            raise InputError("样本点标识重复")

    @classmethod
    def uniform(cls, points: Sequence[Hashable], mode: str = MODE_RATIONAL) -> "FiniteProbSpace":
        n = len(points)
        weight = Fraction(1, n) if mode == MODE_RATIONAL else 1.0 / n
        return cls(points, [weight] * n, mode)

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def zero(self) -> Number:
        return Fraction(0) if self.mode == MODE_RATIONAL else 0.0

    @property
    def one(self) -> Number:
        return Fraction(1) if self.mode == MODE_RATIONAL else 1.0

    @property
    def omega(self) -> Event:
        return frozenset(range(self.size))

    def coerce(self, value: Any) -> Number:
        return _coerce(value, self.mode)

    def index_of(self, point: Hashable) -> int:
        try:
            return self._index[point]
        except KeyError as e:
            raise InputError(f"样本点不存在: {point!r}") from e

    def event(self, points: Iterable[Hashable]) -> Event:
        """由样本点标识构造事件"""
        return frozenset(self.index_of(p) for p in points)

    def event_where(self, predicate: Callable[[Hashable], bool]) -> Event:
        return frozenset(i for i, p in enumerate(self.points) if predicate(p))

    def prob(self, event: Iterable[int]) -> Number:
        """P(E)"""
        return sum((self.weights[i] for i in event), self.zero)

    def is_null(self, event: Iterable[int]) -> bool:
        return self.prob(event) == 0

    def positive_points(self) -> List[int]:
        return [i for i, w in enumerate(self.weights) if w > 0]

    def same_as(self, other: "FiniteProbSpace") -> bool:
        return self is other or (self.points == other.points and self.weights == other.weights
                                 and self.mode == other.mode)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteProbSpace) and self.same_as(other)

    def __hash__(self) -> int:
        return hash((self.points, self.weights, self.mode))

    def __repr__(self) -> str:
        return f"FiniteProbSpace(size={self.size}, mode={self.mode})"


def require_same_space(*spaces: FiniteProbSpace) -> FiniteProbSpace:
    """检查若干对象位于同一空间上"""
    first = spaces[0]
    for other in spaces[1:]:
        if not first.same_as(other):
            if first.mode != other.mode:
                raise InputError(f"数值模式不一致: {first.mode} 与 {other.mode}")
            raise InputError("对象不在同一个概率空间上")
    return first


def _canonical_labels(labels: Sequence[Hashable]) -> Tuple[int, ...]:
    mapping: Dict[Hashable, int] = {}
    atoms = []
    for label in labels:
        if label not in mapping:
            mapping[label] = len(mapping)
        atoms.append(mapping[label])
    return tuple(atoms)


class Factor:
    """因子：样本空间的一个划分，原子编号按首次出现的顺序从 0 连续编号

    Args:
        space: 所在的概率空间
        atoms: 每个点所属原子的标签，会被规范化
        tags: 生成事件的标签（可选）
    """

    def __init__(self, space: FiniteProbSpace, atoms: Sequence[Hashable], tags: Optional[Sequence[str]] = None):
        if len(atoms) != space.size:
            raise InputError(f"原子数组长度 {len(atoms)} 与空间大小 {space.size} 不一致")
        self.space = space
        self.atoms: Tuple[int, ...] = _canonical_labels(atoms)
        self.tags: Tuple[str, ...] = tuple(tags or ())
        self._members: Optional[List[Event]] = None

    @classmethod
    def trivial(cls, space: FiniteProbSpace) -> "Factor":
        return cls(space, [0] * space.size, ["Ω"])

    @classmethod
    def discrete(cls, space: FiniteProbSpace) -> "Factor":
        return cls(space, list(range(space.size)))

    @classmethod
    def from_labels(cls, space: FiniteProbSpace, labels: Sequence[Hashable],
                    tags: Optional[Sequence[str]] = None) -> "Factor":
        return cls(space, labels, tags)

    @classmethod
    def from_events(cls, space: FiniteProbSpace, events: Sequence[Iterable[int]],
                    tags: Optional[Sequence[str]] = None) -> "Factor":
        """由有限个事件生成的因子：原子是各事件成员关系相同的点"""
        sets = [frozenset(e) for e in events]
        signature = [tuple(i in s for s in sets) for i in range(space.size)]
        return cls(space, signature, tags)

    @classmethod
    def from_partition(cls, space: FiniteProbSpace, blocks: Sequence[Iterable[int]]) -> "Factor":
        """由显式的块列表构造，块必须不交且覆盖整个空间"""
        labels: List[Optional[int]] = [None] * space.size
        for b, block in enumerate(blocks):
            for i in block:
                if labels[i] is not None:
                    raise InputError(f"点 {i} 属于多个块")
                labels[i] = b
        if any(label is None for label in labels):
            raise InputError("划分没有覆盖所有点")
        return cls(space, labels)

    @property
    def atom_count(self) -> int:
        return max(self.atoms) + 1

    def members(self) -> List[Event]:
        """按原子编号排列的原子点集"""
        if self._members is None:
            groups: List[List[int]] = [[] for _ in range(self.atom_count)]
            for i, a in enumerate(self.atoms):
                groups[a].append(i)
            self._members = [frozenset(g) for g in groups]
        return self._members

    def atom_of(self, point_index: int) -> int:
        return self.atoms[point_index]

    def atom_weights(self) -> List[Number]:
        weights = [self.space.zero] * self.atom_count
        for i, a in enumerate(self.atoms):
            weights[a] += self.space.weights[i]
        return weights

    def event_from_atoms(self, atom_ids: Iterable[int]) -> Event:
        chosen = set(atom_ids)
        return frozenset(i for i, a in enumerate(self.atoms) if a in chosen)

    def with_tags(self, tags: Sequence[str]) -> "Factor":
        return Factor(self.space, self.atoms, tags)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Factor) and self.space.same_as(other.space) and self.atoms == other.atoms

    def __hash__(self) -> int:
        return hash(self.atoms)

    def __repr__(self) -> str:
        return f"Factor(atoms={self.atom_count}, tags={list(self.tags)})"


class RandomVar:
    """随机变量 f: Ω → R，每个点一个值"""

    def __init__(self, space: FiniteProbSpace, values: Sequence[Any]):
        if len(values) != space.size:
            raise InputError(f"取值个数 {len(values)} 与空间大小 {space.size} 不一致")
        self.space = space
        self.values: Tuple[Number, ...] = tuple(space.coerce(v) for v in values)

    @classmethod
    def constant(cls, space: FiniteProbSpace, c: Any) -> "RandomVar":
        return cls(space, [c] * space.size)

    def _binary(self, other: Any, op: Callable[[Number, Number], Number]) -> "RandomVar":
        if isinstance(other, RandomVar):
            require_same_space(self.space, other.space)
            return RandomVar(self.space, [op(a, b) for a, b in zip(self.values, other.values)])
        c = self.space.coerce(other)
        return RandomVar(self.space, [op(a, c) for a in self.values])

    def __add__(self, other: Any) -> "RandomVar":
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other: Any) -> "RandomVar":
        return self._binary(other, lambda a, b: a - b)

    def __mul__(self, other: Any) -> "RandomVar":
        return self._binary(other, lambda a, b: a * b)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self) -> "RandomVar":
        return RandomVar(self.space, [-a for a in self.values])

    def __abs__(self) -> "RandomVar":
        return RandomVar(self.space, [abs(a) for a in self.values])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RandomVar) and self.space.same_as(other.space) and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"RandomVar({list(self.values)})"
