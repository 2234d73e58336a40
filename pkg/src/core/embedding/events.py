"""正则事件：采样下标上生成事件 A_e 的有限布尔组合

小语言（下标从 1 开始）:

    expr    := and ( '|' and )*
    and     := unary ( '&' unary )*
    unary   := '!' unary | atom
    atom    := 'A' '(' INT ( ',' INT )* ')'     图 / 超图叶子 A_e
             | 'A' '[' ['-'] INT ']'           Furstenberg 叶子 A_n
             | '(' expr ')'

叶子的下标集合按升序规范化，因此 A(2,1) 与 A(1,2) 在结构上相同。
"""
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from src.core.errors import InputError

KIND_GRAPH = "graph"
KIND_FURSTENBERG = "furstenberg"


@dataclass(frozen=True)
class Leaf:
    """A_e：采样顶点 {x_i : i ∈ e} 构成一条边"""
    indices: Tuple[int, ...]


@dataclass(frozen=True)
class ShiftLeaf:
    """A_n：x + nλ ∈ A"""
    offset: int


@dataclass(frozen=True)
class Not:
    child: "Node"


@dataclass(frozen=True)
class And:
    children: Tuple["Node", ...]


@dataclass(frozen=True)
class Or:
    children: Tuple["Node", ...]


Node = Union[Leaf, ShiftLeaf, Not, And, Or]


def _leaves(node: Node) -> Iterator[Union[Leaf, ShiftLeaf]]:
    if isinstance(node, (Leaf, ShiftLeaf)):
        yield node
    elif isinstance(node, Not):
        yield from _leaves(node.child)
    else:
        for child in node.children:
            yield from _leaves(child)


def make_leaf(indices: Sequence[int]) -> Leaf:
    idx = tuple(sorted(int(i) for i in indices))
    if not idx:
        raise InputError("叶子至少需要一个下标")
    if idx[0] < 1:
        raise InputError(f"下标从 1 开始: {idx}")
    if len(set(idx)) != len(idx):
        raise InputError(f"叶子下标重复: {idx}")
    return Leaf(idx)


def make_and(children: Sequence[Node]) -> Node:
    flat: List[Node] = []
    for child in children:
        flat.extend(child.children if isinstance(child, And) else [child])
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def make_or(children: Sequence[Node]) -> Node:
    flat: List[Node] = []
    for child in children:
        flat.extend(child.children if isinstance(child, Or) else [child])
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


@dataclass(frozen=True)
class RegularEvent:
    """正则代数中的一个事件

    Attributes:
        formula: 布尔表达式树
        kind: "graph"（A_e 叶子）或 "furstenberg"（A_n 叶子）
    """
    formula: Node

    def __post_init__(self):
        leaves = list(_leaves(self.formula))
        if not leaves:
            raise InputError("事件至少需要一个叶子")
        kinds = {type(leaf) for leaf in leaves}
        if len(kinds) != 1:
            raise InputError("同一个事件不能混用 A(...) 与 A[...] 叶子")
        if isinstance(leaves[0], Leaf):
            arities = {len(leaf.indices) for leaf in leaves}
            if len(arities) != 1:
                raise InputError(f"叶子的元数不一致: {sorted(arities)}")

    @property
    def kind(self) -> str:
        return KIND_GRAPH if isinstance(next(_leaves(self.formula)), Leaf) else KIND_FURSTENBERG

    def leaves(self) -> List[Union[Leaf, ShiftLeaf]]:
        return list(_leaves(self.formula))

    @property
    def leaf_arity(self) -> int:
        """图事件叶子的元数 d；Furstenberg 事件为 1"""
        first = next(_leaves(self.formula))
        return len(first.indices) if isinstance(first, Leaf) else 1

    @property
    def arity(self) -> int:
        """用到的最大采样下标 K（Furstenberg 事件为 0）"""
        if self.kind != KIND_GRAPH:
            return 0
        return max(max(leaf.indices) for leaf in _leaves(self.formula))

    def used_indices(self) -> List[int]:
        if self.kind != KIND_GRAPH:
            return []
        return sorted({i for leaf in _leaves(self.formula) for i in leaf.indices})

    def offsets(self) -> List[int]:
        if self.kind != KIND_FURSTENBERG:
            return []
        return sorted({leaf.offset for leaf in _leaves(self.formula)})

    def __str__(self) -> str:
        return format_event(self)


@dataclass(frozen=True)
class IndexPermutation:
    """有限支撑的下标置换 σ，支撑之外为恒等"""
    mapping: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        domain = [i for i, _ in self.mapping]
        image = [j for _, j in self.mapping]
        if len(set(domain)) != len(domain) or set(domain) != set(image):
            raise InputError(f"不是支撑上的双射: {dict(self.mapping)}")
        if any(i < 1 for i in domain):
            raise InputError("置换的下标从 1 开始")

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "IndexPermutation":
        return cls(tuple(sorted((int(i), int(j)) for i, j in mapping.items() if i != j)))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "IndexPermutation":
        """单行记号：images[k] 是 σ(k+1)"""
        return cls.from_mapping({k + 1: int(v) for k, v in enumerate(images)})

    @classmethod
    def swap(cls, i: int, j: int) -> "IndexPermutation":
        return cls.from_mapping({i: j, j: i})

    @classmethod
    def identity(cls) -> "IndexPermutation":
        return cls(())

    def __call__(self, i: int) -> int:
        return dict(self.mapping).get(i, i)


def _map_leaves(node: Node, fn: Callable[[Union[Leaf, ShiftLeaf]], Node]) -> Node:
    if isinstance(node, (Leaf, ShiftLeaf)):
        return fn(node)
    if isinstance(node, Not):
        return Not(_map_leaves(node.child, fn))
    mapped = [_map_leaves(child, fn) for child in node.children]
    return make_and(mapped) if isinstance(node, And) else make_or(mapped)


def permute_event(E: RegularEvent, sigma: IndexPermutation) -> RegularEvent:
    """A_e ↦ A_{σ(e)}，叶子重新排序"""
    if E.kind != KIND_GRAPH:
        raise InputError("permute_event 只适用于图事件")
    table = dict(sigma.mapping)
    return RegularEvent(_map_leaves(E.formula, lambda leaf: make_leaf([table.get(i, i) for i in leaf.indices])))


def shift_event(E: RegularEvent, n: int) -> RegularEvent:
    """T^n：每个叶子 A_k 变为 A_{k+n}"""
    if E.kind != KIND_FURSTENBERG:
        raise InputError("shift_event 只适用于 A[n] 形式的事件")
    return RegularEvent(_map_leaves(E.formula, lambda leaf: ShiftLeaf(leaf.offset + int(n))))


def ap_event(k: int, n: int) -> RegularEvent:
    """A_0 ∧ A_n ∧ … ∧ A_{(k−1)n}"""
    if k < 1:
        raise InputError(f"等差数列长度 k 必须 >= 1: {k}")
    return RegularEvent(make_and([ShiftLeaf(j * n) for j in range(k)]))


def _format_node(node: Node, parent: Optional[type] = None) -> str:
    if isinstance(node, Leaf):
        return "A(" + ",".join(str(i) for i in node.indices) + ")"
    if isinstance(node, ShiftLeaf):
        return f"A[{node.offset}]"
    if isinstance(node, Not):
        return "!" + _format_node(node.child, Not)
    sep = "&" if isinstance(node, And) else "|"
    text = sep.join(_format_node(child, type(node)) for child in node.children)
    # Or 在 And/Not 之内、And 在 Not 之内需要括号
    if parent is Not or (isinstance(node, Or) and parent is And):
        return f"({text})"
    return text


def format_event(E: RegularEvent) -> str:
    """规范的小语言字符串"""
    return _format_node(E.formula)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, ch: str):
        if self._peek() != ch:
            found = self._peek() or "输入结束"
            raise InputError(f"期望 '{ch}'，实际为 '{found}'", self.pos)
        self.pos += 1

    def _int(self, allow_negative: bool = False) -> int:
        self._skip()
        start = self.pos
        if allow_negative and self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise InputError("期望整数", start)
        return int(self.text[start:self.pos])

    def parse(self) -> Node:
        node = self.expr()
        if self._peek():
            raise InputError(f"多余的字符 '{self._peek()}'", self.pos)
        return node

    def expr(self) -> Node:
        parts = [self.conj()]
        while self._peek() == "|":
            self.pos += 1
            parts.append(self.conj())
        return make_or(parts)

    def conj(self) -> Node:
        parts = [self.unary()]
        while self._peek() == "&":
            self.pos += 1
            parts.append(self.unary())
        return make_and(parts)

    def unary(self) -> Node:
        if self._peek() == "!":
            self.pos += 1
            return Not(self.unary())
        return self.atom()

    def atom(self) -> Node:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self._expect(")")
            return node
        if ch != "A":
            raise InputError(f"期望 'A'、'(' 或 '!'，实际为 '{ch or '输入结束'}'", self.pos)
        self.pos += 1
        bracket = self._peek()
        if bracket == "[":
            self.pos += 1
            offset = self._int(allow_negative=True)
            self._expect("]")
            return ShiftLeaf(offset)
        if bracket == "(":
            self.pos += 1
            start = self.pos
            indices = [self._int()]
            while self._peek() == ",":
                self.pos += 1
                indices.append(self._int())
            self._expect(")")
            try:
                return make_leaf(indices)
            except InputError as e:
                raise InputError(str(e), start) from e
        raise InputError("'A' 之后期望 '(' 或 '['", self.pos)


def parse_event(text: str) -> RegularEvent:
    """解析事件字符串

    Raises:
        InputError: 语法错误，position 为出错字符的 0 起始位置
    """
    node = _Parser(text).parse()
    return RegularEvent(node)


def evaluate(node: Node, leaf_values: Callable[[Union[Leaf, ShiftLeaf]], np.ndarray]) -> np.ndarray:
    """在一批样本上向量化地求布尔公式的值

    Args:
        node: 表达式树
        leaf_values: 叶子 -> 布尔数组（每个样本一个值）
    """
    cache: Dict[Union[Leaf, ShiftLeaf], np.ndarray] = {}

    def walk(n: Node) -> np.ndarray:
        if isinstance(n, (Leaf, ShiftLeaf)):
            if n not in cache:
                cache[n] = np.asarray(leaf_values(n), dtype=bool)
            return cache[n]
        if isinstance(n, Not):
            return ~walk(n.child)
        values = [walk(child) for child in n.children]
        if isinstance(n, And):
            return np.logical_and.reduce(values)
        return np.logical_or.reduce(values)

    return walk(node)
