"""超图文本文件的读写

文件格式：第一条非注释行为 `d n`，之后每行一条边（d 个升序的 0 起始顶点编号，
以空格分隔）；`#` 之后的内容是注释。
"""
import os
from typing import List, Tuple

from src.core.errors import InputError
from src.core.hypergraph.hypergraph import Hypergraph, build
from src.utils.logger import get_logger

logger = get_logger()


def _content_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    return lines


def parse_hypergraph(text: str) -> Hypergraph:
    """从文本解析超图

    Raises:
        InputError: 头部缺失、数字格式错误或边不合法（position 为行号）
    """
    lines = _content_lines(text)
    if not lines:
        raise InputError("超图文件为空，缺少 `d n` 头部")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise InputError(f"头部应为 `d n`，实际为 {header!r}", lineno)
    try:
        d, n = int(parts[0]), int(parts[1])
    except ValueError as e:
        raise InputError(f"头部包含非整数: {header!r}", lineno) from e

    edges = []
    for lineno, line in lines[1:]:
        try:
            edge = tuple(int(tok) for tok in line.split())
        except ValueError as e:
            raise InputError(f"边包含非整数: {line!r}", lineno) from e
        if len(edge) != d:
            raise InputError(f"边 {line!r} 应包含 {d} 个顶点", lineno)
        if any(v < 0 or v >= n for v in edge) or len(set(edge)) != d:
            raise InputError(f"边 {line!r} 的顶点越界或重复", lineno)
        edges.append(edge)
    return build(n, d, edges)


def format_hypergraph(G: Hypergraph) -> str:
    """规范文本表示：头部加按字典序排列的边"""
    lines = [f"{G.d} {G.n}"]
    lines.extend(" ".join(str(v) for v in e) for e in G.sorted_edges())
    return "\n".join(lines) + "\n"


def read_hypergraph(path: str) -> Hypergraph:
    """读取超图文件"""
    if not os.path.exists(path):
        raise InputError(f"超图文件不存在: {path}")
    with open(path, 'r', encoding='utf-8') as f:
        G = parse_hypergraph(f.read())
    logger.debug(f"读取超图 {path}: d={G.d}, n={G.n}, 边数={G.num_edges}")
    return G


def write_hypergraph(G: Hypergraph, path: str) -> None:
    """写入超图文件（UTF-8，换行符为 \\n）"""
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(format_hypergraph(G))
