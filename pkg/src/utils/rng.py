"""基于计数器的确定性随机数流

每个随机数流由 (seed, *keys) 唯一确定，底层使用 Philox 计数器型生成器。
蒙特卡洛任务按固定大小分块，第 b 块使用 stream(seed, purpose, b)，
因此结果与线程数无关。
"""
from typing import Optional

import numpy as np

from src.core.errors import InputError

# 随机数用途编号，保证不同用途的流互不相关
PURPOSE_HYPERGRAPH = 1
PURPOSE_EMBEDDING_MC = 2
PURPOSE_POLL = 3
PURPOSE_DEFECT = 4
PURPOSE_UIP = 5
PURPOSE_TEST_DATA = 6


def require_seed(seed: Optional[int]) -> int:
    """检查随机操作的种子参数

    Raises:
        InputError: 种子缺失或为负数
    """
    if seed is None:
        raise InputError("随机操作必须提供种子 (seed)")
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise InputError(f"种子必须是非负整数: {seed!r}")
    return int(seed)


def stream(seed: int, *keys: int) -> np.random.Generator:
    """返回由 (seed, *keys) 决定的独立随机数生成器

    Args:
        seed: 非负整数种子
        keys: 区分用途、分块编号等的非负整数

    Returns:
        np.random.Generator: Philox 生成器
    """
    seed = require_seed(seed)
    entropy = [seed] + [int(k) for k in keys]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))
