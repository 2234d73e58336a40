from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, List, Optional, Sequence, TypeVar

from src.utils.logger import get_logger
from src.utils.progress_manager import get_progress_manager

logger = get_logger()

T = TypeVar("T")
R = TypeVar("R")

_default_threads = 1


def set_default_threads(threads: int) -> None:
    """设置库内部并行计算的默认线程数（CLI 的 --threads 会调用）"""
    global _default_threads
    _default_threads = max(1, int(threads))


def get_default_threads() -> int:
    return _default_threads


def run_blocks(fn: Callable[[T], R], blocks: Sequence[T], threads: Optional[int] = None,
               label: str = "") -> List[R]:
    """在线程池中并行执行分块任务，并按分块顺序返回结果

    分块的划分与线程数无关，归约只做整数或有理数加法，
    因此无论使用多少线程，结果都完全一致。

    Args:
        fn: 处理单个分块的函数
        blocks: 分块列表
        threads: 线程数，None 表示使用默认线程数
        label: 日志中显示的任务名称

    Returns:
        List[R]: 与 blocks 一一对应的结果列表
    """
    threads = _default_threads if threads is None else max(1, int(threads))
    progress = get_progress_manager()
    progress.start(len(blocks))

    if threads == 1 or len(blocks) <= 1:
        results = []
        for block in blocks:
            results.append(fn(block))
            progress.increment()
        return results

    results: List[Optional[R]] = [None] * len(blocks)
    with ThreadPoolExecutor(max_workers=threads) as executor:
        futures = {executor.submit(fn, block): idx for idx, block in enumerate(blocks)}
        for future in as_completed(futures):
            idx = futures[future]
            try:
                results[idx] = future.result()
            except Exception as e:
                logger.error(f"并行任务[{label or fn.__name__}]第 {idx} 块执行失败: {str(e)}")
                raise
            progress.increment()

    logger.debug(f"并行任务[{label or fn.__name__}]完成: {len(blocks)} 块, {threads} 线程")
    return results
