import threading
from typing import Callable, List, Tuple

ProgressListener = Callable[[int, int], None]


# 单例模式的进度管理器
class ProgressManager:
    _instance = None
    _initialized = False
    _lock = threading.RLock()  # 线程锁确保并发安全

    @classmethod
    def instance(cls):
        """获取ProgressManager单例实例"""
        with cls._lock:
            if cls._instance is None:
                cls._instance = cls()
            return cls._instance

    def __init__(self):
        """初始化进度管理器，只在第一次调用时执行"""
        if ProgressManager._initialized:
            return

        self._listeners: List[ProgressListener] = []
        self._current = 0
        self._total = 0
        self._active = False  # 是否有活动的任务
        ProgressManager._initialized = True

    def add_listener(self, listener: ProgressListener) -> None:
        """注册进度监听器，监听器接收 (current, total)"""
        with self._lock:
            self._listeners.append(listener)

    def remove_listener(self, listener: ProgressListener) -> bool:
        with self._lock:
            try:
                self._listeners.remove(listener)
                return True
            except ValueError:
                return False

    def _emit(self):
        for listener in list(self._listeners):
            try:
                listener(self._current, self._total)
            except Exception:
                # 进度回调失败不能影响计算
                pass

    def start(self, total: int) -> bool:
        """开始一个新任务并设置总数
        Args:
            total: 任务总数量
        Returns:
            bool: 是否成功开始
        """
        with self._lock:
            if not isinstance(total, int) or total <= 0:
                return False

            self._current = 0
            self._total = total
            self._active = True
            self._emit()
            return True

    def increment(self, amount: int = 1) -> bool:
        """增加当前进度计数
        Args:
            amount: 增加的数量，默认为1
        Returns:
            bool: 是否成功更新
        """
        with self._lock:
            if not self._active:
                return False

            self._current = min(self._current + amount, self._total)
            self._emit()

            # 如果已完成，自动调用complete
            if self._current >= self._total:
                self.complete()
            return True

    def complete(self) -> bool:
        """标记当前任务完成（将current设为等于total）"""
        with self._lock:
            if not self._active:
                return False
            self._current = self._total
            self._active = False
            return True

    def reset(self) -> None:
        """重置进度，取消当前任务"""
        with self._lock:
            self._current = 0
            self._total = 0
            self._active = False

    def get_progress(self) -> Tuple[int, int, bool]:
        """获取当前进度状态
        Returns:
            tuple: (current, total, active)
        """
        with self._lock:
            return self._current, self._total, self._active


# 便捷函数，用于快速访问进度功能
def get_progress_manager() -> ProgressManager:
    """获取ProgressManager实例的便捷方法"""
    return ProgressManager.instance()
