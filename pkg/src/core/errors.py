"""统一的异常类型与退出码"""
from typing import Optional

EXIT_OK = 0
EXIT_VERIFICATION_FAILURE = 1
EXIT_INPUT_ERROR = 2


class RemovalLabError(Exception):
    """removal-lab 所有异常的基类"""
    exit_code = EXIT_INPUT_ERROR


class InputError(RemovalLabError, ValueError):
    """输入错误：参数格式错误或不满足操作的前置条件

    Args:
        message: 错误信息
        position: 出错位置（事件解析、文件读取时使用）
    """
    exit_code = EXIT_INPUT_ERROR

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message if position is None else f"{message} (位置 {position})")
        self.position = position


class PreconditionError(InputError):
    """数学前提不成立，例如 UIP 的独立性假设或 P(∧E_e) ≠ 0"""


class VerificationFailure(RemovalLabError, RuntimeError):
    """内部证书校验失败，绝不静默返回"""
    exit_code = EXIT_VERIFICATION_FAILURE
