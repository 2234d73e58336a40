import os
from typing import Dict

APP_NAME = "removal-lab"

# 缓存应用目录，避免重复计算
_app_dir = None


def get_app_name() -> str:
    """获取应用名称

    Returns:
        str: 应用名称
    """
    return APP_NAME


def get_user_dir() -> str:
    """获取用户主目录路径

    Returns:
        str: 用户主目录的绝对路径
    """
    return os.path.expanduser("~")


def get_app_dir() -> str:
    """获取应用主目录路径，如果不存在则创建

    优先使用环境变量 REMOVAL_LAB_HOME，否则使用 ~/.removal-lab

    Returns:
        str: 应用主目录的绝对路径
    """
    global _app_dir
    override = os.environ.get("REMOVAL_LAB_HOME")
    if override:
        # 环境变量随时可能变化（测试中常见），不缓存
        ensure_dir_exists(override)
        return override
    if _app_dir is None:
        _app_dir = os.path.join(get_user_dir(), f".{APP_NAME}")
        ensure_dir_exists(_app_dir)
    return _app_dir


def ensure_dir_exists(path: str) -> None:
    """确保目录存在，如果不存在则创建

    Args:
        path: 需要确保存在的目录路径
    """
    if not os.path.exists(path):
        os.makedirs(path, exist_ok=True)


def get_logs_dir() -> str:
    """获取日志目录路径，如果不存在则创建

    Returns:
        str: 日志目录的绝对路径
    """
    logs_dir = os.path.join(get_app_dir(), "logs")
    ensure_dir_exists(logs_dir)
    return logs_dir


def get_config_dir() -> str:
    """获取配置文件目录路径，如果不存在则创建

    Returns:
        str: 配置目录的绝对路径
    """
    config_dir = os.path.join(get_app_dir(), "config")
    ensure_dir_exists(config_dir)
    return config_dir


def get_config_file_path(filename: str = "settings.json") -> str:
    """获取配置文件的完整路径

    Args:
        filename: 配置文件名，默认为settings.json

    Returns:
        str: 配置文件的绝对路径
    """
    return os.path.join(get_config_dir(), filename)


def initialize_app_dirs() -> Dict[str, str]:
    """初始化所有应用目录并返回路径信息

    Returns:
        Dict[str, str]: 包含所有路径信息的字典
    """
    return {
        "app_name": get_app_name(),
        "app_dir": get_app_dir(),
        "logs_dir": get_logs_dir(),
        "config_dir": get_config_dir(),
    }
