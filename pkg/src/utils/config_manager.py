import os
import sys
import json
import copy
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from src.utils.app_path import get_config_file_path

# 内置默认配置，settings.json 中的同名键会覆盖这些值
DEFAULT_SETTINGS: Dict[str, Any] = {
    "general": {
        "thread_count": 1,
    },
    "embedding": {
        "enumeration_cap": 6,
        "mc_block_size": 4096,
    },
    "uip": {
        "independence_tuple_bound": 2,
        "crop_pair_samples": 16,
        "best_effort_tolerance": "1/10",
    },
    "removal": {
        "poll_size": 6,
        "density_threshold": "3/10",
    },
    "limits": {
        "defect_trials": 5,
    },
    "logging": {
        "console_level": "INFO",
        "file_enabled": True,
    },
}

# 环境变量 -> (配置分组, 键, 类型)
ENV_OVERRIDES = {
    "REMOVAL_LAB_THREADS": ("general", "thread_count", int),
    "REMOVAL_LAB_LOG_LEVEL": ("logging", "console_level", str),
    "REMOVAL_LAB_LOG_FILE": ("logging", "file_enabled", lambda v: v.lower() not in ("0", "false", "no")),
}


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class ConfigManager:
    def __init__(self, config_file: Optional[str] = None):
        # .env 中的变量不会覆盖已经存在的环境变量
        load_dotenv(override=False)
        self.config_file = config_file or get_config_file_path("settings.json")

    def save_settings(self, settings: Dict[str, Any]) -> None:
        """保存设置到配置文件"""
        with open(self.config_file, 'w', encoding='utf-8') as f:
            json.dump(settings, f, ensure_ascii=False, indent=4)

    def load_settings(self) -> Dict[str, Any]:
        """从配置文件加载设置，并合并默认值与环境变量覆盖

        Returns:
            Dict[str, Any]: 完整的设置字典
        """
        stored: Dict[str, Any] = {}
        if os.path.exists(self.config_file):
            try:
                with open(self.config_file, 'r', encoding='utf-8') as f:
                    stored = json.load(f)
            except Exception as e:
                # 这里不能使用日志模块（日志模块依赖配置），直接降级为默认配置
                print(f"加载配置文件失败，使用默认配置: {e}", file=sys.stderr)
                stored = {}

        settings = _deep_merge(DEFAULT_SETTINGS, stored)

        for env_name, (section, key, cast) in ENV_OVERRIDES.items():
            raw = os.environ.get(env_name)
            if raw is None or raw == "":
                continue
            try:
                settings[section][key] = cast(raw)
            except (TypeError, ValueError):
                print(f"环境变量 {env_name} 的值无效: {raw}", file=sys.stderr)

        return settings

    def get(self, section: str, key: str, default: Any = None) -> Any:
        """读取单个配置项

        Args:
            section: 配置分组，例如 "embedding"
            key: 配置键
            default: 找不到时的返回值

        Returns:
            Any: 配置值
        """
        return self.load_settings().get(section, {}).get(key, default)
