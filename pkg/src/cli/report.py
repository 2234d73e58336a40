"""报告的 JSON 编码：有理数写成 {num, den, float}，键排序，耗时单独存放"""
import json
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

import numpy as np

from src.core.embedding import McEstimate
from src.utils.rational import report_value


def encode(value: Any) -> Any:
    """递归地把报告转换为可以 JSON 序列化的结构"""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return report_value(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, McEstimate):
        return value.to_report()
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [encode(v) for v in items]
    raise TypeError(f"报告中含有无法编码的值: {type(value).__name__}")


def split_timing(report: Dict[str, Any]) -> Tuple[Dict[str, Any], Optional[Dict[str, Any]]]:
    """把 timing 字段从报告中分离出来"""
    body = dict(report)
    timing = body.pop("timing", None)
    return body, timing


def dumps(report: Dict[str, Any]) -> str:
    """相同输入得到逐字节相同的输出"""
    return json.dumps(encode(report), sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def write_report(text: str, path: Optional[str], stream) -> None:
    if path is None:
        stream.write(text)
        stream.flush()
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
