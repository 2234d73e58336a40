"""有理数与 JSON / 文本之间的转换"""
from fractions import Fraction
from numbers import Rational
from typing import Any, Dict, Union

from src.core.errors import InputError

Number = Union[int, float, Fraction]


def to_json(value: Number) -> Dict[str, Any]:
    """把精确有理数编码为 {num, den}，浮点数编码为 {"float": x}"""
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, Rational):
        q = Fraction(value)
        return {"num": q.numerator, "den": q.denominator}
    return {"float": float(value)}


def from_json(data: Any) -> Number:
    """解析 {num, den} / {"float": x} / 整数 / "p/q" 字符串

    Raises:
        InputError: 格式无法识别或分母为 0
    """
    if isinstance(data, dict):
        if "num" in data and "den" in data:
            if int(data["den"]) == 0:
                raise InputError("有理数分母不能为 0")
            return Fraction(int(data["num"]), int(data["den"]))
        if "float" in data:
            return float(data["float"])
        raise InputError(f"无法识别的数值对象: {data!r}")
    if isinstance(data, bool):
        raise InputError(f"无法识别的数值: {data!r}")
    if isinstance(data, int):
        return Fraction(data)
    if isinstance(data, float):
        return data
    if isinstance(data, str):
        return parse_rational(data)
    raise InputError(f"无法识别的数值: {data!r}")


def parse_rational(text: str) -> Fraction:
    """解析 "3/10"、"0.25"、"2" 形式的精确有理数"""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"无效的有理数: {text!r}") from e


def format_rational(value: Number) -> str:
    """CSV 使用的 num/den 文本；浮点数原样输出"""
    if isinstance(value, Rational):
        q = Fraction(value)
        return f"{q.numerator}/{q.denominator}"
    return repr(float(value))


def report_value(value: Number) -> Dict[str, Any]:
    """报告中的数值：精确表示加浮点渲染"""
    encoded = to_json(value)
    if "num" in encoded:
        encoded["float"] = float(Fraction(encoded["num"], encoded["den"]))
    return encoded
