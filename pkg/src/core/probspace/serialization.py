"""概率空间与因子的 JSON 编码"""
from typing import Any, Dict, Hashable, List

from src.core.errors import InputError
from src.core.probspace.space import MODE_RATIONAL, Factor, FiniteProbSpace
from src.utils.rational import from_json, to_json


def _point_to_json(point: Hashable) -> Any:
    if isinstance(point, tuple):
        return [_point_to_json(p) for p in point]
    if isinstance(point, (int, str)) and not isinstance(point, bool):
        return point
    return str(point)


def _point_from_json(data: Any) -> Hashable:
    if isinstance(data, list):
        return tuple(_point_from_json(p) for p in data)
    return data


def space_to_json(space: FiniteProbSpace) -> Dict[str, Any]:
    """{"mode", "points", "weights": [{num, den}, ...]}"""
    return {
        "mode": space.mode,
        "points": [_point_to_json(p) for p in space.points],
        "weights": [to_json(w) for w in space.weights],
    }


def space_from_json(data: Dict[str, Any]) -> FiniteProbSpace:
    try:
        points = [_point_from_json(p) for p in data["points"]]
        weights = [from_json(w) for w in data["weights"]]
    except (KeyError, TypeError) as e:
        raise InputError(f"概率空间 JSON 缺少字段: {e}") from e
    return FiniteProbSpace(points, weights, data.get("mode", MODE_RATIONAL))


def factor_to_json(B: Factor) -> Dict[str, Any]:
    return {"atoms": list(B.atoms), "tags": list(B.tags)}


def factor_from_json(space: FiniteProbSpace, data: Any) -> Factor:
    """接受 {"atoms": [...]} 或直接的原子数组"""
    if isinstance(data, dict):
        atoms = data.get("atoms")
        tags = data.get("tags")
    else:
        atoms, tags = data, None
    if not isinstance(atoms, list):
        raise InputError("因子 JSON 需要 atoms 数组")
    return Factor(space, atoms, tags)


def event_to_json(space: FiniteProbSpace, event) -> List[Any]:
    """事件编码为按下标排序的点标识数组"""
    return [_point_to_json(space.points[i]) for i in sorted(event)]


def event_from_json(space: FiniteProbSpace, data: List[Any]):
    if not isinstance(data, list):
        raise InputError("事件 JSON 必须是点标识数组")
    return space.event(_point_from_json(p) for p in data)
