"""UIP 问题与解的 JSON 编码：空间、因子、下集位掩码、点标识数组形式的事件以及有理数 ε"""
import json
from typing import Any, Dict

from src.core.errors import InputError
from src.core.probspace.serialization import (
    event_from_json,
    event_to_json,
    factor_from_json,
    factor_to_json,
    space_from_json,
    space_to_json,
)
from src.core.uip.constructor import UipProblem, UipSolution
from src.core.uip.downset import format_mask, parse_members
from src.core.uip.system import FactorSystem
from src.utils.rational import from_json, report_value, to_json


def system_to_json(system: FactorSystem) -> Dict[str, Any]:
    members = system.i_max.sorted_members()
    return {
        "space": space_to_json(system.space),
        "J": system.J,
        "i_max": members,
        "factors": [{"member": e, **factor_to_json(system.factor(e))} for e in members],
        "filtrations": [
            {"member": e, "chain": [factor_to_json(B) for B in chain]}
            for e, chain in sorted(system.filtrations.items())
        ],
    }


def system_from_json(data: Dict[str, Any]) -> FactorSystem:
    try:
        space = space_from_json(data["space"])
        i_max = parse_members(int(data["J"]), data["i_max"])
        factors = {}
        for item in data["factors"]:
            factors[_member(item)] = factor_from_json(space, item)
        filtrations = {
            _member(item): [factor_from_json(space, B) for B in item["chain"]]
            for item in data.get("filtrations", [])
        }
    except (KeyError, TypeError) as e:
        raise InputError(f"因子系统 JSON 缺少字段: {e}") from e
    return FactorSystem(space, i_max, factors, filtrations)


def _member(item: Dict[str, Any]) -> int:
    member = item["member"]
    if isinstance(member, list):
        return sum(1 << int(x) for x in member)
    if isinstance(member, bool) or not isinstance(member, int):
        raise InputError(f"无法识别的成员: {member!r}")
    return member


def problem_to_json(problem: UipProblem) -> Dict[str, Any]:
    space = problem.system.space
    return {
        **system_to_json(problem.system),
        "events": [{"member": e, "points": event_to_json(space, problem.events[e])} for e in problem.members],
        "eps": to_json(problem.eps),
    }


def problem_from_json(data: Dict[str, Any]) -> UipProblem:
    system = system_from_json(data)
    try:
        events = {_member(item): event_from_json(system.space, item["points"]) for item in data["events"]}
        eps = from_json(data["eps"])
    except (KeyError, TypeError) as e:
        raise InputError(f"UIP 问题 JSON 缺少字段: {e}") from e
    return UipProblem(system, events, eps)


def read_problem(path: str) -> UipProblem:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"无法读取 UIP 问题文件 {path}: {e}") from e
    return problem_from_json(data)


def _certificate_to_json(certificate: Dict[str, Any]) -> Dict[str, Any]:
    encoded: Dict[str, Any] = {}
    for key, value in certificate.items():
        if key == "losses":
            encoded[key] = {k: report_value(v) for k, v in value.items()}
        elif key in ("max_loss", "eps"):
            encoded[key] = report_value(value)
        elif key == "hypotheses":
            encoded[key] = {k: report_value(v) for k, v in value.items()}
        else:
            encoded[key] = value
    return encoded


def solution_to_json(problem: UipProblem, solution: UipSolution) -> Dict[str, Any]:
    """解的报告：每个成员的 E_e 与 F_e、证书以及各步骤计数（不含耗时）"""
    space = problem.system.space
    return {
        "members": [format_mask(e) for e in problem.members],
        "events": {
            format_mask(e): {
                "E": event_to_json(space, problem.events[e]),
                "F": event_to_json(space, solution.events[e]),
            }
            for e in problem.members
        },
        "certificate": _certificate_to_json(solution.certificate),
        "steps": dict(solution.stats),
    }
