"""一次命令行运行的完整配置"""
import argparse
from dataclasses import dataclass, field
from typing import List, Optional

from src.core.errors import InputError

STOCHASTIC_METHODS = ("partition", "strong")


@dataclass
class RunConfig:
    """子命令及其参数；validate() 在任何计算之前检查每个子命令需要的参数"""
    subcommand: str
    graph: Optional[str] = None
    graphs: List[str] = field(default_factory=list)
    motif: Optional[str] = None
    events: List[str] = field(default_factory=list)
    aps: Optional[str] = None
    corners: Optional[str] = None
    k: Optional[int] = None
    include_trivial: bool = True
    reduction: bool = False
    furstenberg: Optional[int] = None
    set_path: Optional[str] = None
    m: Optional[int] = None
    mode: str = "exact"
    samples: Optional[int] = None
    method: str = "greedy"
    poll_size: Optional[int] = None
    tau: Optional[str] = None
    write_graph: Optional[str] = None
    problem: Optional[str] = None
    example: bool = False
    eps: Optional[str] = None
    best_effort: bool = False
    tol: Optional[str] = None
    random_sizes: List[int] = field(default_factory=list)
    random_n: Optional[int] = None
    p: Optional[str] = None
    d: int = 2
    csv: Optional[str] = None
    polls: List[int] = field(default_factory=list)
    trials: Optional[int] = None
    window: Optional[int] = None
    series: bool = False
    seed: Optional[int] = None
    threads: Optional[int] = None
    output: Optional[str] = None
    timing: Optional[str] = None
    verbose: bool = False

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        values = vars(ns)
        config = cls(subcommand=values["subcommand"])
        renamed = {"event": "events", "nontrivial": "include_trivial", "random": "random_n"}
        for key, value in values.items():
            name = renamed.get(key, key)
            if name == "include_trivial":
                value = not value
            if hasattr(config, name) and name != "subcommand" and value is not None:
                setattr(config, name, value)
        return config

    @property
    def stochastic(self) -> bool:
        """该配置是否用到随机数（必须提供种子）"""
        if self.subcommand == "regcurve":
            return True
        if self.subcommand == "remove":
            return self.method in STOCHASTIC_METHODS
        if self.subcommand == "converge":
            return self.mode == "mc" or bool(self.random_sizes)
        if self.subcommand == "embed":
            return self.mode == "mc"
        return False

    def validate(self) -> "RunConfig":
        """Raises:
            InputError: 缺少必需参数或数值越界
        """
        if self.threads is not None and self.threads < 1:
            raise InputError(f"--threads 必须 >= 1: {self.threads}")
        if self.stochastic and self.seed is None:
            raise InputError(f"{self.subcommand} 的这种用法是随机的，必须提供 --seed")
        if self.seed is not None and self.seed < 0:
            raise InputError(f"--seed 必须是非负整数: {self.seed}")
        if self.mode == "mc" and (self.samples is None or self.samples < 1):
            raise InputError("蒙特卡洛模式需要 --samples >= 1")
        check = getattr(self, f"_validate_{self.subcommand.replace('-', '_')}", None)
        if check is not None:
            check()
        return self

    def _validate_count(self) -> None:
        if self.graph and not self.motif:
            raise InputError("count --graph 需要 --motif")
        if self.aps and self.k is None:
            raise InputError("count --aps 需要 --k")
        if self.reduction and not self.corners:
            raise InputError("--reduction 只能与 --corners 一起使用")

    def _validate_embed(self) -> None:
        if self.furstenberg is not None:
            if not self.set_path or self.m is None:
                raise InputError("embed --furstenberg 需要 --set 与 --m")
            if self.mode != "exact":
                raise InputError("Furstenberg 嵌入只支持精确计算")

    def _validate_converge(self) -> None:
        if self.random_sizes and self.p is None:
            raise InputError("converge --random-sizes 需要 --p")
        if self.random_sizes and any(n < 1 for n in self.random_sizes):
            raise InputError(f"顶点数必须 >= 1: {self.random_sizes}")

    def _validate_regcurve(self) -> None:
        if self.random_n is not None and self.p is None:
            raise InputError("regcurve --random 需要 --p")
        if not self.polls:
            raise InputError("--polls 不能为空")

    def _validate_shiftsys(self) -> None:
        if self.window is None or self.window < 1:
            raise InputError(f"--window 必须 >= 1: {self.window}")
