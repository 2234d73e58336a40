"""命令行包

子命令 count / embed / remove / uip-demo / converge / regcurve / shiftsys。
"""

from .run_config import RunConfig
from .parser import EVENT_GRAMMAR, build_parser
from .app import dispatch, main

__all__ = ["RunConfig", "EVENT_GRAMMAR", "build_parser", "dispatch", "main"]
