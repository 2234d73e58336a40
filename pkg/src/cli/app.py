"""命令行入口：解析参数、执行子命令、写出报告并返回退出码"""
import sys
import time
from typing import List, Optional

from src.cli.commands import COMMANDS
from src.cli.parser import build_parser
from src.cli.report import dumps, split_timing, write_report
from src.cli.run_config import RunConfig
from src.core.errors import EXIT_OK, InputError, RemovalLabError, VerificationFailure
from src.utils.app_path import initialize_app_dirs
from src.utils.config_manager import ConfigManager
from src.utils.logger import get_logger
from src.utils.progress_manager import get_progress_manager
from src.utils.worker_pool import set_default_threads

logger = get_logger()


def _log_progress(current: int, total: int) -> None:
    if total and current == total:
        logger.debug(f"分块任务完成 {current}/{total}")


def _configure(config: RunConfig) -> None:
    """按配置文件、环境变量与命令行参数设置日志与线程数"""
    settings = ConfigManager()
    console_level = "DEBUG" if config.verbose else settings.get("logging", "console_level", "INFO")
    logger.configure(console_level, bool(settings.get("logging", "file_enabled", True)))
    threads = config.threads if config.threads is not None else settings.get("general", "thread_count", 1)
    set_default_threads(int(threads))
    if config.verbose:
        progress = get_progress_manager()
        progress.remove_listener(_log_progress)
        progress.add_listener(_log_progress)


def dispatch(config: RunConfig, stdout=None) -> int:
    """执行一个已解析的配置

    报告写到 --output 或标准输出；耗时写到 --timing 指定的文件，报告本身不含耗时。

    Returns:
        int: 退出码 0 / 1 / 2

    Raises:
        InputError: 参数或输入文件无效
        VerificationFailure: 证书或重新计数校验失败
    """
    stdout = stdout or sys.stdout
    config.validate()
    _configure(config)
    handler = COMMANDS.get(config.subcommand)
    if handler is None:
        raise InputError(f"未知的子命令: {config.subcommand}")

    logger.debug(f"执行子命令 {config.subcommand}")
    start = time.perf_counter()
    report, timing = split_timing(handler(config))
    elapsed = time.perf_counter() - start

    write_report(dumps(report), config.output, stdout)
    timing = dict(timing or {})
    timing["wall_seconds"] = elapsed
    if config.timing:
        write_report(dumps(timing), config.timing, stdout)
    logger.debug(f"子命令 {config.subcommand} 完成，用时 {elapsed:.3f}s")
    return EXIT_OK


def main(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    """命令行主函数

    参数错误由 argparse 以退出码 2 处理；InputError 在标准错误输出用法与原因后返回 2；
    VerificationFailure 返回 1。
    """
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        namespace = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    initialize_app_dirs()
    config = RunConfig.from_namespace(namespace)
    try:
        return dispatch(config, stdout)
    except InputError as e:
        parser.print_usage(stderr)
        stderr.write(f"removal-lab: 输入错误: {e}\n")
        return e.exit_code
    except VerificationFailure as e:
        logger.error(f"校验失败: {e}")
        stderr.write(f"removal-lab: 校验失败: {e}\n")
        return e.exit_code
    except RemovalLabError as e:
        stderr.write(f"removal-lab: {e}\n")
        return e.exit_code
