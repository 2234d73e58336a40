import json
import os
import threading
from fractions import Fraction

import pytest

from src.core.errors import EXIT_INPUT_ERROR, EXIT_VERIFICATION_FAILURE, InputError, PreconditionError, VerificationFailure
from src.utils.app_path import get_config_file_path, initialize_app_dirs
from src.utils.config_manager import ConfigManager
from src.utils.logger import get_logger
from src.utils.progress_manager import get_progress_manager
from src.utils.rational import format_rational, from_json, parse_rational, report_value, to_json
from src.utils.rng import require_seed, stream
from src.utils.worker_pool import get_default_threads, run_blocks, set_default_threads


class TestConfig:
    """配置文件与环境变量"""

    def test_defaults(self):
        config = ConfigManager()
        assert config.get("general", "thread_count") == 1
        assert config.get("removal", "density_threshold") == "3/10"
        assert config.get("logging", "file_enabled") is False
        assert config.get("nope", "missing", 7) == 7

    def test_settings_file_is_merged(self):
        config = ConfigManager()
        config.save_settings({"embedding": {"enumeration_cap": 8}})
        assert config.get("embedding", "enumeration_cap") == 8
        assert config.get("embedding", "mc_block_size") == 4096

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("REMOVAL_LAB_THREADS", "3")
        monkeypatch.setenv("REMOVAL_LAB_LOG_LEVEL", "DEBUG")
        monkeypatch.setenv("REMOVAL_LAB_LOG_FILE", "yes")
        settings = ConfigManager().load_settings()
        assert settings["general"]["thread_count"] == 3
        assert settings["logging"]["console_level"] == "DEBUG"
        assert settings["logging"]["file_enabled"] is True

    def test_invalid_values_fall_back(self, monkeypatch, capsys):
        monkeypatch.setenv("REMOVAL_LAB_THREADS", "many")
        with open(get_config_file_path(), "w", encoding="utf-8") as f:
            f.write("{")
        assert ConfigManager().get("general", "thread_count") == 1
        assert "REMOVAL_LAB_THREADS" in capsys.readouterr().err

    def test_app_dirs_follow_home(self, app_home):
        dirs = initialize_app_dirs()
        assert dirs["app_dir"] == str(app_home)
        assert os.path.isdir(dirs["logs_dir"])
        assert os.path.isdir(dirs["config_dir"])


class TestWorkerPool:
    """分块并行"""

    def test_results_keep_block_order(self):
        def slow_square(x):
            threading.Event().wait(0.001 * (10 - x))
            return x * x
        assert run_blocks(slow_square, list(range(10)), threads=4) == [x * x for x in range(10)]

    def test_default_threads(self):
        set_default_threads(0)
        assert get_default_threads() == 1
        set_default_threads(3)
        assert run_blocks(str, [1, 2, 3]) == ["1", "2", "3"]

    def test_errors_propagate(self):
        def fail(x):
            if x == 2:
                raise InputError("第 2 块")
            return x
        with pytest.raises(InputError):
            run_blocks(fail, [0, 1, 2, 3], threads=2)


class TestRng:
    """随机数流"""

    def test_streams_are_reproducible(self):
        assert stream(5, 1, 2).random(4).tolist() == stream(5, 1, 2).random(4).tolist()
        assert stream(5, 1, 2).random() != stream(5, 1, 3).random()

    @pytest.mark.parametrize("seed", [None, -1, True, "3", 1.5])
    def test_bad_seeds(self, seed):
        with pytest.raises(InputError):
            require_seed(seed)


class TestRational:
    """有理数编码"""

    def test_parse(self):
        assert parse_rational(" 3/10 ") == Fraction(3, 10)
        assert parse_rational("0.25") == Fraction(1, 4)
        with pytest.raises(InputError):
            parse_rational("1/0")
        with pytest.raises(InputError):
            parse_rational("abc")

    def test_json(self):
        assert to_json(Fraction(2, 4)) == {"num": 1, "den": 2}
        assert to_json(0.5) == {"float": 0.5}
        assert from_json({"num": 3, "den": 9}) == Fraction(1, 3)
        assert from_json("2/5") == Fraction(2, 5)
        assert from_json(3) == 3
        for bad in ({"num": 1, "den": 0}, {"x": 1}, True, [1]):
            with pytest.raises(InputError):
                from_json(bad)

    def test_report_and_csv_forms(self):
        assert report_value(Fraction(1, 4)) == {"num": 1, "den": 4, "float": 0.25}
        assert format_rational(Fraction(6, 4)) == "3/2"
        assert format_rational(1) == "1/1"
        assert json.loads(json.dumps(report_value(Fraction(1, 3))))["den"] == 3


class TestErrors:
    """异常层次与退出码"""

    def test_exit_codes(self):
        assert InputError("x").exit_code == EXIT_INPUT_ERROR
        assert PreconditionError("x").exit_code == EXIT_INPUT_ERROR
        assert VerificationFailure("x").exit_code == EXIT_VERIFICATION_FAILURE

    def test_position_is_kept(self):
        error = InputError("意外的字符", position=4)
        assert error.position == 4
        assert "位置 4" in str(error)
        assert isinstance(error, ValueError)


class TestLogger:
    """日志监听器与进度管理"""

    def test_listener_receives_info_and_above(self):
        logger = get_logger()
        messages = []
        logger.add_listener(messages.append)
        try:
            logger.debug("调试消息")
            logger.info("信息消息")
            logger.error("错误消息")
        finally:
            assert logger.remove_listener(messages.append)
        assert len(messages) == 2
        assert "[信息] 信息消息" in messages[0]
        assert "[错误] 错误消息" in messages[1]
        assert not logger.remove_listener(messages.append)

    def test_file_log_can_be_enabled(self, app_home):
        logger = get_logger()
        logger.configure("WARNING", file_enabled=True)
        try:
            logger.debug("写入文件")
        finally:
            logger.configure("WARNING", file_enabled=False)
        logs = os.listdir(os.path.join(str(app_home), "logs"))
        assert len(logs) == 1

    def test_progress_listener(self):
        progress = get_progress_manager()
        seen = []

        def listener(current, total):
            seen.append((current, total))

        progress.add_listener(listener)
        try:
            run_blocks(abs, [-1, -2, -3], threads=1)
        finally:
            progress.remove_listener(listener)
        assert seen[0] == (0, 3)
        assert seen[-1] == (3, 3)
        assert progress.get_progress() == (3, 3, False)
