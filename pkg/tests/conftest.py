import pytest

from src.utils.logger import get_logger
from src.utils.worker_pool import set_default_threads


@pytest.fixture(autouse=True)
def app_home(tmp_path, monkeypatch):
    """应用目录指向临时目录，关闭文件日志"""
    home = tmp_path / "home"
    monkeypatch.setenv("REMOVAL_LAB_HOME", str(home))
    monkeypatch.setenv("REMOVAL_LAB_LOG_FILE", "0")
    monkeypatch.delenv("REMOVAL_LAB_THREADS", raising=False)
    monkeypatch.delenv("REMOVAL_LAB_LOG_LEVEL", raising=False)
    get_logger().configure("WARNING", file_enabled=False)
    set_default_threads(1)
    yield home
    set_default_threads(1)


@pytest.fixture
def write_file(tmp_path):
    """把文本写入临时文件并返回路径"""
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write
