import logging

from core.command_result import CommandResult, CommandStatus, combine_status, safe_command_call
from core.config_manager import ConfigManager
from core.enhanced_logger import EnhancedLogger
from core.errors import NotPrime


def test_config_defaults_and_file_override(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("computation:\n  cutoff: 3\nlogging:\n  level: DEBUG\n", encoding="utf-8")
    manager = ConfigManager(str(path))
    assert manager.get("computation.cutoff") == 3
    # 文件中没有的键保留默认值
    assert manager.get("computation.budget") == 4096
    assert manager.get("logging.level") == "DEBUG"
    assert manager.get("missing.key", "fallback") == "fallback"
    assert manager.get_computation_config()["cutoff"] == 3
    assert manager.get_verification_config()["kernel_degree_cap"] == 3
    assert manager.get_output_config()["format"] == "json"


def test_config_set_without_persist(tmp_path):
    path = tmp_path / "config.yaml"
    manager = ConfigManager(str(path))
    assert manager.set("computation.cutoff", 9, persist=False)
    assert manager.get("computation.cutoff") == 9
    assert not path.exists()
    manager.reload()
    assert manager.get("computation.cutoff") == 6


def test_config_set_persists(tmp_path):
    path = tmp_path / "config.yaml"
    manager = ConfigManager(str(path))
    manager.set("verification.seed", 42)
    assert ConfigManager(str(path)).get("verification.seed") == 42


def test_broken_yaml_falls_back_to_defaults(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("computation: [unclosed\n", encoding="utf-8")
    assert ConfigManager(str(path)).get("computation.cutoff") == 6


def test_exit_codes():
    assert CommandStatus.PASS.exit_code == 0
    assert CommandStatus.VIOLATION.exit_code == 1
    assert CommandStatus.INCONCLUSIVE.exit_code == 2
    assert CommandStatus.ERROR.exit_code == 1


def test_combine_status():
    assert combine_status() is CommandStatus.PASS
    assert combine_status(CommandStatus.PASS, CommandStatus.INCONCLUSIVE) is CommandStatus.INCONCLUSIVE
    assert combine_status(CommandStatus.INCONCLUSIVE, CommandStatus.VIOLATION) is CommandStatus.VIOLATION
    assert combine_status(CommandStatus.VIOLATION, CommandStatus.ERROR) is CommandStatus.ERROR


def test_safe_command_call_wraps_errors():
    def fails():
        raise NotPrime(4)

    result = safe_command_call(fails)
    assert result.status is CommandStatus.ERROR
    assert result.exit_code == 1
    assert result.data["error"] == "NotPrime"
    assert result.data["details"] == {"modulus": 4}
    assert result.metadata["exception_type"] == "NotPrime"


def test_safe_command_call_normalises_results():
    assert safe_command_call(lambda: {"a": 1}).data == {"a": 1}
    assert safe_command_call(lambda: 5).data == {"value": 5}
    result = CommandResult.passed({"x": 1}, note="n")
    assert safe_command_call(lambda: result) is result
    assert result.status is CommandStatus.PASS
    assert result.metadata == {"note": "n"}


def test_logger_setup_is_idempotent(tmp_path):
    logger = EnhancedLogger()
    logger.configure_from({"level": "INFO", "show_colors": False, "save_to_file": True,
                           "log_dir": str(tmp_path)})
    handlers = len(logging.getLogger(EnhancedLogger.ROOT).handlers)
    logger.setup_loggers(level="DEBUG")
    assert len(logging.getLogger(EnhancedLogger.ROOT).handlers) == handlers
    assert logging.getLogger(EnhancedLogger.ROOT).level == logging.DEBUG
    logger.log_verdict("koszul_duality", "chain(2,2)", True)
    logger.log_verdict("koszul_duality", "chain(2,2)", False, {"n": 1})
    logger.log_error(NotPrime(6), "ring show")
    logger.log_system_event("配置已加载")
    assert any(p.name.startswith("verify_") for p in tmp_path.iterdir())
    [app_log] = [p for p in tmp_path.iterdir() if p.name.startswith("app_")]
    assert "系统事件: 配置已加载" in app_log.read_text(encoding="utf-8")
