#!/usr/bin/env python3
"""
命令结果模块 - 提供统一的结果格式、状态枚举与退出码
"""

from enum import Enum
from typing import Any, Dict, Optional

from core.errors import FinitisticError


class CommandStatus(Enum):
    """命令状态枚举"""
    PASS = "pass"
    VIOLATION = "violation"
    INCONCLUSIVE = "inconclusive"
    ERROR = "error"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "violation": 1, "inconclusive": 2, "error": 1}[self.value]


class CommandResult:
    """命令结果类"""

    def __init__(self, status: CommandStatus, data: Optional[Dict[str, Any]] = None,
                 metadata: Optional[Dict[str, Any]] = None):
        self.status = status
        self.data = data or {}
        self.metadata = metadata or {}

    @classmethod
    def passed(cls, data: Optional[Dict[str, Any]] = None, **metadata) -> 'CommandResult':
        return cls(CommandStatus.PASS, data, metadata)

    @classmethod
    def error(cls, error: FinitisticError) -> 'CommandResult':
        """由计算异常构造错误结果"""
        return cls(CommandStatus.ERROR, error.to_dict(), {
            "exception_type": type(error).__name__,
            "exception_message": error.message,
        })

    @property
    def exit_code(self) -> int:
        return self.status.exit_code


def combine_status(*statuses: CommandStatus) -> CommandStatus:
    """ERROR > VIOLATION > INCONCLUSIVE > PASS"""
    order = [CommandStatus.ERROR, CommandStatus.VIOLATION, CommandStatus.INCONCLUSIVE]
    for status in order:
        if status in statuses:
            return status
    return CommandStatus.PASS


def safe_command_call(func, *args, **kwargs) -> CommandResult:
    """
    安全的命令调用包装器

    计算异常 (FinitisticError) 转为 ERROR 结果; 其余异常照常抛出。

    Returns:
        CommandResult: 标准化的结果
    """
    try:
        result = func(*args, **kwargs)
    except FinitisticError as e:
        return CommandResult.error(e)
    if isinstance(result, CommandResult):
        return result
    return CommandResult.passed(result if isinstance(result, dict) else {"value": result})
