#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
增强日志记录器 - 提供结构化的日志功能

stdout 只输出报告; 日志写到 stderr (colorama 按级别着色) 和可选的按日文件。
"""

import logging
import os
import sys
from datetime import datetime
from typing import Any, Dict, Optional

from colorama import Fore, Style, init as colorama_init

LEVEL_COLORS = {
    logging.DEBUG: Fore.CYAN,
    logging.INFO: Fore.GREEN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.MAGENTA,
}


class ColorFormatter(logging.Formatter):
    """按日志级别着色的格式化器"""

    def __init__(self, fmt: str, show_colors: bool = True):
        super().__init__(fmt)
        self.show_colors = show_colors

    def format(self, record: logging.LogRecord) -> str:
        text = super().format(record)
        if not self.show_colors:
            return text
        return f"{LEVEL_COLORS.get(record.levelno, '')}{text}{Style.RESET_ALL}"


class EnhancedLogger:
    """增强日志记录器类"""

    ROOT = "finitistic"

    def __init__(self, log_dir: str = "logs"):
        """
        初始化日志记录器

        Args:
            log_dir: 日志目录 (只在 save_to_file 时创建)
        """
        self.log_dir = log_dir
        self.app_logger = logging.getLogger(f"{self.ROOT}.app")
        self.verify_logger = logging.getLogger(f"{self.ROOT}.verify")
        self.error_logger = logging.getLogger(f"{self.ROOT}.error")
        self._configured = False

    def ensure_log_dir(self):
        """确保日志目录存在"""
        os.makedirs(self.log_dir, exist_ok=True)

    def setup_loggers(self, level: str = "WARNING", show_colors: bool = True,
                      save_to_file: bool = False, log_dir: Optional[str] = None):
        """
        设置日志记录器; 重复调用只更新级别, 不重复添加处理器

        Args:
            level: 日志级别
            show_colors: stderr 输出是否着色
            save_to_file: 是否写按日日志文件
            log_dir: 日志目录
        """
        numeric = getattr(logging, str(level).upper(), logging.WARNING)
        # core.* 模块的 logger 与 finitistic.* 共用同一组处理器
        targets = [logging.getLogger(self.ROOT), logging.getLogger("core"), logging.getLogger("classifiers")]
        for target in targets:
            target.setLevel(numeric)
        if self._configured:
            return
        colorama_init()
        formatter = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        stream = logging.StreamHandler(sys.stderr)
        stream.setFormatter(ColorFormatter(formatter, show_colors))
        for target in targets:
            target.addHandler(stream)
            target.propagate = False

        if save_to_file:
            self.log_dir = log_dir or self.log_dir
            self.ensure_log_dir()
            today = datetime.now().strftime("%Y-%m-%d")
            plain = logging.Formatter(formatter)
            for name, logger in (("app", self.app_logger), ("verify", self.verify_logger),
                                 ("error", self.error_logger)):
                handler = logging.FileHandler(os.path.join(self.log_dir, f"{name}_{today}.log"),
                                              encoding='utf-8')
                handler.setFormatter(plain)
                logger.addHandler(handler)
        self._configured = True

    def configure_from(self, config: Dict[str, Any]):
        """按配置中的 logging 节初始化"""
        self.setup_loggers(
            level=config.get("level", "WARNING"),
            show_colors=config.get("show_colors", True),
            save_to_file=config.get("save_to_file", False),
            log_dir=config.get("log_dir", "logs"),
        )

    def log_app(self, message: str, level: str = "info"):
        """
        记录应用日志

        Args:
            message: 日志消息
            level: 日志级别
        """
        if level.lower() == "error":
            self.app_logger.error(message)
        elif level.lower() == "warning":
            self.app_logger.warning(message)
        elif level.lower() == "debug":
            self.app_logger.debug(message)
        else:
            self.app_logger.info(message)

    def log_command(self, command: str, details: Optional[Dict[str, Any]] = None):
        """
        记录命令调用

        Args:
            command: 子命令
            details: 参数详情
        """
        message = f"命令: {command}"
        if details:
            message += f" - 参数: {details}"
        self.app_logger.info(message)

    def log_verdict(self, check: str, ring: str, passed: bool, details: Optional[Dict[str, Any]] = None):
        """
        记录一次验证结果

        Args:
            check: 检查项名称
            ring: 环的描述
            passed: 是否通过
        """
        status = "通过" if passed else "违例"
        message = f"[{check}] {ring}: {status}"
        if details:
            message += f" - {details}"
        if passed:
            self.verify_logger.info(message)
        else:
            self.verify_logger.warning(message)

    def log_error(self, error: Exception, context: Optional[str] = None):
        """
        记录错误

        Args:
            error: 异常对象
            context: 错误上下文
        """
        message = f"错误: {error}"
        if context:
            message = f"上下文: {context} - {message}"
        self.error_logger.error(message)

    def log_system_event(self, event: str, level: str = "INFO"):
        """
        记录系统事件

        Args:
            event: 事件描述
            level: 日志级别
        """
        self.log_app(f"系统事件: {event}", level.lower())


# 全局日志记录器实例
enhanced_logger = EnhancedLogger()
