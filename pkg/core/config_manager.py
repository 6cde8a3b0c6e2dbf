#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
配置管理器 - 管理计算与输出配置
"""

import copy
import logging
import os
from typing import Any, Dict

import yaml

logger = logging.getLogger(__name__)

DEFAULT_CONFIG: Dict[str, Any] = {
    "computation": {
        "cutoff": 6,
        "budget": 4096,
        "degree_cap": 6,
        "max_resolution_rank": 64,
        "monomial_order": "grevlex",
    },
    "verification": {
        "seed": 0,
        "random_algebras": 100,
        "max_random_dim": 4,
        "primes": [2, 3, 5],
        "groebner_instances": 200,
        "kernel_instances": 30,
        "kernel_degree_cap": 3,
        "max_sequence_length": 3,
    },
    "logging": {
        "level": "WARNING",
        "show_colors": True,
        "save_to_file": False,
        "log_dir": "logs",
    },
    "output": {
        "format": "json",
        "show_progress": True,
        "include_timings": False,
        "indent": 2,
    },
}


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """按节合并, 未给出的键保留默认值"""
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class ConfigManager:
    """配置管理器类"""

    def __init__(self, config_file: str = None):
        """
        初始化配置管理器

        Args:
            config_file: 配置文件路径, 缺省取 FINITISTIC_CONFIG 环境变量或 config.yaml
        """
        self.config_file = config_file or os.environ.get("FINITISTIC_CONFIG", "config.yaml")
        self.config = self.load_config()

    def load_config(self) -> Dict[str, Any]:
        """
        加载配置

        Returns:
            Dict[str, Any]: 默认配置与文件内容合并后的结果
        """
        if os.path.exists(self.config_file):
            try:
                with open(self.config_file, 'r', encoding='utf-8') as f:
                    loaded = yaml.safe_load(f) or {}
                return _merge(DEFAULT_CONFIG, loaded)
            except (OSError, yaml.YAMLError) as e:
                logger.warning("加载配置文件失败，使用默认配置: %s", e)
        return copy.deepcopy(DEFAULT_CONFIG)

    def reload(self, config_file: str = None) -> "ConfigManager":
        if config_file:
            self.config_file = config_file
        self.config = self.load_config()
        return self

    def save_config(self) -> bool:
        """
        保存配置

        Returns:
            bool: 保存是否成功
        """
        try:
            with open(self.config_file, 'w', encoding='utf-8') as f:
                yaml.safe_dump(self.config, f, allow_unicode=True, sort_keys=False)
            return True
        except OSError as e:
            logger.error("保存配置文件失败: %s", e)
            return False

    def get(self, key: str, default: Any = None) -> Any:
        """
        获取配置值

        Args:
            key: 配置键，支持点号分隔的嵌套键
            default: 默认值
        """
        value = self.config
        try:
            for k in key.split('.'):
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def set(self, key: str, value: Any, persist: bool = True) -> bool:
        """
        设置配置值

        Args:
            key: 配置键，支持点号分隔的嵌套键
            value: 配置值
            persist: 是否写回配置文件
        """
        keys = key.split('.')
        config = self.config
        for k in keys[:-1]:
            config = config.setdefault(k, {})
        config[keys[-1]] = value
        return self.save_config() if persist else True

    def get_computation_config(self) -> Dict[str, Any]:
        return self.get("computation", {})

    def get_verification_config(self) -> Dict[str, Any]:
        return self.get("verification", {})

    def get_output_config(self) -> Dict[str, Any]:
        return self.get("output", {})


# 全局配置管理器实例
config_manager = ConfigManager()
