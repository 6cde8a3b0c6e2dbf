#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
非有限结果的枚举标记

无穷、超出截断、无法判定都是一等公民, 不用哨兵整数表示。
"""

from enum import Enum
from typing import Union


class Infinity(Enum):
    """Koszul 次数与自内射维数的 ∞"""
    INFINITY = "infinity"

    def __str__(self) -> str:
        return "∞"


class Bound(Enum):
    """有界计算未能在截断内得出结论"""
    EXCEEDS_CUTOFF = "exceeds_cutoff"

    def __str__(self) -> str:
        return "> cutoff"


class Verdict(Enum):
    INCONCLUSIVE = "inconclusive"

    def __str__(self) -> str:
        return "inconclusive"


class QuotientSize(Enum):
    INFINITE = "infinite"


INFINITY = Infinity.INFINITY
EXCEEDS_CUTOFF = Bound.EXCEEDS_CUTOFF
INCONCLUSIVE = Verdict.INCONCLUSIVE
INFINITE = QuotientSize.INFINITE

ExtendedInt = Union[int, Infinity]


def extended_le(a: ExtendedInt, b: ExtendedInt) -> bool:
    """在 ℕ ∪ {∞} 上比较 a ≤ b"""
    if b is INFINITY:
        return True
    if a is INFINITY:
        return False
    return a <= b


def to_json_value(value):
    """枚举标记序列化为字符串, 整数与布尔值原样返回"""
    if isinstance(value, Enum):
        return value.value
    return value
