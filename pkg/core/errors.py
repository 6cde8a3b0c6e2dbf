#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常层次 - 所有计算错误的统一基类与具体子类

每个异常都带一个结构化的 details 字典，命令层 (core.command_result)
据此生成机器可读的错误报告。
"""

from typing import Any, Dict, Optional, Tuple


class FinitisticError(Exception):
    """所有计算错误的基类"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            "error": type(self).__name__,
            "message": self.message,
            "details": self.details,
        }


# ---------- 线性代数 ----------

class NotPrime(FinitisticError):
    def __init__(self, modulus: int):
        super().__init__(f"模数 {modulus} 不是素数", {"modulus": modulus})


class DimensionMismatch(FinitisticError):
    def __init__(self, left: Any, right: Any, what: str = "ambient_dim"):
        super().__init__(f"{what} 不一致: {left} != {right}",
                         {"what": what, "left": left, "right": right})


# ---------- 多项式 ----------

class ParseError(FinitisticError):
    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} (字节偏移 {offset})",
                         {"offset": offset, "text": text})
        self.offset = offset


class UnknownVariable(FinitisticError):
    def __init__(self, name: str, known: Tuple[str, ...] = ()):
        super().__init__(f"未知变量: {name}", {"name": name, "known": list(known)})
        self.name = name


class RingMismatch(FinitisticError):
    def __init__(self, message: str = "参与运算的元素不属于同一个环"):
        super().__init__(message)


class RankMismatch(FinitisticError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"自由模秩不一致: 期望 {expected}, 实际 {got}",
                         {"expected": expected, "got": got})


class ExponentOverflow(FinitisticError):
    def __init__(self, exponent: int, limit: int):
        super().__init__(f"指数 {exponent} 超过上限 {limit}",
                         {"exponent": exponent, "limit": limit})


# ---------- 有限代数 ----------

class AxiomViolation(FinitisticError):
    """结构常数不满足交换环公理"""

    def __init__(self, axiom: str, triple: Tuple[int, ...]):
        super().__init__(f"{axiom} 在基元组 {triple} 上不成立",
                         {"axiom": axiom, "triple": list(triple)})
        self.triple = triple


class NotCommutative(AxiomViolation):
    def __init__(self, triple: Tuple[int, ...]):
        super().__init__("交换律", triple)


class NotAssociative(AxiomViolation):
    def __init__(self, triple: Tuple[int, ...]):
        super().__init__("结合律", triple)


class BadUnit(AxiomViolation):
    def __init__(self, triple: Tuple[int, ...]):
        super().__init__("单位元", triple)


class BadModule(FinitisticError):
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)


class InfiniteDimensional(FinitisticError):
    def __init__(self, relations: Any = None):
        super().__init__("商环不是有限维的", {"relations": relations})


class ZeroRing(FinitisticError):
    def __init__(self, operation: str):
        super().__init__(f"{operation} 需要非零环, 收到零代数", {"operation": operation})


class BudgetExceeded(FinitisticError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"理想格枚举需要 {required} 个元素, 超过预算 {budget}",
                         {"required": required, "budget": budget})
        self.required = required
        self.budget = budget


# ---------- Koszul / 同调 ----------

class EmptySequence(FinitisticError):
    def __init__(self):
        super().__init__("Koszul 复形需要非空元素序列")


class BackendMismatch(FinitisticError):
    def __init__(self, expected: str, got: str):
        super().__init__(f"后端不匹配: 需要 {expected}, 收到 {got}",
                         {"expected": expected, "got": got})


class IndexOutOfRange(FinitisticError):
    def __init__(self, index: int, low: int, high: int):
        super().__init__(f"下标 {index} 不在 [{low}, {high}] 内",
                         {"index": index, "low": low, "high": high})


class NotAComplex(FinitisticError):
    def __init__(self, degree: int):
        super().__init__(f"d_{degree - 1} ∘ d_{degree} ≠ 0", {"degree": degree})


class ResolutionTooLarge(FinitisticError):
    def __init__(self, stage: int, rank: int, bound: int):
        super().__init__(f"分解第 {stage} 项秩 {rank} 超过上限 {bound}",
                         {"stage": stage, "rank": rank, "bound": bound})


# ---------- 分类器 ----------

class CutoffInconclusive(FinitisticError):
    def __init__(self, d_max: int):
        super().__init__(f"d ≤ {d_max} 内没有满足条件的 d", {"d_max": d_max})


class ImproperIdeal(FinitisticError):
    def __init__(self, generators: Any = None):
        super().__init__("理想包含 1, 不是真理想", {"generators": generators})


class NotMaximal(FinitisticError):
    def __init__(self, generators: Any, witness: Any):
        super().__init__("给定理想不是极大理想", {"generators": generators, "witness": witness})
        self.witness = witness


# ---------- 输入 ----------

class SchemaError(FinitisticError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}", {"path": path})
        self.path = path
