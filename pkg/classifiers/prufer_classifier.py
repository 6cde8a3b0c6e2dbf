#!/usr/bin/env python3
"""
Prüfer 分类器 - 正则 / 半正则理想与投射理想

Prüfer 环: 每个有限生成正则理想都是投射的
强 Prüfer 环: 每个有限生成半正则理想都是投射的
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, Optional

import numpy as np

from classifiers.base_classifier import BaseClassifier, resolve_ideal
from classifiers.gv_classifier import GVClassifier
from core.errors import BudgetExceeded
from core.finalg import FiniteAlgebra, annihilator
from core.markers import EXCEEDS_CUTOFF


@dataclass
class Regularity:
    regular: bool
    semiregular: bool

    def to_dict(self) -> Dict[str, bool]:
        return {"regular": self.regular, "semiregular": self.semiregular}


@dataclass
class PruferResult:
    prufer: bool
    strong_prufer: bool
    witnesses: Dict[str, str] = field(default_factory=dict)
    is_dw: Optional[bool] = None

    @property
    def corollary_holds(self) -> bool:
        """强 Prüfer ⇒ Prüfer 且 DW"""
        return not self.strong_prufer or (self.prufer and bool(self.is_dw))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "prufer": self.prufer,
            "strong_prufer": self.strong_prufer,
            "witnesses": dict(self.witnesses),
            "strong_prufer_implies_prufer_dw": self.corollary_holds,
        }


class PruferClassifier(BaseClassifier):
    """正则性、投射性与 Prüfer 分类"""

    def __init__(self, **kwargs):
        super().__init__("prufer", **kwargs)

    def regularity(self, R: FiniteAlgebra, I) -> Regularity:
        """
        regular: I 中有非零因子 (乘法矩阵单射)
        semiregular: ann(I) = 0

        Raises:
            BudgetExceeded: I 的元素个数超出预算
        """
        ideal = resolve_ideal(R, I)
        semiregular = annihilator(R, ideal).is_zero()
        count = R.modulus ** ideal.dim
        if count > self.budget:
            raise BudgetExceeded(count, self.budget)
        basis = np.array(ideal.basis(), dtype=np.int64).reshape(ideal.dim, R.dim)
        regular = False
        for coeffs in product(range(R.modulus), repeat=ideal.dim):
            a = np.asarray(coeffs, dtype=np.int64) @ basis % R.modulus
            if not R.is_zero_divisor(a):
                regular = True
                break
        return Regularity(regular, semiregular)

    def is_projective(self, R: FiniteAlgebra, I, cutoff: Optional[int] = None) -> bool:
        """
        I 投射 ⟺ pd(R/I) ≤ 1

        pd 按局部因子上的极小分解计算, 所以截断为 1 时 EXCEEDS_CUTOFF 说明极小一阶合冲不是自由的
        """
        ideal = resolve_ideal(R, I)
        pd = self.pd_of_quotient(R, ideal, max(1, cutoff or 1))
        return pd is not EXCEEDS_CUTOFF and pd <= 1

    def classify(self, R: FiniteAlgebra) -> PruferResult:
        witnesses: Dict[str, str] = {}
        prufer = strong = True
        for ideal in self.progress(self.ideals(R), "Prüfer"):
            reg = self.regularity(R, ideal)
            if not (reg.regular or reg.semiregular):
                continue
            if self.is_projective(R, ideal):
                continue
            if reg.regular and prufer:
                prufer = False
                witnesses["prufer"] = ideal.describe()
            if reg.semiregular and strong:
                strong = False
                witnesses["strong_prufer"] = ideal.describe()
        result = PruferResult(prufer, strong, witnesses)
        result.is_dw = GVClassifier(cutoff=self.cutoff, budget=self.budget, cache=self.cache).is_dw(R).is_dw
        if not result.corollary_holds:
            self.log(f"强 Prüfer ⇒ Prüfer DW 不成立: {result.to_dict()}")
        return result

    def process(self, ring: FiniteAlgebra) -> Dict[str, Any]:
        return self.classify(ring).to_dict()


# ---------- 函数接口 ----------

def ideal_regularity(R: FiniteAlgebra, I, budget: Optional[int] = None) -> Regularity:
    return PruferClassifier(budget=budget).regularity(R, I)


def is_projective_ideal(R: FiniteAlgebra, I, cutoff: int = 1, budget: Optional[int] = None) -> bool:
    return PruferClassifier(cutoff=cutoff, budget=budget).is_projective(R, I, cutoff)


def prufer_classify(R: FiniteAlgebra, budget: Optional[int] = None) -> PruferResult:
    return PruferClassifier(budget=budget).classify(R)
