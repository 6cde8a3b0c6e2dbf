#!/usr/bin/env python3
"""
fPD 分类器 - 小有限表示维数的两种算法与 fPD ≤ id_R R 检查

method_grade: 各极大理想 Koszul 次数的上确界
method_ext:   最小的 d, 使每个真理想 I 都有某个 i ≤ d 满足 Ext^i(R/I, R) ≠ 0
"""

from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from classifiers.base_classifier import BaseClassifier
from core.errors import BudgetExceeded, CutoffInconclusive, NotMaximal
from core.finalg import FiniteAlgebra, local_decompose, monomial_label
from core.homology import self_injective_dim_finite
from core.koszul import coerce_element, koszul_grade
from core.markers import INFINITE, INFINITY, ExtendedInt, extended_le, to_json_value
from core.polyalg import PolyRing, quotient_monomial_basis


@dataclass
class FpdResult:
    """两种算法的 fPD 及其一致性"""
    value: ExtendedInt
    method_grade: ExtendedInt
    method_ext: Optional[int]
    agree: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": to_json_value(self.value),
            "method_grade": to_json_value(self.method_grade),
            "method_ext": self.method_ext,
            "agree": self.agree,
        }


class FpdClassifier(BaseClassifier):
    """fPD 分类器"""

    def __init__(self, **kwargs):
        super().__init__("fpd", **kwargs)

    def grade_table(self, R: FiniteAlgebra) -> List[Dict[str, Any]]:
        """每个极大理想 m 的 K.grade(m, R)"""
        table = []
        for factor in local_decompose(R, self.budget):
            m = factor.maximal_ideal
            gens = m.basis() or [R.zero()]
            table.append({"ideal": m.describe(), "grade": koszul_grade(R, gens)})
        return table

    def by_grade(self, R: FiniteAlgebra) -> ExtendedInt:
        grades = [row["grade"] for row in self.grade_table(R)]
        if any(g is INFINITY for g in grades):
            return INFINITY
        return max(grades)

    def by_ext(self, R: FiniteAlgebra, d_max: int) -> int:
        """
        Raises:
            CutoffInconclusive: d ≤ d_max 内没有满足条件的 d
        """
        proper = [I for I in self.ideals(R) if not I.is_whole()]
        first_nonzero = []
        for ideal in self.progress(proper, "Ext"):
            i = self.ext(R, ideal, d_max).first_nonzero()
            first_nonzero.append(d_max + 1 if i is None else i)
        # d 通过检验 ⟺ 每个真理想的首个非零 Ext 下标 ≤ d
        needed = max(first_nonzero, default=0)
        if needed > d_max:
            raise CutoffInconclusive(d_max)
        return needed

    def fpd(self, R: FiniteAlgebra, d_max: Optional[int] = None) -> FpdResult:
        d_max = self.cutoff if d_max is None else d_max
        grade = self.by_grade(R)
        ext = self.by_ext(R, d_max)
        agree = grade == ext
        if not agree:
            self.log(f"两种 fPD 算法不一致: grade={grade}, ext={ext}")
        return FpdResult(grade, grade, ext, agree)

    def process(self, ring: FiniteAlgebra) -> Dict[str, Any]:
        result = self.fpd(ring)
        check = verify_fpd_le_selfinjdim(ring, self.budget, result)
        return {
            "fpd": result.to_dict(),
            "grade_table": [{"ideal": row["ideal"], "grade": to_json_value(row["grade"])}
                            for row in self.grade_table(ring)],
            "self_inj_dim": to_json_value(check["id"]),
            "gorenstein_factors": check["gorenstein_factors"],
            "baer_agrees": check["baer_agrees"],
            "fpd_le_id": check["holds"],
            "is_total_quotient_ring": is_total_quotient_ring(ring, self.budget),
        }


# ---------- 函数接口 ----------

def fpd_finite(R: FiniteAlgebra, d_max: int = 6, budget: Optional[int] = None) -> FpdResult:
    return FpdClassifier(cutoff=d_max, budget=budget).fpd(R, d_max)


def check_maximal(ring: PolyRing, gens: Sequence, relations: Sequence = ()):
    """
    P/m 为 F_p (标准单项式只有 1) 时接受, 只处理有理点

    Raises:
        NotMaximal: 见证为商环中的一个非常数标准单项式, 或 "infinite" / "unit ideal"
    """
    polys = [coerce_element(ring, g) for g in gens] + [coerce_element(ring, r) for r in relations]
    basis = quotient_monomial_basis(ring, polys)
    labels = [str(g) for g in polys]
    if basis is INFINITE:
        raise NotMaximal(labels, "infinite")
    if not basis:
        raise NotMaximal(labels, "unit ideal")
    if len(basis) > 1:
        witness = next(m for m in basis if sum(m) > 0)
        raise NotMaximal(labels, monomial_label(ring, witness))


def fpd_lower_bound_poly(ring: PolyRing, maximal_ideals: Sequence[Sequence],
                         relations: Sequence = ()) -> ExtendedInt:
    """
    给定极大理想的 Koszul 次数的最大值, 是 fPD 的下界 (Max(R) 没有被枚举)
    """
    best: ExtendedInt = 0
    for gens in maximal_ideals:
        check_maximal(ring, gens, relations)
        grade = koszul_grade(ring, list(gens), relations=list(relations))
        if grade is INFINITY or (best is not INFINITY and grade > best):
            best = grade
    return best


def verify_fpd_le_selfinjdim(R: FiniteAlgebra, budget: Optional[int] = None,
                             fpd: Optional[FpdResult] = None) -> Dict[str, Any]:
    """fPD(R) ≤ id_R R, 附带各局部因子的 Gorenstein 情况"""
    budget = budget if budget is not None else 4096
    fpd = fpd or fpd_finite(R, budget=budget)
    injective = self_injective_dim_finite(R, baer_oracle=True, budget=budget)
    return {
        "holds": extended_le(fpd.value, injective.value),
        "fpd": fpd.value,
        "id": injective.value,
        "gorenstein_factors": injective.gorenstein_factors,
        "baer_agrees": injective.agrees,
    }


def is_total_quotient_ring(R: FiniteAlgebra, budget: Optional[int] = None) -> bool:
    """每个非零因子都是单位; 元素个数超出预算时抛 BudgetExceeded"""
    budget = budget if budget is not None else 4096
    if R.modulus ** R.dim > budget:
        raise BudgetExceeded(R.modulus ** R.dim, budget)
    for coeffs in product(range(R.modulus), repeat=R.dim):
        a = np.asarray(coeffs, dtype=np.int64)
        if not R.is_zero_divisor(a) and not R.is_unit(a):
            return False
    return True
