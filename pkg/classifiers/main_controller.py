#!/usr/bin/env python3
"""
主控分类器 - 协调所有分类器, 汇总成 ClassifierReport
"""

import logging
from typing import Any, Dict, Optional, Tuple

from classifiers.base_classifier import ComputationCache
from classifiers.fpd_classifier import FpdClassifier, FpdResult, is_total_quotient_ring
from classifiers.gv_classifier import GVClassifier
from classifiers.prufer_classifier import PruferClassifier
from classifiers.theorem_verifier import OPEN_QUESTION_WEAK_ND, TheoremVerifier
from core.command_result import CommandStatus
from core.data_schemas import ClassifierReportModel, FpdModel
from core.errors import CutoffInconclusive
from core.finalg import FiniteAlgebra
from core.homology import self_injective_dim_finite
from core.markers import INCONCLUSIVE, extended_le, to_json_value

logger = logging.getLogger(__name__)

OPEN_QUESTIONS = {
    "weak_nd_implies_fpd_le_d": OPEN_QUESTION_WEAK_ND,
    "infinite_fpd": "finite rings have fPD = 0; EXCEEDS_CUTOFF is never reported as infinity",
}


class ClassifierController:
    """主控分类器: 所有子分类器共享一个计算缓存"""

    def __init__(self, cutoff: Optional[int] = None, budget: Optional[int] = None):
        self.cache = ComputationCache()
        shared = {"cutoff": cutoff, "budget": budget, "cache": self.cache}
        self.gv = GVClassifier(**shared)
        self.fpd = FpdClassifier(**shared)
        self.prufer = PruferClassifier(**shared)
        self.theorem = TheoremVerifier(**shared)
        self.cutoff = self.gv.cutoff
        self.budget = self.gv.budget

        # 分类器列表
        self.classifiers = {
            "gv": self.gv,
            "fpd": self.fpd,
            "prufer": self.prufer,
            "theorem": self.theorem,
        }

    def _fpd_or_inconclusive(self, R: FiniteAlgebra) -> Tuple[Optional[FpdResult], FpdModel]:
        try:
            result = self.fpd.fpd(R)
        except CutoffInconclusive:
            logger.warning("fPD 的 Ext 算法在截断 %d 内没有结论", self.cutoff)
            grade = self.fpd.by_grade(R)
            return None, FpdModel(value=to_json_value(INCONCLUSIVE), method_grade=to_json_value(grade),
                                  method_ext=None, agree=False)
        return result, FpdModel(**result.to_dict())

    def details(self, R: FiniteAlgebra) -> Dict[str, Any]:
        """各子分类器自己的结果字典; Ext 算法在截断内没有结论的记为 inconclusive"""
        out: Dict[str, Any] = {}
        for name, classifier in self.classifiers.items():
            try:
                out[name] = classifier.process(R)
            except CutoffInconclusive as e:
                out[name] = {"inconclusive": e.message}
        return out

    def classify(self, R: FiniteAlgebra, label: str) -> Tuple[ClassifierReportModel, CommandStatus]:
        """
        对一个有限环运行全部分类器

        Returns:
            (报告, 状态): 任一检查失败为 VIOLATION, 仅有无法判定项时为 INCONCLUSIVE
        """
        logger.info("开始分类 %s (dim %d, cutoff %d)", label, R.dim, self.cutoff)
        dw = self.gv.is_dw(R)
        strong = self.gv.strong_w(R)
        fpd, fpd_model = self._fpd_or_inconclusive(R)
        injective = self_injective_dim_finite(R, baer_oracle=True, budget=self.budget)
        prufer = self.prufer.classify(R)

        witnesses: Dict[str, Any] = dict(prufer.witnesses)
        if dw.proper_gv_witness:
            witnesses["is_dw"] = dw.proper_gv_witness
        if strong.witness:
            witnesses["strong_w"] = {"ideal": strong.witness[0], "i": strong.witness[1]}
        if injective.baer_witness:
            witnesses["self_injective"] = injective.baer_witness
        for row in injective.gorenstein_factors:
            if not row["gorenstein"]:
                witnesses.setdefault("gorenstein", row["maximal_ideal"])

        checks = {
            "strong_w_iff_dw": strong.is_strong_w == dw.is_dw,
            "strong_prufer_implies_prufer_dw": prufer.corollary_holds,
            "gv_implies_semiregular": self.gv.gv_implies_semiregular(R),
            "baer_agrees_socle": bool(injective.agrees),
        }
        status = CommandStatus.PASS
        if fpd is not None:
            checks["dw_iff_fpd_le_1"] = dw.is_dw == extended_le(fpd.value, 1)
            checks["fpd_le_selfinjdim"] = extended_le(fpd.value, injective.value)
            checks["fpd_methods_agree"] = fpd.agree
            checks["wnd_at_fpd"] = self.theorem.wnd(R, fpd.value).holds
        else:
            status = CommandStatus.INCONCLUSIVE
        if not all(checks.values()):
            status = CommandStatus.VIOLATION
            logger.warning("%s 违反检查: %s", label, sorted(k for k, v in checks.items() if not v))

        report = ClassifierReportModel(
            ring=label,
            fpd=fpd_model,
            grade_table=[{"ideal": row["ideal"], "grade": to_json_value(row["grade"])}
                         for row in self.fpd.grade_table(R)],
            gv_ideals=dw.gv_ideals,
            is_dw=dw.is_dw,
            strong_w_ok=strong.is_strong_w,
            self_inj_dim=to_json_value(injective.value),
            gorenstein_factors=injective.gorenstein_factors,
            prufer=prufer.prufer,
            strong_prufer=prufer.strong_prufer,
            is_total_quotient_ring=is_total_quotient_ring(R, self.budget),
            witnesses=witnesses,
            checks=checks,
            metadata={"cutoff": self.cutoff, "budget": self.budget,
                      "ideal_count": len(self.gv.ideals(R)), "open_questions": OPEN_QUESTIONS},
        )
        return report, status


def classify_report(R: FiniteAlgebra, label: str, cutoff: Optional[int] = None,
                    budget: Optional[int] = None) -> Tuple[ClassifierReportModel, CommandStatus]:
    return ClassifierController(cutoff, budget).classify(R, label)
