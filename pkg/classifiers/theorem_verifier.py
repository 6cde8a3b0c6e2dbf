#!/usr/bin/env python3
"""
定理验证器 - 用 Ext 消失刻画 fPD ≤ d, 以及弱 (1,d)-环的检查

fPD(R) ≤ d 当且仅当: 对每个有限生成理想 I, 若 Ext^i(R/I, R) = 0 (i = 0..d),
则 Ext^i(R/I, R) 对所有 i 消失, 此时 I = R。
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Union

from classifiers.base_classifier import BaseClassifier
from classifiers.fpd_classifier import FpdClassifier, FpdResult
from core.markers import EXCEEDS_CUTOFF, INCONCLUSIVE, Verdict, extended_le, to_json_value

OPEN_QUESTION_WEAK_ND = ("weak (n,d)-ring ⇒ fPD ≤ d: "
                         "unresolved for n ≥ 2; only n = 1 is verified here")


@dataclass
class WndResult:
    """fPD ≤ d 的 Ext 刻画在某个 d 上的验证结果"""
    d: int
    holds: bool
    quantifier_holds: bool
    fpd: FpdResult
    counterexample: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "holds": self.holds,
            "quantifier_holds": self.quantifier_holds,
            "fpd": to_json_value(self.fpd.value),
            "counterexample": self.counterexample,
        }


@dataclass
class Weak1dResult:
    d: int
    is_weak_1d: Union[bool, Verdict]
    implies_fpd_le_d_verified: bool
    witness: Optional[str] = None
    metadata: Dict[str, Any] = field(default_factory=lambda: {"open_question": OPEN_QUESTION_WEAK_ND})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "is_weak_1d": to_json_value(self.is_weak_1d),
            "implies_fpd_le_d_verified": self.implies_fpd_le_d_verified,
            "witness": self.witness,
            "metadata": dict(self.metadata),
        }


class TheoremVerifier(BaseClassifier):
    """在整个理想格上检验 fPD 的刻画"""

    def __init__(self, **kwargs):
        super().__init__("theorem", **kwargs)

    def _fpd(self, R) -> FpdResult:
        return FpdClassifier(cutoff=self.cutoff, budget=self.budget, cache=self.cache).fpd(R)

    def wnd(self, R, d: int, cutoff: Optional[int] = None) -> WndResult:
        """
        对每个理想 I: Ext^0..Ext^d 全为零时, 要求 Ext^{d+1}..Ext^cutoff 全为零且 I = R

        holds 为真当且仅当 fPD ≤ d 与上述量词的真假一致
        """
        cutoff = max(self.cutoff if cutoff is None else cutoff, d)
        counterexample = None
        for ideal in self.progress(self.ideals(R), f"d={d}"):
            dims = self.ext(R, ideal, cutoff).dims
            if any(dims[: d + 1]):
                continue
            if any(dims[d + 1:]) or not ideal.is_whole():
                counterexample = ideal.describe()
                break
        fpd = self._fpd(R)
        quantifier = counterexample is None
        holds = extended_le(fpd.value, d) == quantifier
        if not holds:
            self.log(f"fPD={fpd.value}, d={d}, 量词结论 {quantifier} 不一致")
        return WndResult(d, holds, quantifier, fpd, counterexample)

    def weak_1d(self, R, d: int, cutoff: Optional[int] = None) -> Weak1dResult:
        """
        弱 (1,d)-环: 每个循环有限表示模 R/I 的 pd ≤ d

        有限环上投射维数按极小分解计算, 超出截断 (截断 ≥ d) 即 pd > d;
        截断 < d 时无法区分, 结论为 INCONCLUSIVE。
        """
        cutoff = self.cutoff if cutoff is None else cutoff
        verdict: Union[bool, Verdict] = True
        witness = None
        for ideal in self.progress(self.ideals(R), "weak (1,d)"):
            pd = self.pd_of_quotient(R, ideal, cutoff)
            if pd is EXCEEDS_CUTOFF:
                if cutoff >= d:
                    verdict, witness = False, ideal.describe()
                    break
                verdict = INCONCLUSIVE
            elif pd > d:
                verdict, witness = False, ideal.describe()
                break
        if verdict is True:
            verified = extended_le(self._fpd(R).value, d)
        else:
            # 前提不成立, 蕴含式自动成立
            verified = True
        return Weak1dResult(d, verdict, verified, witness)

    def process(self, ring) -> Dict[str, Any]:
        fpd = self._fpd(ring)
        d = fpd.value if isinstance(fpd.value, int) else self.cutoff
        return {
            "wnd": self.wnd(ring, d).to_dict(),
            "weak_1d": self.weak_1d(ring, d).to_dict(),
        }


# ---------- 函数接口 ----------

def verify_theorem_wnd(R, d: int, cutoff: int = 5, budget: Optional[int] = None) -> WndResult:
    return TheoremVerifier(cutoff=cutoff, budget=budget).wnd(R, d, cutoff)


def weak_1d_mahdou_check(R, d: int, cutoff: int = 5, budget: Optional[int] = None) -> Weak1dResult:
    return TheoremVerifier(cutoff=cutoff, budget=budget).weak_1d(R, d, cutoff)
