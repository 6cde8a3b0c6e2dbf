#!/usr/bin/env python3
"""
GV 分类器 - GV 理想、DW 环与 strong w 判定

J 是 GV 理想当且仅当 Hom(R/J, R) = Ext¹(R/J, R) = 0; R 是 DW 环当且仅当 R 是唯一的 GV 理想。
有限环上 Hom(R/J, R) ≅ ann(J)。
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from classifiers.base_classifier import BaseClassifier, resolve_ideal
from core.errors import ImproperIdeal
from core.finalg import AlgIdeal, FiniteAlgebra, annihilator
from core.homology import DEFAULT_MAX_RANK, ext_is_zero_poly
from core.koszul import coerce_element
from core.polyalg import PolyRing, is_proper


@dataclass
class GVVerdict:
    """一个理想的 GV 判定"""
    ideal: str
    hom_zero: bool
    ext1_zero: bool
    is_gv: bool = field(init=False)

    def __post_init__(self):
        self.is_gv = self.hom_zero and self.ext1_zero

    def to_dict(self) -> Dict[str, Any]:
        return {"ideal": self.ideal, "hom_zero": self.hom_zero, "ext1_zero": self.ext1_zero,
                "is_gv": self.is_gv}


@dataclass
class DWResult:
    is_dw: bool
    proper_gv_witness: Optional[str] = None
    gv_ideals: List[str] = field(default_factory=list)


@dataclass
class StrongWResult:
    is_strong_w: bool
    witness: Optional[Tuple[str, int]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"is_strong_w": self.is_strong_w,
                "witness": None if self.witness is None else {"ideal": self.witness[0], "i": self.witness[1]}}


class GVClassifier(BaseClassifier):
    """GV / DW / strong w 分类器"""

    def __init__(self, **kwargs):
        super().__init__("gv", **kwargs)

    def verdict(self, R: FiniteAlgebra, J) -> GVVerdict:
        ideal = resolve_ideal(R, J)
        hom_zero = annihilator(R, ideal).is_zero()
        ext1_zero = self.ext(R, ideal, cutoff=1).dims[1] == 0
        return GVVerdict(ideal.describe(), hom_zero, ext1_zero)

    def gv_ideals(self, R: FiniteAlgebra) -> List[AlgIdeal]:
        return [I for I in self.progress(self.ideals(R), "GV") if self.verdict(R, I).is_gv]

    def is_dw(self, R: FiniteAlgebra) -> DWResult:
        gv = self.gv_ideals(R)
        proper = [I for I in gv if not I.is_whole()]
        witness = proper[0].describe() if proper else None
        if witness:
            self.log(f"真 GV 理想 {witness}, 不是 DW 环")
        return DWResult(not proper, witness, [I.describe() for I in gv])

    def strong_w(self, R: FiniteAlgebra, cutoff: Optional[int] = None) -> StrongWResult:
        """R 作为 strong w-模: 对每个 GV 理想 J 与 2 ≤ i ≤ cutoff 有 Ext^i(R/J, R) = 0"""
        cutoff = self.cutoff if cutoff is None else cutoff
        for ideal in self.gv_ideals(R):
            dims = self.ext(R, ideal, cutoff).dims
            for i in range(2, cutoff + 1):
                if dims[i]:
                    return StrongWResult(False, (ideal.describe(), i))
        return StrongWResult(True)

    def gv_implies_semiregular(self, R: FiniteAlgebra) -> bool:
        """每个 GV 理想的零化子为零"""
        return all(annihilator(R, I).is_zero() for I in self.gv_ideals(R))

    def process(self, ring: FiniteAlgebra) -> Dict[str, Any]:
        dw = self.is_dw(ring)
        strong = self.strong_w(ring)
        return {
            "gv_ideals": dw.gv_ideals,
            "is_dw": dw.is_dw,
            "proper_gv_witness": dw.proper_gv_witness,
            "strong_w_ok": strong.is_strong_w,
            "strong_w_witness": strong.to_dict()["witness"],
            "gv_implies_semiregular": self.gv_implies_semiregular(ring),
        }


# ---------- 函数接口 ----------

def is_gv_ideal(ring, J_gens: Sequence, relations: Sequence = (),
                max_rank: int = DEFAULT_MAX_RANK) -> GVVerdict:
    """
    有限后端: hom_zero ⟺ ann(J) = 0, ext1_zero 由 Ext 表给出
    多项式后端: Ext⁰ 与 Ext¹ 的消失判定
    """
    if isinstance(ring, FiniteAlgebra):
        return GVClassifier().verdict(ring, J_gens)
    gens = [coerce_element(ring, g) for g in J_gens]
    rels = [coerce_element(ring, r) for r in relations]
    label = "⟨" + ", ".join(str(g) for g in gens) + "⟩"
    return GVVerdict(label,
                     ext_is_zero_poly(ring, gens, 0, rels, max_rank),
                     ext_is_zero_poly(ring, gens, 1, rels, max_rank))


def is_dw(R: FiniteAlgebra, budget: Optional[int] = None) -> DWResult:
    return GVClassifier(budget=budget).is_dw(R)


def dw_witness_poly(ring: PolyRing, J_gens: Sequence, relations: Sequence = ()) -> bool:
    """
    J 是真 GV 理想时为真, 此时 R 不是 DW 环且 fPD(R) ≥ 2

    Raises:
        ImproperIdeal: J 含 1
    """
    gens = [coerce_element(ring, g) for g in J_gens]
    rels = [coerce_element(ring, r) for r in relations]
    if not is_proper(ring, gens + rels):
        raise ImproperIdeal([str(g) for g in gens])
    return is_gv_ideal(ring, gens, rels).is_gv


def strong_w_check(ring, cutoff: int, candidates: Sequence[Sequence] = (),
                   relations: Sequence = (), budget: Optional[int] = None) -> StrongWResult:
    """
    有限后端扫描整个理想格; 多项式后端只检查给定的候选理想中是 GV 的那些
    """
    if isinstance(ring, FiniteAlgebra):
        return GVClassifier(cutoff=cutoff, budget=budget).strong_w(ring, cutoff)
    rels = [coerce_element(ring, r) for r in relations]
    for candidate in candidates:
        gens = [coerce_element(ring, g) for g in candidate]
        verdict = is_gv_ideal(ring, gens, rels)
        if not verdict.is_gv:
            continue
        for i in range(2, cutoff + 1):
            if not ext_is_zero_poly(ring, gens, i, rels):
                return StrongWResult(False, (verdict.ideal, i))
    return StrongWResult(True)
