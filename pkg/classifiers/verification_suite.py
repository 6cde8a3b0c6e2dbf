#!/usr/bin/env python3
"""
验证套件 - verify-theorems 的批量检查

有限语料: Koszul 对偶、端点、Euler 示性数、次数与生成元无关、次数与 Ext 一致、
分类报告中的全部检查、Ext 两种分解对照、分解的正合性、直积的自内射维数。
多项式语料: 正则序列次数、Ext 与次数对照、DW 反证、Gröbner 成员判定与线性张成对照、
合冲模与有界线性求解对照。
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from classifiers.fpd_classifier import fpd_lower_bound_poly
from classifiers.gv_classifier import dw_witness_poly
from classifiers.main_controller import ClassifierController
from core.command_result import CommandStatus, combine_status
from core.config_manager import config_manager
from core.enhanced_logger import enhanced_logger
from core.errors import BudgetExceeded, CutoffInconclusive, ResolutionTooLarge
from core.finalg import annihilator, ideal_closure, product_algebra, quotient_module
from core.homology import (REDUNDANT, ext_dims_finite, ext_is_zero_poly, free_resolution_finite,
                           self_injective_dim_finite)
from core.koszul import build_koszul, koszul_endpoint_dims, koszul_grade, koszul_homology
from core.markers import INFINITY, ExtendedInt, to_json_value
from core.module_gb import bounded_kernel_vectors, matrix_apply, module_groebner, module_kernel
from core.polyalg import PolyRing, bounded_span_contains, buchberger, ideal_contains, normal_form
from corpus_manager import CorpusEntry, CorpusManager

logger = logging.getLogger(__name__)

FAULTS = ("duality",)
UNDECIDED = (BudgetExceeded, CutoffInconclusive, ResolutionTooLarge)


@dataclass
class CheckOutcome:
    """一项检查在整个语料上的结果"""
    name: str
    instances: int = 0
    inconclusive: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def status(self) -> CommandStatus:
        if self.failures:
            return CommandStatus.VIOLATION
        return CommandStatus.INCONCLUSIVE if self.inconclusive else CommandStatus.PASS

    def record(self, ok: bool, witness: Dict[str, Any]):
        self.instances += 1
        if not ok:
            self.failures.append(witness)

    def minimal_counterexample(self) -> Optional[Dict[str, Any]]:
        if not self.failures:
            return None
        return min(self.failures, key=lambda w: (w.get("size", 0), w.get("ring", "")))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "instances": self.instances,
            "inconclusive": self.inconclusive,
            "failures": len(self.failures),
            "counterexample": self.minimal_counterexample(),
        }


def _ext_max(a: ExtendedInt, b: ExtendedInt) -> ExtendedInt:
    return INFINITY if INFINITY in (a, b) else max(a, b)


def _witness(entry: CorpusEntry, **details) -> Dict[str, Any]:
    R = entry.ring
    payload = {"ring": entry.label, "size": getattr(R, "dim", 0), "spec": entry.spec_echo()}
    payload.update(details)
    return payload


class VerificationSuite:
    """在语料上运行全部检查"""

    def __init__(self, corpus: CorpusManager, cutoff: int = 5, budget: Optional[int] = None,
                 inject_fault: Optional[str] = None):
        if inject_fault is not None and inject_fault not in FAULTS:
            raise ValueError(f"未知的故障注入: {inject_fault}")
        self.corpus = corpus
        self.cutoff = cutoff
        self.budget = budget if budget is not None else config_manager.get("computation.budget", 4096)
        self.inject_fault = inject_fault
        self.max_sequence_length = config_manager.get("verification.max_sequence_length", 3)
        self.checks: Dict[str, CheckOutcome] = {}

    def check(self, name: str) -> CheckOutcome:
        if name not in self.checks:
            self.checks[name] = CheckOutcome(name)
        return self.checks[name]

    def progress(self, items: Sequence, desc: str):
        show = config_manager.get("output.show_progress", True)
        return tqdm(items, desc=f"[verify] {desc}", disable=not show, leave=False)

    # ----- Koszul -----

    def run_koszul(self, entries: Sequence[CorpusEntry]):
        duality = self.check("koszul_duality")
        endpoints = self.check("koszul_endpoints")
        euler = self.check("koszul_euler")
        for entry in self.progress(entries, "Koszul"):
            R = entry.ring
            x = self.corpus.random_sequence(R, self.max_sequence_length)
            table = koszul_homology(build_koszul(R, x))
            n = table.n
            sequence = [v.tolist() for v in x]
            expected = list(reversed(table.dims_cohomology))
            if self.inject_fault == "duality":
                expected = [c + 1 for c in expected]
            duality.record(table.dims_homology == expected,
                           _witness(entry, sequence=sequence, homology=table.dims_homology,
                                    expected=expected))
            h0, hn = koszul_endpoint_dims(R, x)
            endpoints.record((table.dims_homology[0], table.dims_homology[n]) == (h0, hn),
                             _witness(entry, sequence=sequence, homology=table.dims_homology,
                                      quotient_dim=h0, annihilator_dim=hn))
            chain, homology = table.euler_characteristic()
            euler.record(chain == homology, _witness(entry, sequence=sequence, chain=chain, homology=homology))

    def run_grade_independence_finite(self, entries: Sequence[CorpusEntry]):
        outcome = self.check("grade_generator_independence")
        for entry in self.progress(entries, "grade"):
            R = entry.ring
            x = self.corpus.random_sequence(R, 2)
            padded = x + [R.add(x[0], x[-1])]
            basis = ideal_closure(R, x).basis() or [R.zero()]
            grades = [koszul_grade(R, gens) for gens in (x, padded, basis)]
            outcome.record(len(set(grades)) == 1,
                           _witness(entry, sequence=[v.tolist() for v in x],
                                    grades=[to_json_value(g) for g in grades]))

    # ----- 理想格 -----

    def run_lattice(self, entries: Sequence[CorpusEntry]):
        grade_ext = self.check("grade_equals_first_ext")
        oracle = self.check("ext_minimal_vs_redundant")
        hom = self.check("ext0_equals_annihilator")
        exact = self.check("resolution_exact")
        for entry in self.progress(entries, "lattice"):
            R = entry.ring
            controller = ClassifierController(self.cutoff, self.budget)
            try:
                ideals = controller.gv.ideals(R)
            except BudgetExceeded:
                for name in ("grade_equals_first_ext", "ext_minimal_vs_redundant", "ext0_equals_annihilator",
                             "resolution_exact"):
                    self.check(name).inconclusive += 1
                continue
            for ideal in ideals:
                minimal = controller.gv.ext(R, ideal, self.cutoff)
                grade = koszul_grade(R, ideal.basis() or [R.zero()])
                first = minimal.first_nonzero()
                expected = INFINITY if first is None else first
                grade_ext.record(grade == expected,
                                 _witness(entry, ideal=ideal.describe(), grade=to_json_value(grade),
                                          first_nonzero_ext=first))
                quotient = quotient_module(R, ideal)
                redundant = ext_dims_finite(R, quotient, self.cutoff, method=REDUNDANT, budget=self.budget)
                oracle.record(minimal.dims == redundant.dims,
                              _witness(entry, ideal=ideal.describe(), minimal=minimal.dims,
                                       redundant=redundant.dims))
                ann = annihilator(R, ideal).dim
                hom.record(minimal.dims[0] == ann,
                           _witness(entry, ideal=ideal.describe(), ext0=minimal.dims[0], annihilator=ann))
                resolution = free_resolution_finite(R, quotient, min(self.cutoff, 3))
                exact.record(resolution.is_exact(),
                             _witness(entry, ideal=ideal.describe(), ranks=resolution.ranks, method=resolution.method))

    def run_classifier_checks(self, entries: Sequence[CorpusEntry]):
        """分类报告里的每个一致性检查都作为一项套件检查"""
        for entry in self.progress(entries, "classify"):
            try:
                report, status = ClassifierController(self.cutoff, self.budget).classify(entry.ring, entry.label)
            except UNDECIDED as e:
                logger.info("%s: %s", entry.label, e)
                self.check("classifier").inconclusive += 1
                continue
            for name, ok in sorted(report.checks.items()):
                self.check(name).record(ok, _witness(entry, report=report.model_dump(mode="json")))
                enhanced_logger.log_verdict(name, entry.label, ok)
            if status is CommandStatus.INCONCLUSIVE:
                self.check("fpd_methods_agree").inconclusive += 1

    def run_product_injective(self, entries: Sequence[CorpusEntry]):
        """id(A × B) = max(id A, id B)"""
        outcome = self.check("product_self_injective")
        small = [e for e in entries if e.ring.dim <= 3]
        for i, a in enumerate(small):
            for b in small[i + 1:]:
                A, B = a.ring, b.ring
                if A.modulus != B.modulus:
                    continue
                ida = self_injective_dim_finite(A, baer_oracle=False, budget=self.budget).value
                idb = self_injective_dim_finite(B, baer_oracle=False, budget=self.budget).value
                prod = self_injective_dim_finite(product_algebra(A, B), baer_oracle=False,
                                                 budget=self.budget).value
                outcome.record(prod == _ext_max(ida, idb),
                               {"ring": f"{a.label} × {b.label}", "size": A.dim + B.dim,
                                "id_left": to_json_value(ida), "id_right": to_json_value(idb),
                                "id_product": to_json_value(prod)})

    # ----- 多项式后端 -----

    def run_poly(self):
        regular = self.check("poly_regular_sequence_grade")
        for n in (1, 2, 3):
            names = ("x", "y", "z")[:n]
            ring = PolyRing(2, names)
            grade = koszul_grade(ring, list(names))
            regular.record(grade == n, {"ring": str(ring), "size": n, "grade": to_json_value(grade)})

        independence = self.check("grade_generator_independence")
        pairs = [
            (("x", "y"), ["x", "y"], ["x", "y", "x+y"]),
            (("x",), ["x"], ["x", "x^2"]),
            (("x", "y"), ["x"], ["x", "x*y"]),
            (("x", "y", "z"), ["x", "y", "z"], ["x+y", "y", "z"]),
        ]
        for names, left, right in pairs:
            ring = PolyRing(2, names)
            grades = (koszul_grade(ring, left), koszul_grade(ring, right))
            independence.record(grades[0] == grades[1],
                                {"ring": str(ring), "size": len(names), "left": left, "right": right,
                                 "grades": [to_json_value(g) for g in grades]})

        cross = self.check("poly_ext_vs_grade")
        for names, gens in ((("x", "y"), ["x", "y"]), (("x",), ["x"])):
            ring = PolyRing(2, names)
            polys = [ring.parse(g) for g in gens]
            grade = koszul_grade(ring, polys)
            first = next((i for i in range(len(names) + 2) if not ext_is_zero_poly(ring, polys, i)), None)
            cross.record(first == grade, {"ring": str(ring), "size": len(names), "ideal": gens,
                                          "grade": to_json_value(grade), "first_nonzero_ext": first})

        witness = self.check("poly_dw_witness")
        ring = PolyRing(2, ("x", "y"))
        is_witness = dw_witness_poly(ring, ["x", "y"])
        bound = fpd_lower_bound_poly(ring, [["x", "y"]])
        witness.record(is_witness and bound == 2,
                       {"ring": str(ring), "size": 2, "dw_witness": is_witness, "fpd_lower_bound": to_json_value(bound)})

    def run_groebner_membership(self):
        """Gröbner 成员判定与有界线性张成对照, 以及显式构造的理想元素"""
        outcome = self.check("groebner_membership")
        cap = config_manager.get("computation.degree_cap", 6)
        instances = config_manager.get("verification.groebner_instances", 200)
        rng = self.corpus.rng
        for _ in self.progress(range(instances), "Gröbner"):
            names = ("x", "y", "z")[:rng.randint(1, 3)]
            ring = PolyRing(rng.choice((2, 3)), names)
            gens = [self.corpus.random_polynomial(ring, 2, 3) for _ in range(rng.randint(1, 2))]
            gb = buchberger(ring, gens)
            candidate = self.corpus.random_polynomial(ring, 4, 3)
            member = ring.zero()
            for g in gens:
                member = member + self.corpus.random_polynomial(ring, 2, 2) * g
            oracle = bounded_span_contains(ring, gens, candidate, cap)
            ok = (not oracle or normal_form(candidate, gb).is_zero()) and ideal_contains(ring, gens, member)
            outcome.record(ok, {"ring": str(ring), "size": ring.nvars, "generators": [str(g) for g in gens],
                                "candidate": str(candidate), "span_member": oracle})

    def run_kernel_completeness(self):
        """module_kernel 与有界线性求解对照: 次数上限内的每个核向量都属于核的生成子模"""
        outcome = self.check("module_kernel_completeness")
        cap = config_manager.get("verification.kernel_degree_cap", 3)
        instances = config_manager.get("verification.kernel_instances", 30)
        rng = self.corpus.rng
        for _ in self.progress(range(instances), "合冲模"):
            names = ("x", "y")[:rng.randint(1, 2)]
            ring = PolyRing(rng.choice((2, 3)), names)
            cols = rng.randint(2, 3)
            matrix = [[self.corpus.random_polynomial(ring, 2, 2) for _ in range(cols)]
                      for _ in range(rng.randint(1, 2))]
            relations = []
            if rng.random() < 0.5:
                relations = [ring.gen(names[-1]) * self.corpus.random_polynomial(ring, 1, 2)]
            kernel = module_kernel(ring, matrix, relations=relations)
            sound = all(matrix_apply(ring, matrix, v, relations).is_zero() for v in kernel)
            gb = module_groebner(ring, cols, kernel, relations)
            missing = [v for v in bounded_kernel_vectors(ring, matrix, cap, relations) if not gb.contains(v)]
            outcome.record(sound and not missing, {
                "ring": str(ring), "size": ring.nvars,
                "matrix": [[str(f) for f in row] for row in matrix],
                "relations": [str(f) for f in relations],
                "missing": [[str(f) for f in v.components] for v in missing[:3]],
            })

    # ----- 汇总 -----

    def run(self, entries: Sequence[CorpusEntry], random_count: int,
            include_poly: bool = True) -> Tuple[Dict[str, Any], CommandStatus]:
        finite = [e for e in entries if e.is_finite]
        randoms = self.corpus.random_algebras(random_count)
        logger.info("验证语料: %d 个有限环, %d 个随机代数", len(finite), len(randoms))

        self.run_koszul(randoms)
        self.run_grade_independence_finite(randoms[:max(20, len(randoms) // 5)])
        self.run_lattice(finite)
        self.run_classifier_checks(finite)
        self.run_product_injective(finite)
        if include_poly:
            self.run_poly()
            self.run_groebner_membership()
            self.run_kernel_completeness()

        failing = [c for c in self.checks.values() if not c.passed]
        status = combine_status(*(c.status for c in self.checks.values()))
        counterexample = None
        if failing:
            worst = min(failing, key=lambda c: (c.minimal_counterexample()["size"], c.name))
            counterexample = {"check": worst.name, **worst.minimal_counterexample()}
            enhanced_logger.log_verdict(worst.name, counterexample["ring"], False)
        results = {
            "checks": {name: outcome.to_dict() for name, outcome in sorted(self.checks.items())},
            "corpus": {"finite": [e.label for e in finite], "random": len(randoms)},
            "cutoff": self.cutoff,
            "counterexample": counterexample,
        }
        if self.inject_fault:
            results["inject_fault"] = self.inject_fault
        return results, status


def run_verification_suite(corpus: Optional[Sequence[CorpusEntry]] = None, seed: int = 0,
                           cutoff: int = 5, budget: Optional[int] = None,
                           inject_fault: Optional[str] = None, random_count: Optional[int] = None,
                           include_poly: bool = True) -> Tuple[Dict[str, Any], CommandStatus]:
    """
    Args:
        corpus: 有限语料, 缺省为内置语料
        seed: 随机代数的种子
        random_count: 随机代数个数, 缺省取 verification.random_algebras

    Returns:
        (结果字典, 状态): 任一检查失败为 VIOLATION, 结果中附带最小反例
    """
    verification = config_manager.get_verification_config()
    manager = CorpusManager(seed, verification.get("max_random_dim", 4), verification.get("primes", [2, 3, 5]))
    entries = list(corpus) if corpus is not None else manager.builtin()
    count = random_count if random_count is not None else verification.get("random_algebras", 100)
    suite = VerificationSuite(manager, cutoff, budget, inject_fault)
    return suite.run(entries, count, include_poly)

