#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
有限环上的 Koszul 次数、Ext 与小有限表示维数 - 命令行主程序

子命令: ring show, koszul, grade, ext, fpd, classify, verify-theorems, paper-examples
stdout 只输出报告 (JSON 或表格), 日志与进度条写到 stderr。
退出码: 0 通过, 1 违例或错误, 2 仅有无法判定项。
"""

import argparse
import os
import sys
import time
from typing import Any, Dict, List, Optional

# 设置控制台编码为 UTF-8
if sys.platform == 'win32':
    try:
        import io
        sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding='utf-8', errors='replace')
        sys.stderr = io.TextIOWrapper(sys.stderr.buffer, encoding='utf-8', errors='replace')
    except Exception:
        pass

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from colorama import Fore, Style, init as colorama_init

from classifiers.fpd_classifier import FpdClassifier, fpd_lower_bound_poly
from classifiers.gv_classifier import dw_witness_poly, is_gv_ideal, strong_w_check
from classifiers.main_controller import ClassifierController
from classifiers.verification_suite import FAULTS, run_verification_suite
from core.command_result import CommandResult, CommandStatus, combine_status, safe_command_call
from core.config_manager import config_manager
from core.data_schemas import ReportModel
from core.enhanced_logger import enhanced_logger
from core.errors import BudgetExceeded, FinitisticError, ImproperIdeal, SchemaError
from core.finalg import enumerate_ideals, ideal_from_text, is_local, local_decompose, quotient_module
from core.homology import (MINIMAL, REDUNDANT, ext_dims_finite, ext_vanishing_profile, pd_cutoff,
                           residue_degree)
from core.koszul import build_koszul, koszul_cohomology_vanishes, koszul_grade, koszul_homology
from core.markers import to_json_value
from core.poly_parser import split_generators
from core.ring_spec import RingHandle, build_ring, module_for, resolve_spec
from corpus_manager import CorpusManager, builtin_specs, poly_specs

STATUS_COLORS = {
    CommandStatus.PASS.value: Fore.GREEN,
    CommandStatus.VIOLATION.value: Fore.RED,
    CommandStatus.INCONCLUSIVE.value: Fore.YELLOW,
    CommandStatus.ERROR.value: Fore.RED,
}


class FinitisticApp:
    """命令行应用"""

    def __init__(self, args: argparse.Namespace):
        """初始化应用"""
        self.args = args
        self.config = config_manager
        self.logger = enhanced_logger
        computation = self.config.get_computation_config()
        self.cutoff = args.cutoff if args.cutoff is not None else computation.get("cutoff", 6)
        self.budget = args.budget if args.budget is not None else computation.get("budget", 4096)
        self.max_rank = computation.get("max_resolution_rank", 64)
        self.seed = args.seed if args.seed is not None else self.config.get_verification_config().get("seed", 0)
        self.spec_echo: Optional[Dict[str, Any]] = None

        # 命令行参数只覆盖本次调用
        self.config.set("computation.cutoff", self.cutoff, persist=False)
        self.config.set("computation.budget", self.budget, persist=False)

    # ----- 工具 -----

    def _load(self, source: str) -> RingHandle:
        handle = resolve_spec(source)
        self.spec_echo = handle.spec_echo()
        return handle

    def _ideal_texts(self, required: bool = True) -> List[str]:
        text = getattr(self.args, "ideal", None)
        if not text:
            if required:
                raise SchemaError("--ideal", "需要理想的生成元, 如 --ideal 'x,y'")
            return []
        return split_generators(text)

    @staticmethod
    def _status_of(ok: bool) -> CommandStatus:
        return CommandStatus.PASS if ok else CommandStatus.VIOLATION

    # ----- 子命令 -----

    def cmd_ring(self) -> CommandResult:
        """ring show: 基、乘法表、极大理想、socle 维数、理想个数"""
        handle = self._load(self.args.spec)
        if not handle.is_finite:
            ring = handle.ring
            return CommandResult.passed({
                "backend": handle.backend,
                "ring": handle.label,
                "variables": list(ring.variables),
                "order": ring.order,
                "relations": [str(r) for r in handle.relations],
            })
        R = handle.ring
        factors = [{
            "maximal_ideal": factor.maximal_ideal.describe(),
            "local_dim": factor.local_factor.dim,
            "residue_degree": residue_degree(R, factor),
            "socle_dim": factor.socle_dim,
        } for factor in local_decompose(R, self.budget)]
        try:
            ideal_count: Any = len(enumerate_ideals(R, self.budget))
        except BudgetExceeded as e:
            ideal_count = f"> budget ({e.required})"
        data = {"backend": handle.backend, "ring": handle.label, **R.describe(),
                "is_local": is_local(R, self.budget), "local_factors": factors, "ideal_count": ideal_count}
        if self.args.export:
            data["exported"] = CorpusManager.save_spec(R, self.args.export)
        return CommandResult.passed(data)

    def cmd_koszul(self) -> CommandResult:
        handle = self._load(self.args.spec)
        sequence = split_generators(self.args.seq)
        if handle.is_finite:
            R = handle.ring
            M = module_for(R, self.args.module)
            table = koszul_homology(build_koszul(R, sequence), M)
            holds = table.duality_holds()
            data = {**table.to_dict(), "duality_holds": holds,
                    "euler_characteristic": list(table.euler_characteristic())}
            return CommandResult(self._status_of(holds), data)
        K = build_koszul(handle.ring, sequence, handle.relations)
        vanishes = [koszul_cohomology_vanishes(K, p) for p in range(K.n + 1)]
        return CommandResult.passed({"n": K.n, "ranks": K.ranks, "cohomology_vanishes": vanishes})

    def cmd_grade(self) -> CommandResult:
        handle = self._load(self.args.spec)
        gens = self._ideal_texts()
        grade = koszul_grade(handle.ring, gens, relations=handle.relations)
        return CommandResult.passed({"ideal": gens, "grade": to_json_value(grade)})

    def cmd_ext(self) -> CommandResult:
        handle = self._load(self.args.spec)
        gens = self._ideal_texts()
        if handle.is_finite:
            R = handle.ring
            ideal = ideal_from_text(R, gens)
            M = quotient_module(R, ideal)
            table = ext_dims_finite(R, M, self.cutoff, self.args.method, self.budget)
            data = {"ideal": ideal.describe(), **table.to_dict(),
                    "first_nonzero": table.first_nonzero(),
                    "pd": to_json_value(pd_cutoff(R, M, self.cutoff, self.budget))}
            return CommandResult.passed(data)
        ring = handle.ring
        polys = [ring.parse(g) for g in gens]
        profile = ext_vanishing_profile(ring, polys, self.cutoff, handle.relations, self.max_rank)
        first = next((i for i, zero in enumerate(profile) if not zero), None)
        return CommandResult.passed({"ideal": gens, "ext_vanishes": profile, "first_nonzero": first})

    def cmd_fpd(self) -> CommandResult:
        handle = self._load(self.args.spec)
        if handle.is_finite:
            data = FpdClassifier(cutoff=self.cutoff, budget=self.budget).process(handle.ring)
            ok = data["fpd"]["agree"] and data["fpd_le_id"]
            return CommandResult(self._status_of(ok), data)
        if not self.args.maximal:
            raise SchemaError("--maximal", "多项式后端需要给出极大理想, 如 --maximal x,y")
        ideals = [split_generators(m) for m in self.args.maximal]
        bound = fpd_lower_bound_poly(handle.ring, ideals, handle.relations)
        return CommandResult.passed({"maximal_ideals": ideals, "lower_bound": to_json_value(bound),
                                     "note": "Max(R) 没有被枚举, 这是 fPD 的下界"})

    def cmd_classify(self) -> CommandResult:
        handle = self._load(self.args.spec)
        if handle.is_finite:
            controller = ClassifierController(self.cutoff, self.budget)
            report, status = controller.classify(handle.ring, handle.label)
            data = report.model_dump(mode="json")
            if self.args.details:
                data["details"] = controller.details(handle.ring)
            return CommandResult(status, data)
        gens = self._ideal_texts()
        ring, relations = handle.ring, handle.relations
        verdict = is_gv_ideal(ring, gens, relations)
        strong = strong_w_check(ring, self.cutoff, [gens], relations)
        witness_reason = None
        try:
            witness = dw_witness_poly(ring, gens, relations)
        except ImproperIdeal as e:
            witness, witness_reason = None, e.message
        data = {
            "ring": handle.label,
            "ideal": gens,
            "grade": to_json_value(koszul_grade(ring, gens, relations=relations)),
            "gv": verdict.to_dict(),
            "dw_witness": witness,
            "dw_witness_reason": witness_reason,
            "strong_w": strong.to_dict(),
        }
        return CommandResult.passed(data)

    def cmd_verify_theorems(self) -> CommandResult:
        manager = CorpusManager(self.seed)
        corpus = manager.builtin() + manager.load_user_specs(self.args.spec or [])
        results, status = run_verification_suite(
            corpus, seed=self.seed, cutoff=min(self.cutoff, 5) if self.args.cutoff is None else self.cutoff,
            budget=self.budget, inject_fault=self.args.inject_fault, random_count=self.args.random,
            include_poly=not self.args.no_poly)
        return CommandResult(status, results)

    def cmd_paper_examples(self) -> CommandResult:
        """示例表: 各有限环的 fPD / DW / id / Prüfer, 以及多项式环极大理想的次数下界"""
        rows = []
        status = CommandStatus.PASS
        for spec in builtin_specs():
            handle = build_ring(spec)
            R = handle.require_finite("paper-examples")
            report, row_status = ClassifierController(self.cutoff, self.budget).classify(R, handle.label)
            status = combine_status(status, row_status)
            rows.append({
                "ring": handle.label,
                "dim": R.dim,
                "fpd": report.fpd.value,
                "is_dw": report.is_dw,
                "self_inj_dim": report.self_inj_dim,
                "socle_dims": [f["socle_dim"] for f in report.gorenstein_factors],
                "prufer": report.prufer,
                "strong_prufer": report.strong_prufer,
            })
        for spec in poly_specs():
            handle = build_ring(spec)
            names = list(handle.ring.variables)
            rows.append({
                "ring": handle.label,
                "dim": "∞",
                "fpd": f"≥ {to_json_value(fpd_lower_bound_poly(handle.ring, [names]))}",
                "is_dw": not dw_witness_poly(handle.ring, names) if len(names) >= 2 else None,
            })
        return CommandResult(status, {"rows": rows})

    # ----- 输出 -----

    def run(self) -> int:
        command = self.args.command
        self.logger.log_command(command, {k: v for k, v in vars(self.args).items() if v is not None})
        handler = getattr(self, "cmd_" + command.replace("-", "_"))
        start = time.perf_counter()
        result = safe_command_call(handler)
        elapsed = time.perf_counter() - start
        if result.status is CommandStatus.ERROR:
            self.logger.log_app(f"{command} 失败: {result.metadata.get('exception_message')}", "error")

        output = self.config.get_output_config()
        include_timings = self.args.timings or output.get("include_timings", False)
        report = ReportModel(
            command=command if command != "ring" else "ring show",
            spec=self.spec_echo,
            status=result.status.value,
            results=result.data,
            seed=self.seed,
            timings={"total_seconds": round(elapsed, 4)} if include_timings else None,
        )
        fmt = self.args.format or output.get("format", "json")
        indent = output.get("indent", 2)
        text = render_table(report) if fmt == "table" else report.to_json(indent)
        if self.args.out:
            CorpusManager.save_report(report.to_json(indent), self.args.out)
        print(text)
        return result.exit_code


# ---------- 表格输出 ----------

def _cell(value: Any) -> str:
    if value is True:
        return f"{Fore.GREEN}true{Style.RESET_ALL}"
    if value is False:
        return f"{Fore.RED}false{Style.RESET_ALL}"
    if value is None:
        return "-"
    if isinstance(value, list):
        return "[" + ", ".join(str(v) for v in value) + "]"
    return str(value)


def _flatten(data: Dict[str, Any], prefix: str = "") -> List[tuple]:
    rows = []
    for key in sorted(data):
        value = data[key]
        name = f"{prefix}{key}"
        if isinstance(value, dict) and value:
            rows.extend(_flatten(value, name + "."))
        else:
            rows.append((name, value))
    return rows


def render_table(report: ReportModel) -> str:
    """彩色表格: 表头为命令与状态, 有 rows 时按列对齐, 否则逐项列出"""
    color = STATUS_COLORS.get(report.status, "")
    lines = [f"{Style.BRIGHT}{report.command}{Style.RESET_ALL}  {color}{report.status.upper()}{Style.RESET_ALL}"]
    rows = report.results.get("rows")
    if isinstance(rows, list) and rows:
        columns = list(rows[0].keys())
        widths = {c: max(len(c), *(len(str(r.get(c, ""))) for r in rows)) for c in columns}
        lines.append("  ".join(c.ljust(widths[c]) for c in columns))
        lines.append("  ".join("-" * widths[c] for c in columns))
        for row in rows:
            cells = []
            for c in columns:
                raw = str(row.get(c, ""))
                cells.append(_cell(row.get(c)) + " " * (widths[c] - len(raw if row.get(c) is not None else "-")))
            lines.append("  ".join(cells))
        return "\n".join(lines)
    flat = _flatten(report.results)
    width = max((len(k) for k, _ in flat), default=0)
    for key, value in flat:
        lines.append(f"  {key.ljust(width)}  {_cell(value)}")
    return "\n".join(lines)


# ---------- 参数解析 ----------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cutoff", type=int, default=None, help="分解与 Ext 的截断 (默认 6)")
    common.add_argument("--budget", type=int, default=None, help="理想格枚举的元素预算 (默认 4096)")
    common.add_argument("--seed", type=int, default=None, help="随机代数的种子")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json", help="输出 JSON 报告")
    fmt.add_argument("--table", dest="format", action="store_const", const="table", help="输出彩色表格")
    common.add_argument("--config", default=None, help="配置文件路径")
    common.add_argument("--timings", action="store_true", help="报告中包含计时")
    common.add_argument("--out", default=None, help="同时把 JSON 报告写入文件")
    common.add_argument("--log-level", default=None, help="日志级别 (DEBUG/INFO/WARNING/ERROR)")

    parser = argparse.ArgumentParser(prog="finitistic", description="有限环上的 Koszul 次数、Ext 与小有限表示维数")
    sub = parser.add_subparsers(dest="command", required=True)

    ring = sub.add_parser("ring", parents=[common], help="显示环的结构")
    ring.add_argument("action", choices=["show"])
    ring.add_argument("spec", help="环描述: JSON 文件、JSON 文本或简写 (trunc(2,2,2), F_2[x,y])")
    ring.add_argument("--export", default=None, help="把有限环的结构常数描述写入文件")

    koszul = sub.add_parser("koszul", parents=[common], help="Koszul 同调与上同调")
    koszul.add_argument("spec")
    koszul.add_argument("--seq", required=True, help="元素序列, 逗号分隔")
    koszul.add_argument("--module", choices=["regular", "residue", "zero"], default="regular")

    grade = sub.add_parser("grade", parents=[common], help="Koszul 次数")
    grade.add_argument("spec")
    grade.add_argument("--ideal", required=True, help="理想生成元, 逗号分隔")

    ext = sub.add_parser("ext", parents=[common], help="Ext^i(R/I, R)")
    ext.add_argument("spec")
    ext.add_argument("--ideal", required=True)
    ext.add_argument("--method", choices=[MINIMAL, REDUNDANT], default=MINIMAL)

    fpd = sub.add_parser("fpd", parents=[common], help="小有限表示维数")
    fpd.add_argument("spec")
    fpd.add_argument("--maximal", action="append", default=None,
                     help="多项式后端的极大理想, 逗号分隔生成元; 可重复")

    classify = sub.add_parser("classify", parents=[common], help="完整分类报告")
    classify.add_argument("spec")
    classify.add_argument("--ideal", default=None, help="多项式后端需要的候选理想")
    classify.add_argument("--details", action="store_true", help="附上各子分类器自己的结果")

    verify = sub.add_parser("verify-theorems", parents=[common], help="在语料上批量验证")
    verify.add_argument("--spec", action="append", default=None, help="附加的环描述文件; 可重复")
    verify.add_argument("--random", type=int, default=None, help="随机代数个数")
    verify.add_argument("--inject-fault", choices=list(FAULTS), default=None, help="测试模式: 故意破坏一项断言")
    verify.add_argument("--no-poly", action="store_true", help="跳过多项式后端检查")

    sub.add_parser("paper-examples", parents=[common], help="示例环的分类表")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """主函数"""
    args = build_parser().parse_args(argv)
    if args.config:
        config_manager.reload(args.config)
    logging_config = dict(config_manager.get("logging", {}))
    if args.log_level:
        logging_config["level"] = args.log_level
    enhanced_logger.configure_from(logging_config)
    enhanced_logger.log_system_event(f"配置文件: {config_manager.config_file}", "DEBUG")
    colorama_init()
    try:
        return FinitisticApp(args).run()
    except FinitisticError as e:
        enhanced_logger.log_error(e, args.command)
        return CommandStatus.ERROR.exit_code


if __name__ == "__main__":
    sys.exit(main())
