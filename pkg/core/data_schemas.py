#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
数据结构定义 - 环描述的输入校验与报告的输出格式
"""

import json
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from core.errors import SchemaError

REPORT_VERSION = "1.0.0"

FAMILY_NAMES = ("trunc", "chain", "field_product", "idealization")


class RingSpecModel(BaseModel):
    """环描述 (CLI 与语料文件共用的 JSON 格式)"""
    model_config = ConfigDict(extra="forbid")

    kind: Literal["structure_constants", "poly_quotient", "poly", "family"]
    p: Optional[int] = None
    # structure_constants
    mul_table: Optional[List[List[List[int]]]] = None
    unit: Optional[List[int]] = None
    basis_names: Optional[List[str]] = None
    # poly / poly_quotient
    variables: Optional[List[str]] = None
    relations: Optional[List[str]] = None
    order: Literal["grevlex", "lex"] = "grevlex"
    # family
    name: Optional[Literal["trunc", "chain", "field_product", "idealization"]] = None
    n: Optional[int] = Field(default=None, ge=1)
    deg: Optional[int] = Field(default=None, ge=1)
    k: Optional[int] = Field(default=None, ge=1)
    m: Optional[int] = Field(default=None, ge=1)
    base: Optional["RingSpecModel"] = None
    module: Optional[Literal["regular", "residue", "zero"]] = None

    @field_validator("variables")
    @classmethod
    def check_variables(cls, value: Optional[List[str]]) -> Optional[List[str]]:
        if value is not None and len(set(value)) != len(value):
            raise ValueError(f"变量名重复: {value}")
        return value

    @model_validator(mode="after")
    def check_payload(self) -> "RingSpecModel":
        """每种 kind 恰好带自己的那一组字段"""
        payloads = {
            "structure_constants": {"mul_table", "unit"},
            "poly_quotient": {"variables", "relations"},
            "poly": {"variables"},
            "family": {"name"},
        }
        family_fields = {"trunc": {"n", "deg"}, "chain": {"k"}, "field_product": {"m"},
                         "idealization": {"base", "module"}}
        required = set(payloads[self.kind])
        if self.kind == "family" and self.name:
            required |= family_fields[self.name]
        missing = sorted(f for f in required if getattr(self, f) is None)
        if missing:
            raise ValueError(f"kind={self.kind} 缺少字段 {missing}")
        allowed = set(required) | {"kind", "p", "order", "basis_names"}
        extra = sorted(f for f in self.model_fields_set if f not in allowed)
        if extra:
            raise ValueError(f"kind={self.kind} 不接受字段 {extra}")
        if self.p is None and not (self.kind == "family" and self.name == "idealization"):
            raise ValueError("缺少字段 p")
        return self

    def label(self) -> str:
        """简短描述, 用于报告和表格"""
        if self.kind == "family":
            if self.name == "trunc":
                return f"trunc({self.p},{self.n},{self.deg})"
            if self.name == "chain":
                return f"chain({self.p},{self.k})"
            if self.name == "field_product":
                return f"field_product({self.p},{self.m})"
            return f"idealization({self.base.label()},{self.module})"
        if self.kind == "poly":
            return f"F_{self.p}[{','.join(self.variables)}]"
        if self.kind == "poly_quotient":
            return f"F_{self.p}[{','.join(self.variables)}]/({','.join(self.relations)})"
        return f"algebra(p={self.p}, dim={len(self.unit)})"


RingSpecModel.model_rebuild()


class FpdModel(BaseModel):
    value: Union[int, str]
    method_grade: Optional[Union[int, str]] = None
    method_ext: Optional[Union[int, str]] = None
    agree: bool


class ClassifierReportModel(BaseModel):
    """完整分类报告"""
    ring: str
    fpd: FpdModel
    grade_table: List[Dict[str, Any]] = Field(default_factory=list)
    gv_ideals: List[str] = Field(default_factory=list)
    is_dw: bool
    strong_w_ok: bool
    self_inj_dim: Union[int, str]
    gorenstein_factors: List[Dict[str, Any]] = Field(default_factory=list)
    prufer: Union[bool, str]
    strong_prufer: Union[bool, str]
    is_total_quotient_ring: bool = True
    witnesses: Dict[str, Any] = Field(default_factory=dict)
    checks: Dict[str, bool] = Field(default_factory=dict)
    metadata: Dict[str, Any] = Field(default_factory=dict)


class ReportModel(BaseModel):
    """CLI 输出报告"""
    version: str = REPORT_VERSION
    command: str
    spec: Optional[Dict[str, Any]] = None
    status: str
    results: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    timings: Optional[Dict[str, float]] = None

    def to_json(self, indent: Optional[int] = 2) -> str:
        """确定性序列化: 键排序, 不含计时时省略 timings"""
        payload = self.model_dump(mode="json", exclude_none=False)
        if payload.get("timings") is None:
            payload.pop("timings", None)
        return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=indent)


def _error_path(error: Dict[str, Any]) -> str:
    parts = ["$"]
    for loc in error.get("loc", ()):
        parts.append(f"[{loc}]" if isinstance(loc, int) else f".{loc}")
    return "".join(parts)


def parse_spec_model(data: Union[str, Dict[str, Any]]) -> RingSpecModel:
    """
    校验环描述

    Raises:
        SchemaError: JSON 语法错误或字段不符, 带 JSON 路径
    """
    try:
        if isinstance(data, str):
            return RingSpecModel.model_validate_json(data)
        return RingSpecModel.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise SchemaError(_error_path(first), first.get("msg", "无效输入")) from None
