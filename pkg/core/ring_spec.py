#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
环描述解析 - 把 JSON 环描述变成后端环

四种 kind:
    structure_constants  直接给出结构常数
    poly_quotient        P/I, 有限维时转为有限代数, 否则走多项式后端并携带关系
    poly                 多项式环本身
    family               trunc / chain / field_product / idealization
"""

import logging
import os
import re
from dataclasses import dataclass, field
from typing import Any, Dict, List, Union

from core.config_manager import config_manager
from core.errors import BackendMismatch, InfiniteDimensional, SchemaError
from core.finalg import (FiniteAlgebra, algebra_from_structure_constants, algebra_from_zero_dim_quotient,
                         chain_algebra, field_product_algebra, idealization, regular_module,
                         residue_field_module, truncated_polynomial_algebra, zero_module)
from core.data_schemas import RingSpecModel, parse_spec_model
from core.polyalg import Polynomial, PolyRing

logger = logging.getLogger(__name__)


@dataclass
class RingHandle:
    """解析后的环及其来源"""
    spec: RingSpecModel
    backend: str
    ring: Union[FiniteAlgebra, PolyRing]
    relations: List[Polynomial] = field(default_factory=list)

    @property
    def label(self) -> str:
        return self.spec.label()

    @property
    def is_finite(self) -> bool:
        return self.backend == "finite"

    def require_finite(self, command: str) -> FiniteAlgebra:
        if not self.is_finite:
            raise BackendMismatch("finite", f"{self.backend} ({command})")
        return self.ring

    def spec_echo(self) -> Dict[str, Any]:
        return self.spec.model_dump(mode="json", exclude_none=True)


def _poly_ring(spec: RingSpecModel) -> PolyRing:
    try:
        return PolyRing(spec.p, tuple(spec.variables), spec.order)
    except ValueError as e:
        raise SchemaError("$.variables", str(e)) from None


def module_for(base: FiniteAlgebra, kind: str):
    if kind == "regular":
        return regular_module(base)
    if kind == "zero":
        return zero_module(base)
    return residue_field_module(base)


def build_finite(spec: RingSpecModel) -> FiniteAlgebra:
    """按描述构造有限代数; 多项式描述无限维时抛 InfiniteDimensional"""
    if spec.kind == "structure_constants":
        return algebra_from_structure_constants(spec.p, spec.mul_table, spec.unit, spec.basis_names)
    if spec.kind == "poly_quotient":
        ring = _poly_ring(spec)
        return algebra_from_zero_dim_quotient(ring, [ring.parse(r) for r in spec.relations])[0]
    if spec.kind == "family":
        if spec.name == "trunc":
            return truncated_polynomial_algebra(spec.p, spec.n, spec.deg)
        if spec.name == "chain":
            return chain_algebra(spec.p, spec.k)
        if spec.name == "field_product":
            return field_product_algebra(spec.p, spec.m)
        base = build_finite(spec.base)
        return idealization(base, module_for(base, spec.module))
    raise InfiniteDimensional([])


def build_ring(spec: RingSpecModel) -> RingHandle:
    """
    构造后端环; 所有有限代数的公理校验都在这里运行

    Raises:
        ParseError / UnknownVariable: 关系文本错误
        NotCommutative / NotAssociative / BadUnit: 结构常数错误
    """
    if spec.kind == "poly":
        return RingHandle(spec, "poly", _poly_ring(spec))
    if spec.kind == "poly_quotient":
        ring = _poly_ring(spec)
        relations = [ring.parse(r) for r in spec.relations]
        try:
            algebra = algebra_from_zero_dim_quotient(ring, relations)[0]
        except InfiniteDimensional:
            logger.info("%s 不是有限维, 使用多项式后端", spec.label())
            return RingHandle(spec, "poly", ring, relations)
        return RingHandle(spec, "finite", algebra)
    return RingHandle(spec, "finite", build_finite(spec))


def parse_ring_spec(data: Union[str, Dict[str, Any]]) -> RingHandle:
    """JSON 文本或字典 → 环"""
    return build_ring(parse_spec_model(data))


def load_ring_spec(path: str) -> RingHandle:
    with open(path, 'r', encoding='utf-8') as f:
        return parse_ring_spec(f.read())


def family_spec(name: str, p: int = None, **params) -> RingSpecModel:
    payload: Dict[str, Any] = {"kind": "family", "name": name}
    if p is not None:
        payload["p"] = p
    payload.update(params)
    return parse_spec_model(payload)


_SHORTHAND = re.compile(r"^\s*(trunc|chain|field_product)\s*\(([\d\s,]+)\)\s*$")
_POLY_SHORTHAND = re.compile(r"^\s*F_(\d+)\[([A-Za-z_][\w\s,]*)\]\s*$")
_FAMILY_PARAMS = {"trunc": ("p", "n", "deg"), "chain": ("p", "k"), "field_product": ("p", "m")}


def spec_from_shorthand(text: str) -> RingSpecModel:
    """
    命令行简写: trunc(2,2,2), chain(3,3), field_product(2,2), F_2[x,y]

    Raises:
        SchemaError: 无法识别的简写
    """
    match = _SHORTHAND.match(text)
    if match:
        name = match.group(1)
        values = [int(v) for v in match.group(2).split(",") if v.strip()]
        params = _FAMILY_PARAMS[name]
        if len(values) != len(params):
            raise SchemaError("$", f"{name} 需要 {len(params)} 个参数 {params}")
        return family_spec(name, **dict(zip(params, values)))
    match = _POLY_SHORTHAND.match(text)
    if match:
        variables = [v.strip() for v in match.group(2).split(",") if v.strip()]
        return parse_spec_model({"kind": "poly", "p": int(match.group(1)), "variables": variables,
                                 "order": config_manager.get("computation.monomial_order", "grevlex")})
    raise SchemaError("$", f"无法识别的环描述: {text}")


def resolve_spec(source: str) -> RingHandle:
    """文件路径、JSON 文本或简写"""
    if os.path.exists(source):
        return load_ring_spec(source)
    if source.lstrip().startswith("{"):
        return parse_ring_spec(source)
    return build_ring(spec_from_shorthand(source))
