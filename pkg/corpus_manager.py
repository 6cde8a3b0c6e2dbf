#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
语料管理器 - 负责内置环、带种子的随机代数以及用户环描述文件的加载
"""

import json
import logging
import os
import random
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from core.data_schemas import RingSpecModel
from core.exactla import mod_matmul, rref_array
from core.finalg import (FiniteAlgebra, algebra_from_zero_dim_quotient, field_product_algebra,
                         product_algebra)
from core.polyalg import Polynomial, PolyRing, monomials_up_to
from core.ring_spec import RingHandle, build_ring, family_spec, load_ring_spec, parse_ring_spec

logger = logging.getLogger(__name__)

# F_p 上不可约二次式, 用来生成剩余域次数为 2 的局部环
IRREDUCIBLE_QUADRATICS = {2: "x^2+x+1", 3: "x^2+1", 5: "x^2+2"}


@dataclass
class CorpusEntry:
    """语料中的一个环"""
    label: str
    handle: Optional[RingHandle] = None
    algebra: Optional[FiniteAlgebra] = None

    @property
    def ring(self):
        return self.algebra if self.algebra is not None else self.handle.ring

    @property
    def is_finite(self) -> bool:
        return self.algebra is not None or self.handle.is_finite

    def spec_echo(self) -> Dict[str, Any]:
        if self.handle is not None:
            return self.handle.spec_echo()
        return structure_constants_spec(self.algebra)


def structure_constants_spec(R: FiniteAlgebra) -> Dict[str, Any]:
    """有限代数的 structure_constants 描述, 可以直接交给 parse_ring_spec"""
    return {
        "kind": "structure_constants",
        "p": R.modulus,
        "mul_table": R.mul_table.tolist(),
        "unit": R.unit.tolist(),
        "basis_names": list(R.basis_names),
    }


def builtin_specs() -> List[RingSpecModel]:
    """验证套件的有限环语料"""
    residue_base = family_spec("chain", 2, k=2)
    return [
        family_spec("trunc", 2, n=2, deg=2),
        family_spec("field_product", 2, m=2),
        family_spec("field_product", 3, m=2),
        family_spec("chain", 2, k=2),
        family_spec("chain", 3, k=3),
        family_spec("idealization", base=family_spec("field_product", 2, m=1), module="regular"),
        family_spec("idealization", base=residue_base, module="residue"),
        family_spec("field_product", 2, m=1),
    ]


def poly_specs() -> List[RingSpecModel]:
    """多项式后端的语料: F_2[x], F_2[x,y], F_2[x,y,z]"""
    names = [["x"], ["x", "y"], ["x", "y", "z"]]
    return [RingSpecModel(kind="poly", p=2, variables=v) for v in names]


def invert_matrix(P: np.ndarray, p: int) -> Optional[np.ndarray]:
    """F_p 上的逆矩阵, 不可逆时返回 None"""
    d = P.shape[0]
    reduced, pivots = rref_array(np.hstack([P, np.eye(d, dtype=np.int64)]), p)
    if pivots[:d] != list(range(d)):
        return None
    return reduced[:, d:] % p


def change_basis(R: FiniteAlgebra, P: np.ndarray) -> FiniteAlgebra:
    """
    新基 f_j = Σ_i P[i, j] e_i 下的同构代数

    新结构常数 T'[a, b] = P⁻¹ (f_a f_b), 单位元坐标为 P⁻¹ 1
    """
    p, d = R.modulus, R.dim
    inverse = invert_matrix(P, p)
    if inverse is None:
        raise ValueError("基变换矩阵不可逆")
    table = np.zeros((d, d, d), dtype=np.int64)
    for a in range(d):
        for b in range(d):
            product = R.mul(P[:, a], P[:, b])
            table[a, b] = mod_matmul(inverse, product.reshape(d, 1), p).reshape(d)
    unit = mod_matmul(inverse, R.unit.reshape(d, 1), p).reshape(d)
    return FiniteAlgebra(p, table, unit, [f"f{i + 1}" for i in range(d)])


class CorpusManager:
    """语料管理器类"""

    def __init__(self, seed: int = 0, max_dim: int = 4, primes: Sequence[int] = (2, 3, 5)):
        """
        Args:
            seed: 随机代数的种子
            max_dim: 随机代数的最大维数
            primes: 随机代数的特征
        """
        self.seed = seed
        self.max_dim = max_dim
        self.primes = list(primes)
        self.rng = random.Random(seed)

    # ----- 内置语料 -----

    def builtin(self) -> List[CorpusEntry]:
        entries = []
        for spec in builtin_specs():
            handle = build_ring(spec)
            entries.append(CorpusEntry(handle.label, handle))
        return entries

    # ----- 随机代数 -----

    def _random_local(self, p: int, max_dim: int) -> FiniteAlgebra:
        """随机单项式商环或非分裂剩余域, 维数 ≤ max_dim"""
        while True:
            choice = self.rng.random()
            if choice < 0.15 and max_dim >= 2:
                ring = PolyRing(p, ("x",))
                return algebra_from_zero_dim_quotient(ring, [ring.parse(IRREDUCIBLE_QUADRATICS[p])])[0]
            if choice < 0.45:
                ring = PolyRing(p, ("x",))
                k = self.rng.randint(1, max_dim)
                return algebra_from_zero_dim_quotient(ring, [ring.monomial((k,))])[0]
            ring = PolyRing(p, ("x", "y"))
            a, b = self.rng.randint(1, 3), self.rng.randint(1, 3)
            relations = [ring.monomial((a, 0)), ring.monomial((0, b))]
            if self.rng.random() < 0.5:
                relations.append(ring.monomial((1, 1)))
            algebra = algebra_from_zero_dim_quotient(ring, relations)[0]
            if algebra.dim <= max_dim:
                return algebra

    def _random_basis_change(self, R: FiniteAlgebra) -> FiniteAlgebra:
        d, p = R.dim, R.modulus
        for _ in range(32):
            P = np.array([[self.rng.randrange(p) for _ in range(d)] for _ in range(d)], dtype=np.int64)
            if invert_matrix(P, p) is not None:
                return change_basis(R, P)
        return R

    def random_algebra(self) -> FiniteAlgebra:
        p = self.rng.choice(self.primes)
        first = self._random_local(p, self.max_dim)
        algebra = first
        room = self.max_dim - first.dim
        if room >= 1 and self.rng.random() < 0.35:
            second = (field_product_algebra(p, 1) if room == 1 or self.rng.random() < 0.5
                      else self._random_local(p, room))
            algebra = product_algebra(first, second)
        if self.rng.random() < 0.7:
            algebra = self._random_basis_change(algebra)
        return algebra

    def random_algebras(self, count: int) -> List[CorpusEntry]:
        """带种子的随机代数, 同一种子生成同一列表"""
        entries = []
        for i in range(count):
            algebra = self.random_algebra()
            entries.append(CorpusEntry(f"random[{self.seed}:{i}](p={algebra.modulus},dim={algebra.dim})",
                                       algebra=algebra))
        logger.debug("生成 %d 个随机代数 (seed %d)", count, self.seed)
        return entries

    def random_sequence(self, R: FiniteAlgebra, max_length: int = 3) -> List[np.ndarray]:
        n = self.rng.randint(1, max_length)
        return [np.array([self.rng.randrange(R.modulus) for _ in range(R.dim)], dtype=np.int64)
                for _ in range(n)]

    def random_polynomial(self, ring: PolyRing, max_degree: int, max_terms: int) -> Polynomial:
        monomials = monomials_up_to(ring.nvars, max_degree)
        terms = {}
        for _ in range(self.rng.randint(1, max_terms)):
            terms[self.rng.choice(monomials)] = self.rng.randrange(1, ring.modulus)
        return Polynomial(ring, terms)

    # ----- 用户描述文件 -----

    def load_user_specs(self, paths: Sequence[str]) -> List[CorpusEntry]:
        entries = []
        for path in paths:
            handle = self.load_spec(path)
            entries.append(CorpusEntry(handle.label, handle))
            logger.info("加载环描述 %s: %s", path, handle.label)
        return entries

    @staticmethod
    def load_spec(source: Union[str, Dict[str, Any]]) -> RingHandle:
        """文件路径或 JSON 文本"""
        if isinstance(source, str) and os.path.exists(source):
            return load_ring_spec(source)
        return parse_ring_spec(source)

    @staticmethod
    def save_report(text: str, path: str) -> bool:
        """
        保存报告

        Returns:
            bool: 保存是否成功
        """
        try:
            directory = os.path.dirname(path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(path, 'w', encoding='utf-8') as f:
                f.write(text)
                f.write("\n")
            return True
        except OSError as e:
            logger.error("保存报告失败: %s", e)
            return False

    @staticmethod
    def save_spec(R: FiniteAlgebra, path: str) -> bool:
        return CorpusManager.save_report(json.dumps(structure_constants_spec(R), sort_keys=True), path)
