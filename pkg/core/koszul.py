#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Koszul 复形与 Koszul 次数

K_p(x) 以外代数基 e_α (α = i_1 < … < i_p, 字典序) 为基, 微分
    d_p(e_α) = Σ_j (-1)^{j+1} x_{i_j} e_{α \\ i_j}
上同调复形取微分矩阵在环上的转置 (自由模的 Hom), 因此对偶性
H_p = H^{n-p} 是一个独立的交叉检验而不是定义。

两个后端:
- finite: 环为 FiniteAlgebra, 计算全部 (上) 同调的 F_p 维数
- poly:   环为 PolyRing (可带关系理想), 只判定 H^p(x, R) 是否为零
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import BackendMismatch, EmptySequence, IndexOutOfRange, NotAComplex, RingMismatch
from core.exactla import kernel_array, rank_array
from core.finalg import FiniteAlgebra, FiniteModule, expand_matrix, regular_module
from core.markers import INFINITY, ExtendedInt
from core.module_gb import ModuleVector, module_kernel, submodule_contains
from core.polyalg import Polynomial, PolyRing, buchberger, parse_poly, reduce_terms

logger = logging.getLogger(__name__)

FINITE = "finite"
POLY = "poly"


def backend_of(ring) -> str:
    if isinstance(ring, FiniteAlgebra):
        return FINITE
    if isinstance(ring, PolyRing):
        return POLY
    raise BackendMismatch("finite | poly", type(ring).__name__)


def coerce_element(ring, value):
    """文本按多项式文法解析, 其余原样转换为环元素"""
    if isinstance(ring, FiniteAlgebra):
        return ring.element_from_text(value) if isinstance(value, str) else ring.element(value)
    if isinstance(value, str):
        return parse_poly(ring, value)
    if isinstance(value, Polynomial):
        if value.ring != ring:
            raise RingMismatch(f"{value} 不属于 {ring}")
        return value
    return ring.constant(int(value))


class _FiniteArith:
    """有限后端的环矩阵: 形状 (rows, cols, d) 的数组"""

    def __init__(self, ring: FiniteAlgebra):
        self.ring = ring

    def zeros(self, rows: int, cols: int):
        return np.zeros((rows, cols, self.ring.dim), dtype=np.int64)

    def set_entry(self, matrix, i: int, j: int, value):
        matrix[i, j] = np.mod(matrix[i, j] + value, self.ring.modulus)

    def signed(self, x, sign: int):
        return self.ring.scale(x, sign)

    def compose_is_zero(self, left, right) -> bool:
        R = self.ring
        for i in range(left.shape[0]):
            for k in range(right.shape[1]):
                acc = R.zero()
                for j in range(left.shape[1]):
                    acc = R.add(acc, R.mul(left[i, j], right[j, k]))
                if acc.any():
                    return False
        return True

    def transpose(self, matrix):
        return matrix.transpose(1, 0, 2)


class _PolyArith:
    """多项式后端的环矩阵: 多项式的嵌套列表, 元素模关系理想约化"""

    def __init__(self, ring: PolyRing, relations: Sequence[Polynomial]):
        self.ring = ring
        self.gb = buchberger(ring, relations) if relations else []

    def zeros(self, rows: int, cols: int):
        return [[self.ring.zero() for _ in range(cols)] for _ in range(rows)]

    def set_entry(self, matrix, i: int, j: int, value):
        matrix[i][j] = reduce_terms(matrix[i][j] + value, self.gb)

    def signed(self, x, sign: int):
        return x.scale(sign)

    def compose_is_zero(self, left, right) -> bool:
        inner = len(right)
        for i in range(len(left)):
            for k in range(len(right[0]) if right else 0):
                acc = self.ring.zero()
                for j in range(inner):
                    acc = acc + left[i][j] * right[j][k]
                if not reduce_terms(acc, self.gb).is_zero():
                    return False
        return True

    def transpose(self, matrix):
        if not matrix:
            return []
        return [list(col) for col in zip(*matrix)]


@dataclass
class KoszulComplex:
    """Koszul 复形 K_•(x); differentials[p - 1] 是 d_p: K_p → K_{p-1}"""
    backend: str
    ring: Any
    sequence: Tuple
    basis: List[List[Tuple[int, ...]]]
    differentials: List[Any]
    relations: Tuple[Polynomial, ...] = ()

    @property
    def n(self) -> int:
        return len(self.sequence)

    @property
    def ranks(self) -> List[int]:
        return [len(b) for b in self.basis]

    def codifferential(self, p: int):
        """δ^p: K^p → K^{p+1}, 即 d_{p+1} 的转置; p = n 时为 None (映到零)"""
        if not 0 <= p <= self.n:
            raise IndexOutOfRange(p, 0, self.n)
        if p == self.n:
            return None
        return _arith(self).transpose(self.differentials[p])


@dataclass
class HomologyTable:
    """H_p 与 H^p 的 F_p 维数, p = 0..n"""
    n: int
    dims_homology: List[int]
    dims_cohomology: List[int]
    chain_dims: List[int] = field(default_factory=list)

    def duality_holds(self) -> bool:
        return all(self.dims_homology[p] == self.dims_cohomology[self.n - p] for p in range(self.n + 1))

    def euler_characteristic(self) -> Tuple[int, int]:
        """(Σ (-1)^p dim K_p, Σ (-1)^p dim H_p)"""
        chain = sum((-1) ** p * c for p, c in enumerate(self.chain_dims))
        homology = sum((-1) ** p * h for p, h in enumerate(self.dims_homology))
        return chain, homology

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "dims_homology": list(self.dims_homology),
            "dims_cohomology": list(self.dims_cohomology),
            "chain_dims": list(self.chain_dims),
        }


def _arith(K: KoszulComplex):
    if K.backend == FINITE:
        return _FiniteArith(K.ring)
    return _PolyArith(K.ring, K.relations)


def build_koszul(ring, x: Sequence, relations: Sequence[Polynomial] = ()) -> KoszulComplex:
    """
    按外代数公式构造 Koszul 复形, 并验证 d_{p-1} ∘ d_p = 0

    Args:
        ring: FiniteAlgebra 或 PolyRing
        x: 元素序列 (也接受表达式文本)
        relations: 多项式后端的商环关系 R = P/I₀

    Raises:
        EmptySequence: x 为空
        NotAComplex: 复合不为零
    """
    if not x:
        raise EmptySequence()
    backend = backend_of(ring)
    elements = tuple(coerce_element(ring, v) for v in x)
    rels = tuple(coerce_element(ring, r) for r in relations) if backend == POLY else ()
    n = len(elements)
    basis = [list(combinations(range(n), p)) for p in range(n + 1)]
    index = [{alpha: k for k, alpha in enumerate(level)} for level in basis]
    K = KoszulComplex(backend, ring, elements, basis, [], rels)
    arith = _arith(K)
    for p in range(1, n + 1):
        d = arith.zeros(len(basis[p - 1]), len(basis[p]))
        for col, alpha in enumerate(basis[p]):
            for j, i in enumerate(alpha):
                # 位置 j (从 0 计) 对应符号 (-1)^{(j+1)+1}
                face = alpha[:j] + alpha[j + 1:]
                arith.set_entry(d, index[p - 1][face], col, arith.signed(elements[i], (-1) ** j))
        K.differentials.append(d)
    for p in range(2, n + 1):
        if not arith.compose_is_zero(K.differentials[p - 2], K.differentials[p - 1]):
            raise NotAComplex(p)
    logger.debug("Koszul 复形 (%s, n=%d), 秩 %s", backend, n, K.ranks)
    return K


def _require_finite(K: KoszulComplex):
    if K.backend != FINITE:
        raise BackendMismatch(FINITE, K.backend)


def koszul_homology(K: KoszulComplex, M: Optional[FiniteModule] = None) -> HomologyTable:
    """
    有限后端: 全部 H_p(x, M) 与 H^p(x, M) 的维数

    同调用展开后的微分矩阵的核与像, 上同调用环上转置矩阵展开后的核与像。

    Raises:
        BackendMismatch: 多项式后端
    """
    _require_finite(K)
    R = K.ring
    M = M if M is not None else regular_module(R)
    if M.parent is not R:
        raise RingMismatch("模与复形不在同一个环上")
    p_mod, n, m = R.modulus, K.n, M.dim
    chain = [comb(n, p) * m for p in range(n + 1)]

    # d_p 与 δ^p 的展开矩阵及秩
    d_rank = [0] * (n + 2)
    for p in range(1, n + 1):
        d_rank[p] = rank_array(expand_matrix(M, K.differentials[p - 1]), p_mod)
    delta_rank = [0] * (n + 1)
    for p in range(n):
        delta_rank[p] = rank_array(expand_matrix(M, K.differentials[p].transpose(1, 0, 2)), p_mod)

    homology = [chain[p] - d_rank[p] - d_rank[p + 1] for p in range(n + 1)]
    cohomology = [chain[p] - delta_rank[p] - (delta_rank[p - 1] if p else 0) for p in range(n + 1)]
    return HomologyTable(n, homology, cohomology, chain)


def koszul_endpoint_dims(R: FiniteAlgebra, x: Sequence, M: Optional[FiniteModule] = None) -> Tuple[int, int]:
    """
    直接用线性代数计算 (dim M/xM, dim {m : x_i m = 0 ∀i}), 不经过 Koszul 复形
    """
    M = M if M is not None else regular_module(R)
    elements = [coerce_element(R, v) for v in x]
    if M.dim == 0:
        return 0, 0
    actions = [M.act(v) for v in elements]
    h0 = M.dim - rank_array(np.hstack(actions), R.modulus)
    hn = kernel_array(np.vstack(actions), R.modulus, M.dim).shape[0]
    return h0, hn


def koszul_cohomology_vanishes(K: KoszulComplex, p: int) -> bool:
    """
    多项式后端: H^p(x, R) 是否为零

    ker δ^p 的每个生成元都落在 δ^{p-1} 的像 (列生成的子模) 中时为零。

    Raises:
        BackendMismatch: 有限后端
        IndexOutOfRange: p 不在 0..n
    """
    if K.backend != POLY:
        raise BackendMismatch(POLY, K.backend)
    if not 0 <= p <= K.n:
        raise IndexOutOfRange(p, 0, K.n)
    ring, rels = K.ring, K.relations
    rank_p = comb(K.n, p)
    delta = K.codifferential(p)
    if delta is None:
        kernel_gens = [ModuleVector.unit(ring, rank_p, j) for j in range(rank_p)]
    else:
        kernel_gens = module_kernel(ring, delta, cols=rank_p, relations=rels)
    if p == 0:
        image_gens: List[ModuleVector] = []
    else:
        previous = K.codifferential(p - 1)
        image_gens = [ModuleVector(ring, tuple(previous[i][j] for i in range(rank_p)))
                      for j in range(len(previous[0]))]
    for v in kernel_gens:
        if not submodule_contains(image_gens, v, rels):
            logger.debug("H^%d ≠ 0, 见证 %s", p, v)
            return False
    return True


def koszul_grade(ring, ideal_gens: Sequence, M: Optional[FiniteModule] = None,
                 relations: Sequence = ()) -> ExtendedInt:
    """
    K.grade(I, M) = 最小的 p 使 H^p(x, M) ≠ 0; 全部为零时返回 INFINITY

    多项式后端只支持 M = R。
    """
    K = build_koszul(ring, ideal_gens, relations)
    if K.backend == FINITE:
        table = koszul_homology(K, M)
        for p, dim in enumerate(table.dims_cohomology):
            if dim:
                return p
        return INFINITY
    if M is not None:
        raise BackendMismatch(FINITE, POLY)
    for p in range(K.n + 1):
        if not koszul_cohomology_vanishes(K, p):
            return p
    return INFINITY

