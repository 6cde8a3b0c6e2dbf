#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
自由分解、Ext 与投射维数

有限后端:
    自由分解的每一步用线性代数求核, 再选核的生成元作为下一个自由模的基。
    局部环上取极小生成元 (N 模 rad·N), 非局部环按局部因子分别分解再合并;
    "redundant" 模式直接取核的整组 F_p 基, 作为独立的对照。
多项式后端:
    用迭代的 module_kernel 构造 R/I 的分解, 在转置复形上判定核是否含于像。
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import ResolutionTooLarge
from core.exactla import Subspace, kernel_array, mod_matmul, rank_array, span_of
from core.finalg import (DEFAULT_BUDGET, AlgIdeal, FiniteAlgebra, FiniteModule, LocalFactor,
                         enumerate_ideals, expand_matrix, free_module, local_decompose, module_span,
                         nilradical, primitive_idempotents, quotient_module, regular_module,
                         submodule_action)
from core.markers import EXCEEDS_CUTOFF, INFINITY, ExtendedInt
from core.module_gb import ModuleVector, module_kernel, prune_generators, submodule_contains
from core.polyalg import Polynomial, PolyRing, is_proper

logger = logging.getLogger(__name__)

DEFAULT_CUTOFF = 6
DEFAULT_MAX_RANK = 64

MINIMAL = "minimal"
GREEDY = "greedy"
REDUNDANT = "redundant"


@dataclass
class FreeResolution:
    """
    F_s → … → F_1 → F_0 → M → 0

    differentials[s - 1] 是 d_s: F_s → F_{s-1}, 形状 (ranks[s-1], ranks[s], dim R) 的环元素网格;
    augmentation 的各行是 F_0 的基在 M 中的像。
    """
    ring: FiniteAlgebra
    module: FiniteModule
    ranks: List[int]
    differentials: List[np.ndarray]
    augmentation: np.ndarray
    method: str
    complete: bool
    truncated_at: Optional[int] = None

    @property
    def minimal(self) -> bool:
        return self.method == MINIMAL

    @property
    def length(self) -> int:
        """完整分解的长度; 零模记为 0"""
        return max(len(self.ranks) - 1, 0)

    def scalar_differential(self, s: int) -> np.ndarray:
        return expand_matrix(regular_module(self.ring), self.differentials[s - 1])

    def scalar_augmentation(self) -> np.ndarray:
        return _map_matrix(self.module, list(self.augmentation))

    def is_exact(self) -> bool:
        """每一项上 像 = 核 (作为规范子空间比较)"""
        p = self.ring.modulus
        maps = [self.scalar_augmentation()] + [self.scalar_differential(s)
                                                for s in range(1, len(self.differentials) + 1)]
        # 增广映射满射
        if rank_array(maps[0], p) != self.module.dim:
            return False
        for s in range(1, len(maps)):
            cols = maps[s - 1].shape[1]
            ker = span_of(kernel_array(maps[s - 1], p, cols), cols, p)
            img = span_of(maps[s].T, cols, p)
            if ker != img:
                return False
        return True

    def to_dict(self) -> Dict:
        return {
            "ranks": list(self.ranks),
            "method": self.method,
            "complete": self.complete,
            "truncated_at": self.truncated_at,
        }


@dataclass
class ExtTable:
    """Ext^i(M, R) 的 F_p 维数, i = 0..cutoff"""
    dims: List[int]
    method: str = MINIMAL
    factor_dims: List[List[int]] = field(default_factory=list)

    def first_nonzero(self) -> Optional[int]:
        for i, dim in enumerate(self.dims):
            if dim:
                return i
        return None

    def to_dict(self) -> Dict:
        return {"dims": list(self.dims), "method": self.method}


@dataclass
class SelfInjectiveDim:
    """id_R R (有限环上等于 FP-id_R R)"""
    value: ExtendedInt
    gorenstein_factors: List[Dict]
    baer_value: Optional[ExtendedInt] = None
    baer_witness: Optional[str] = None

    @property
    def agrees(self) -> Optional[bool]:
        return None if self.baer_value is None else self.baer_value == self.value

    def to_dict(self) -> Dict:
        return {
            "value": 0 if self.value == 0 else "infinity",
            "gorenstein_factors": self.gorenstein_factors,
            "baer_value": None if self.baer_value is None else (0 if self.baer_value == 0 else "infinity"),
            "baer_witness": self.baer_witness,
        }


# ---------- 有限后端: 自由分解 ----------

def _map_matrix(A: FiniteModule, gens: Sequence[np.ndarray]) -> np.ndarray:
    """R^k → A, e_t ↦ gens[t] 的 F_p 矩阵; 第 (t, k) 列是 e_k·gens[t]"""
    R = A.parent
    columns = [mod_matmul(a, np.asarray(g, dtype=np.int64).reshape(-1, 1), R.modulus).reshape(-1)
               for g in gens for a in A.action]
    if not columns:
        return np.zeros((A.dim, 0), dtype=np.int64)
    return np.stack(columns, axis=1)


def _choose_generators(A: FiniteModule, N: Subspace, method: str,
                       radical: Optional[AlgIdeal]) -> List[np.ndarray]:
    """子模 N ⊆ A 的生成元"""
    basis = N.vectors()
    if method == REDUNDANT:
        return basis
    chosen: List[np.ndarray] = []
    if method == MINIMAL and radical is not None:
        # N/rad·N 的基即极小生成元 (Nakayama)
        floor = [mod_matmul(A.act(r), v.reshape(-1, 1), A.parent.modulus).reshape(-1)
                 for r in radical.basis() for v in basis]
    else:
        floor = []
    current = span_of(floor, A.dim, A.parent.modulus)
    for v in basis:
        if current.contains(v):
            continue
        chosen.append(v)
        current = span_of(current.vectors() + module_span(A, chosen).vectors(), A.dim, A.parent.modulus)
    return chosen


def free_resolution_finite(R: FiniteAlgebra, M: FiniteModule, cutoff: int = DEFAULT_CUTOFF,
                           method: str = None) -> FreeResolution:
    """
    M 的自由分解, 计算到 F_cutoff 为止

    Args:
        method: minimal (局部环) / greedy / redundant; 缺省时局部环取 minimal, 否则 greedy

    Returns:
        FreeResolution: 某一步核为零时 complete=True, 否则 truncated_at=cutoff
    """
    R.require_ring("free_resolution_finite")
    p, d = R.modulus, R.dim
    if method is None:
        method = MINIMAL if len(primitive_idempotents(R)) == 1 else GREEDY
    radical = nilradical(R) if method == MINIMAL else None

    gens = _choose_generators(M, Subspace.full(M.dim, p), method, radical)
    augmentation = np.array(gens, dtype=np.int64).reshape(len(gens), M.dim)
    ranks = [len(gens)]
    differentials: List[np.ndarray] = []
    ambient = M
    complete, truncated_at = False, None
    for stage in range(cutoff + 1):
        source = free_module(R, len(gens))
        scalar = _map_matrix(ambient, gens)
        kernel = span_of(kernel_array(scalar, p, source.dim), source.dim, p)
        if kernel.dim == 0:
            complete = True
            break
        if stage == cutoff:
            truncated_at = cutoff
            break
        new_gens = _choose_generators(source, kernel, method, radical)
        entries = np.zeros((len(gens), len(new_gens), d), dtype=np.int64)
        for t, g in enumerate(new_gens):
            entries[:, t, :] = g.reshape(len(gens), d)
        differentials.append(entries)
        ranks.append(len(new_gens))
        ambient, gens = source, new_gens
    logger.debug("自由分解 (%s): 秩 %s, complete=%s", method, ranks, complete)
    return FreeResolution(R, M, ranks, differentials, augmentation, method, complete, truncated_at)


def factor_modules(R: FiniteAlgebra, M: FiniteModule,
                   budget: int = DEFAULT_BUDGET) -> List[Tuple[LocalFactor, FiniteModule]]:
    """M ≅ ⊕ e_i M, 每个分量看作局部因子 R_i 上的模"""
    pieces = []
    for factor in local_decompose(R, budget):
        image = span_of(M.act(factor.idempotent).T, M.dim, R.modulus)
        pieces.append((factor, submodule_action(M, image, factor.local_factor, factor.embedding())))
    return pieces


def pd_cutoff(R: FiniteAlgebra, M: FiniteModule, cutoff: int = DEFAULT_CUTOFF,
              budget: int = DEFAULT_BUDGET) -> ExtendedInt:
    """
    投射维数: 各局部因子上极小分解长度的最大值; 有一个因子在截断内不终止则返回 EXCEEDS_CUTOFF

    零模记为 0。
    """
    result = 0
    for factor, piece in factor_modules(R, M, budget):
        if piece.dim == 0:
            continue
        resolution = free_resolution_finite(factor.local_factor, piece, cutoff, MINIMAL)
        if not resolution.complete:
            return EXCEEDS_CUTOFF
        result = max(result, resolution.length)
    return result


def _ext_from_resolution(resolution: FreeResolution, cutoff: int) -> List[int]:
    """Hom(F_•, R) 的上同调维数, 第 s 项 R^{a_s} 与其系数空间等同"""
    R = resolution.ring
    p, d = R.modulus, R.dim
    regular = regular_module(R)
    ranks = resolution.ranks + [0] * (cutoff + 2)
    delta_rank = []
    for s in range(cutoff + 1):
        if s < len(resolution.differentials):
            transposed = resolution.differentials[s].transpose(1, 0, 2)
            delta_rank.append(rank_array(expand_matrix(regular, transposed), p))
        else:
            delta_rank.append(0)
    if resolution.module.dim == 0:
        return [0] * (cutoff + 1)
    return [ranks[s] * d - delta_rank[s] - (delta_rank[s - 1] if s else 0) for s in range(cutoff + 1)]


def ext_dims_finite(R: FiniteAlgebra, M: FiniteModule, cutoff: int = DEFAULT_CUTOFF,
                    method: str = MINIMAL, budget: int = DEFAULT_BUDGET) -> ExtTable:
    """
    dim Ext^i(M, R), i = 0..cutoff

    minimal: 按局部因子求极小分解, Ext 维数相加
    redundant: 直接在 R 上用核的全部基向量作生成元, 作为对照
    """
    R.require_ring("ext_dims_finite")
    if method == REDUNDANT:
        resolution = free_resolution_finite(R, M, cutoff + 1, REDUNDANT)
        return ExtTable(_ext_from_resolution(resolution, cutoff), REDUNDANT)
    total = [0] * (cutoff + 1)
    per_factor = []
    for factor, piece in factor_modules(R, M, budget):
        resolution = free_resolution_finite(factor.local_factor, piece, cutoff + 1, MINIMAL)
        dims = _ext_from_resolution(resolution, cutoff)
        per_factor.append(dims)
        total = [a + b for a, b in zip(total, dims)]
    return ExtTable(total, MINIMAL, per_factor)


def residue_degree(R: FiniteAlgebra, factor: LocalFactor) -> int:
    """dim_{F_p} R/m"""
    return R.dim - factor.maximal_ideal.dim


def self_injective_dim_finite(R: FiniteAlgebra, baer_oracle: bool = True,
                              budget: int = DEFAULT_BUDGET) -> SelfInjectiveDim:
    """
    有限环的自内射维数: 每个局部因子的 socle 在剩余域上一维 (Gorenstein) 时为 0, 否则 ∞

    baer_oracle 为真时再用 Baer 判别法对照: id = 0 当且仅当每个理想 I 都有 Ext¹(R/I, R) = 0。

    Raises:
        BudgetExceeded: 只在 Baer 对照需要枚举理想格时抛出
    """
    R.require_ring("self_injective_dim_finite")
    factors = []
    value: ExtendedInt = 0
    for factor in local_decompose(R, budget):
        degree = residue_degree(R, factor)
        gorenstein = factor.socle_dim == degree
        factors.append({
            "maximal_ideal": factor.maximal_ideal.describe(),
            "socle_dim": factor.socle_dim,
            "residue_degree": degree,
            "gorenstein": gorenstein,
        })
        if not gorenstein:
            value = INFINITY
    result = SelfInjectiveDim(value, factors)
    if baer_oracle:
        result.baer_value = 0
        for ideal in enumerate_ideals(R, budget):
            ext = ext_dims_finite(R, quotient_module(R, ideal), cutoff=1, budget=budget)
            if ext.dims[1]:
                result.baer_value = INFINITY
                result.baer_witness = ideal.describe()
                break
    return result


def global_dimension_finite(R: FiniteAlgebra, cutoff: int = DEFAULT_CUTOFF,
                            budget: int = DEFAULT_BUDGET) -> ExtendedInt:
    """
    gl.dim R = sup pd(R/I), I 取遍理想格; 任何一个超出截断即返回 EXCEEDS_CUTOFF
    """
    result = 0
    for ideal in enumerate_ideals(R, budget):
        pd = pd_cutoff(R, quotient_module(R, ideal), cutoff, budget)
        if pd is EXCEEDS_CUTOFF:
            return EXCEEDS_CUTOFF
        result = max(result, pd)
    return result


# ---------- 多项式后端 ----------

def _columns(ring: PolyRing, gens: Sequence[ModuleVector], rank: int) -> List[List[Polynomial]]:
    """以 gens 为列的 rank × len(gens) 矩阵"""
    return [[g.components[i] for g in gens] for i in range(rank)]


def _transpose(matrix: List[List[Polynomial]]) -> List[List[Polynomial]]:
    return [list(col) for col in zip(*matrix)] if matrix else []


def poly_resolution(ring: PolyRing, I_gens: Sequence[Polynomial], stages: int,
                    relations: Sequence[Polynomial] = (),
                    max_rank: int = DEFAULT_MAX_RANK) -> Tuple[List[int], List[List[List[Polynomial]]]]:
    """
    R/I 的自由分解前 stages 个微分 d_1..d_stages (R = P/I₀), 每步 module_kernel 后去冗余

    Returns:
        (秩 [a_0, a_1, …], 微分矩阵列表); 某一步核为零后秩为 0、不再有微分

    Raises:
        ResolutionTooLarge: 某一项的秩超过 max_rank
    """
    first = prune_generators(ring, [ModuleVector(ring, (g,)) for g in I_gens], relations)
    ranks = [1, len(first)]
    if len(first) > max_rank:
        raise ResolutionTooLarge(1, len(first), max_rank)
    differentials = [_columns(ring, first, 1)] if first else []
    current = first
    for stage in range(2, stages + 1):
        if not current:
            break
        kernel = module_kernel(ring, _columns(ring, current, ranks[-2]), relations=relations)
        kernel = prune_generators(ring, kernel, relations)
        if len(kernel) > max_rank:
            raise ResolutionTooLarge(stage, len(kernel), max_rank)
        ranks.append(len(kernel))
        if not kernel:
            break
        differentials.append(_columns(ring, kernel, ranks[-2]))
        current = kernel
    return ranks, differentials


def ext_is_zero_poly(ring: PolyRing, I_gens: Sequence[Polynomial], i: int,
                     relations: Sequence[Polynomial] = (),
                     max_rank: int = DEFAULT_MAX_RANK) -> bool:
    """
    Ext^i(R/I, R) = 0 ?

    在 Hom(F_•, R) 上判定 ker δ^i ⊆ im δ^{i-1}, δ^s 为 d_{s+1} 的转置。
    """
    if i < 0:
        raise ValueError("i 必须非负")
    if not is_proper(ring, list(I_gens) + list(relations)):
        return True
    ranks, differentials = poly_resolution(ring, I_gens, i + 1, relations, max_rank)
    ranks = ranks + [0] * (i + 2)
    a_i = ranks[i]
    if a_i == 0:
        return True
    if i < len(differentials):
        kernel_gens = module_kernel(ring, _transpose(differentials[i]), cols=a_i, relations=relations)
    else:
        kernel_gens = [ModuleVector.unit(ring, a_i, j) for j in range(a_i)]
    image_gens: List[ModuleVector] = []
    if i >= 1 and i - 1 < len(differentials):
        # δ^{i-1} 的列 = d_i 的行
        image_gens = [ModuleVector(ring, tuple(row)) for row in differentials[i - 1]]
    return all(submodule_contains(image_gens, v, relations) for v in kernel_gens)


def ext_vanishing_profile(ring: PolyRing, I_gens: Sequence[Polynomial], upto: int,
                          relations: Sequence[Polynomial] = (),
                          max_rank: int = DEFAULT_MAX_RANK) -> List[bool]:
    return [ext_is_zero_poly(ring, I_gens, i, relations, max_rank) for i in range(upto + 1)]
