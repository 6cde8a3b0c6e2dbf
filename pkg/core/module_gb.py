#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
自由模 P^r 的子模 Gröbner 基、合冲 (核) 计算与子模成员判定

模项序为 position-over-term: 位置下标越小越大, 位置相同时比较环上的单项式序。
这样前 r 个位置构成消去块, 扩展 Buchberger 直接给出矩阵的核。

商环 R = P/I₀ 不单独建层: 所有计算都把 I₀·(每个自由基向量) 并入生成元。
"""

import heapq
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import RankMismatch, RingMismatch
from core.exactla import kernel_array
from core.polyalg import (Monomial, Polynomial, PolyRing, buchberger, m_divides, m_lcm,
                          m_mul, m_quotient, monomials_up_to, reduce_terms)

logger = logging.getLogger(__name__)

ModuleTerm = Tuple[int, Monomial]  # (位置, 单项式)


@dataclass(frozen=True)
class ModuleVector:
    """自由模 P^rank 中的向量"""
    ring: PolyRing
    components: Tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise ValueError("ModuleVector 的秩必须为正")
        for f in self.components:
            if f.ring != self.ring:
                raise RingMismatch(f"分量 {f} 不属于 {self.ring}")

    @classmethod
    def zero(cls, ring: PolyRing, rank: int) -> "ModuleVector":
        return cls(ring, tuple(ring.zero() for _ in range(rank)))

    @classmethod
    def unit(cls, ring: PolyRing, rank: int, i: int) -> "ModuleVector":
        return cls(ring, tuple(ring.one() if k == i else ring.zero() for k in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.components)

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        _check_rank(self.rank, other)
        return ModuleVector(self.ring, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        _check_rank(self.rank, other)
        return ModuleVector(self.ring, tuple(a - b for a, b in zip(self.components, other.components)))

    def scale(self, f: Polynomial) -> "ModuleVector":
        return ModuleVector(self.ring, tuple(f * a for a in self.components))

    def to_terms(self) -> Dict[ModuleTerm, int]:
        return {(pos, m): c for pos, f in enumerate(self.components) for m, c in f.terms.items()}

    @classmethod
    def from_terms(cls, ring: PolyRing, rank: int, terms: Dict[ModuleTerm, int]) -> "ModuleVector":
        parts: List[Dict[Monomial, int]] = [{} for _ in range(rank)]
        for (pos, m), c in terms.items():
            parts[pos][m] = c
        return cls(ring, tuple(Polynomial(ring, part) for part in parts))

    def __str__(self) -> str:
        return "(" + ", ".join(str(f) for f in self.components) + ")"


def _check_rank(rank: int, v: ModuleVector):
    if v.rank != rank:
        raise RankMismatch(rank, v.rank)


@dataclass(frozen=True)
class ModuleGB:
    """子模的 Gröbner 基"""
    ring: PolyRing
    rank: int
    generators: Tuple[ModuleVector, ...]
    order: str = "pot"
    reduced: bool = True

    def normal_form(self, v: ModuleVector) -> ModuleVector:
        _check_rank(self.rank, v)
        flats = [g.to_terms() for g in self.generators]
        return ModuleVector.from_terms(self.ring, self.rank, _reduce_flat(self.ring, v.to_terms(), flats))

    def contains(self, v: ModuleVector) -> bool:
        return self.normal_form(v).is_zero()


# ---------- 扁平表示上的 Buchberger ----------

def _term_key(ring: PolyRing):
    return lambda t: (-t[0], ring.key(t[1]))


def _lead(ring: PolyRing, terms: Dict[ModuleTerm, int]) -> ModuleTerm:
    return max(terms, key=_term_key(ring))


def _reduce_flat(ring: PolyRing, terms: Dict[ModuleTerm, int],
                 basis: Sequence[Dict[ModuleTerm, int]]) -> Dict[ModuleTerm, int]:
    """完全约化"""
    p = ring.modulus
    key = _term_key(ring)
    leads = []
    for g in basis:
        if g:
            lt = max(g, key=key)
            leads.append((lt, pow(g[lt], -1, p), g))
    work = dict(terms)
    remainder: Dict[ModuleTerm, int] = {}
    while work:
        t = max(work, key=key)
        c = work[t]
        pos, m = t
        for (lpos, lm), inv, g in leads:
            if lpos == pos and m_divides(lm, m):
                q = m_quotient(m, lm)
                factor = (c * inv) % p
                for (gpos, gm), gc in g.items():
                    tt = (gpos, m_mul(gm, q))
                    v = (work.get(tt, 0) - factor * gc) % p
                    if v:
                        work[tt] = v
                    else:
                        work.pop(tt, None)
                break
        else:
            remainder[t] = c
            del work[t]
    return remainder


def _monic(ring: PolyRing, terms: Dict[ModuleTerm, int]) -> Dict[ModuleTerm, int]:
    p = ring.modulus
    inv = pow(terms[_lead(ring, terms)], -1, p)
    return {t: (c * inv) % p for t, c in terms.items()}


def _s_vector(ring: PolyRing, f: Dict[ModuleTerm, int], g: Dict[ModuleTerm, int]) -> Dict[ModuleTerm, int]:
    p = ring.modulus
    (_, fm), (_, gm) = _lead(ring, f), _lead(ring, g)
    lcm = m_lcm(fm, gm)
    qf, qg = m_quotient(lcm, fm), m_quotient(lcm, gm)
    out: Dict[ModuleTerm, int] = {}
    for (pos, m), c in f.items():
        t = (pos, m_mul(m, qf))
        out[t] = (out.get(t, 0) + c) % p
    for (pos, m), c in g.items():
        t = (pos, m_mul(m, qg))
        out[t] = (out.get(t, 0) - c) % p
    return {t: c for t, c in out.items() if c}


def _groebner_flat(ring: PolyRing, gens: List[Dict[ModuleTerm, int]],
                   frozen: int = 0) -> List[Dict[ModuleTerm, int]]:
    """
    模 Gröbner 基 (未既约)

    Args:
        frozen: 前 frozen 个生成元已构成同位置的 Gröbner 基 (关系理想), 它们之间的 S-对跳过
    """
    basis = [_monic(ring, g) for g in gens]
    leads = [_lead(ring, g) for g in basis]
    heap: List[Tuple] = []

    def push(i: int, j: int):
        if leads[i][0] != leads[j][0]:
            return
        if i < frozen and j < frozen:
            return
        lcm = m_lcm(leads[i][1], leads[j][1])
        heapq.heappush(heap, (sum(lcm), -leads[i][0], ring.key(lcm), i, j))

    for j in range(len(basis)):
        for i in range(j):
            push(i, j)
    while heap:
        *_, i, j = heapq.heappop(heap)
        r = _reduce_flat(ring, _s_vector(ring, basis[i], basis[j]), basis)
        if r:
            basis.append(_monic(ring, r))
            leads.append(_lead(ring, basis[-1]))
            new = len(basis) - 1
            for k in range(new):
                push(k, new)
    return basis


def _interreduce(ring: PolyRing, basis: List[Dict[ModuleTerm, int]]) -> List[Dict[ModuleTerm, int]]:
    leads = [_lead(ring, g) for g in basis]
    keep = []
    for i, (pos, m) in enumerate(leads):
        dominated = any(
            j != i and leads[j][0] == pos and m_divides(leads[j][1], m) and (leads[j][1] != m or j < i)
            for j in range(len(basis))
        )
        if not dominated:
            keep.append(basis[i])
    reduced = []
    for i, g in enumerate(keep):
        lt = _lead(ring, g)
        tail = {t: c for t, c in g.items() if t != lt}
        rest = _reduce_flat(ring, tail, keep[:i] + keep[i + 1:])
        rest[lt] = 1
        reduced.append(rest)
    reduced.sort(key=lambda g: _term_key(ring)(_lead(ring, g)), reverse=True)
    return reduced


def _relation_vectors(ring: PolyRing, rank: int, positions: Sequence[int],
                      relations: Sequence[Polynomial]) -> List[Dict[ModuleTerm, int]]:
    rel_gb = buchberger(ring, relations) if relations else []
    return [{(pos, m): c for m, c in g.terms.items()} for pos in positions for g in rel_gb]


def module_groebner(ring: PolyRing, rank: int, gens: Sequence[ModuleVector],
                    relations: Sequence[Polynomial] = ()) -> ModuleGB:
    """
    子模 ⟨gens⟩ + I₀·P^rank 的既约 Gröbner 基

    Raises:
        RankMismatch: 生成元秩不一致
    """
    for v in gens:
        _check_rank(rank, v)
        if v.ring != ring:
            raise RingMismatch()
    rel = _relation_vectors(ring, rank, range(rank), relations)
    flats = rel + [v.to_terms() for v in gens if not v.is_zero()]
    if not flats:
        return ModuleGB(ring, rank, ())
    basis = _interreduce(ring, _groebner_flat(ring, flats, frozen=len(rel)))
    return ModuleGB(ring, rank, tuple(ModuleVector.from_terms(ring, rank, g) for g in basis))


def submodule_contains(gens: Sequence[ModuleVector], v: ModuleVector,
                       relations: Sequence[Polynomial] = ()) -> bool:
    """
    v 是否属于 gens 生成的子模 (既约模 Gröbner 基的余式为零)

    Raises:
        RankMismatch: 秩不一致
    """
    for g in gens:
        _check_rank(v.rank, g)
    if v.is_zero():
        return True
    return module_groebner(v.ring, v.rank, gens, relations).contains(v)


def reduce_modulo(ring: PolyRing, v: ModuleVector, relations: Sequence[Polynomial]) -> ModuleVector:
    """分量逐个模关系理想约化"""
    if not relations:
        return v
    gb = buchberger(ring, relations)
    return ModuleVector(ring, tuple(reduce_terms(f, gb) for f in v.components))


def matrix_apply(ring: PolyRing, matrix: Sequence[Sequence[Polynomial]], v: ModuleVector,
                 relations: Sequence[Polynomial] = ()) -> Optional[ModuleVector]:
    """计算 matrix · v; 矩阵行数为 0 时返回 None"""
    if not matrix:
        return None
    cols = len(matrix[0])
    _check_rank(cols, v)
    out = []
    for row in matrix:
        acc = ring.zero()
        for a, b in zip(row, v.components):
            acc = acc + a * b
        out.append(acc)
    return reduce_modulo(ring, ModuleVector(ring, tuple(out)), relations)


def prune_generators(ring: PolyRing, gens: Sequence[ModuleVector],
                     relations: Sequence[Polynomial] = ()) -> List[ModuleVector]:
    """去掉能由其余生成元生成的冗余生成元 (从后往前贪心)"""
    kept = [g for g in gens if not reduce_modulo(ring, g, relations).is_zero()]
    i = len(kept) - 1
    while i >= 0 and len(kept) > 1:
        others = kept[:i] + kept[i + 1:]
        if submodule_contains(others, kept[i], relations):
            kept = others
        i -= 1
    return kept


def module_kernel(ring: PolyRing, matrix: Sequence[Sequence[Polynomial]], cols: int = None,
                  relations: Sequence[Polynomial] = ()) -> List[ModuleVector]:
    """
    矩阵 A: R^c → R^r 的核的生成元

    对 (A 的第 j 列, e_j) ∈ P^{r+c} 做 POT 序下的扩展 Buchberger,
    首块为零的基元素的尾块即生成核; 关系理想并入首块。

    Args:
        matrix: r 行 c 列多项式矩阵
        cols: r = 0 时必须给出列数
        relations: 商环 R = P/I₀ 的关系

    Returns:
        List[ModuleVector]: 核的生成元, 零核返回空列表
    """
    r = len(matrix)
    c = len(matrix[0]) if r else cols
    if c is None:
        raise ValueError("零行矩阵需要显式给出列数")
    for row in matrix:
        if len(row) != c:
            raise RankMismatch(c, len(row))
        for f in row:
            if f.ring != ring:
                raise RingMismatch(f"矩阵元素 {f} 不属于 {ring}")
    if r == 0:
        return [ModuleVector.unit(ring, c, j) for j in range(c)]
    total = r + c
    gens: List[Dict[ModuleTerm, int]] = []
    for j in range(c):
        terms: Dict[ModuleTerm, int] = {}
        for i in range(r):
            for m, coeff in matrix[i][j].terms.items():
                terms[(i, m)] = coeff
        terms[(r + j, (0,) * ring.nvars)] = 1
        gens.append(terms)
    rel = _relation_vectors(ring, total, range(r), relations)
    basis = _interreduce(ring, _groebner_flat(ring, rel + gens, frozen=len(rel)))
    kernel: List[ModuleVector] = []
    for g in basis:
        if all(pos >= r for pos, _ in g):
            shifted = {(pos - r, m): coeff for (pos, m), coeff in g.items()}
            kernel.append(ModuleVector.from_terms(ring, c, shifted))
    kernel = [reduce_modulo(ring, v, relations) for v in kernel]
    kernel = [v for v in kernel if not v.is_zero()]
    logger.debug("核计算: %dx%d 矩阵 -> %d 个生成元", r, c, len(kernel))
    return kernel


def bounded_kernel_vectors(ring: PolyRing, matrix: Sequence[Sequence[Polynomial]], degree_cap: int,
                           relations: Sequence[Polynomial] = ()) -> List[ModuleVector]:
    """
    核中各分量次数 ≤ degree_cap 的全部向量, 以 F_p 基的形式给出

    v ↦ NF(A·v) 对 F_p 线性, 未知数取 (列 j, 单项式 m), 直接解线性方程组。
    不经过 Gröbner 基的核计算, 用作 module_kernel 完备性的对照。
    """
    if not matrix:
        raise ValueError("对照计算需要至少一行")
    r, c = len(matrix), len(matrix[0])
    gb = buchberger(ring, relations) if relations else []
    unknowns = [(j, m) for j in range(c) for m in monomials_up_to(ring.nvars, degree_cap)]
    images: List[Dict[Tuple[int, Monomial], int]] = []
    for j, m in unknowns:
        shift = ring.monomial(m)
        image: Dict[Tuple[int, Monomial], int] = {}
        for i in range(r):
            f = matrix[i][j] * shift
            if gb:
                f = reduce_terms(f, gb)
            for mono, coeff in f.terms.items():
                image[(i, mono)] = coeff
        images.append(image)
    keys = sorted({key for image in images for key in image})
    index = {key: k for k, key in enumerate(keys)}
    system = np.zeros((len(keys), len(unknowns)), dtype=np.int64)
    for col, image in enumerate(images):
        for key, coeff in image.items():
            system[index[key], col] = coeff
    vectors = []
    for solution in kernel_array(system, ring.modulus, len(unknowns)):
        components: List[Dict[Monomial, int]] = [{} for _ in range(c)]
        for k, coeff in enumerate(solution):
            if coeff:
                j, m = unknowns[k]
                components[j][m] = int(coeff)
        vectors.append(ModuleVector(ring, tuple(Polynomial(ring, t) for t in components)))
    return vectors
