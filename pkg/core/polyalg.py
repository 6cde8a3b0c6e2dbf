#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
F_p 上多元多项式与 Buchberger 算法

单项式用定长指数元组表示; 多项式是 {指数元组: 系数} 的不可变映射,
不存储零系数。默认序为 grevlex, S-对按 normal 策略 (lcm 次数最低优先) 选取。
"""

import heapq
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from core.errors import ExponentOverflow, RingMismatch, UnknownVariable
from core.exactla import FpScalar, check_modulus, rank_array
from core.markers import INFINITE, QuotientSize
from core.poly_parser import evaluate, parse_expression

logger = logging.getLogger(__name__)

MAX_EXPONENT = 2 ** 15
ORDERS = ("grevlex", "lex")

Monomial = Tuple[int, ...]


# ---------- 单项式 ----------

@lru_cache(maxsize=65536)
def _grevlex_key(m: Monomial) -> Tuple:
    return (sum(m), tuple(-e for e in reversed(m)))


def monomial_key(order: str, m: Monomial) -> Tuple:
    """单项式序的排序键, 键越大单项式越大"""
    if order == "lex":
        return m
    return _grevlex_key(m)


def m_mul(a: Monomial, b: Monomial) -> Monomial:
    out = tuple(x + y for x, y in zip(a, b))
    for e in out:
        if e > MAX_EXPONENT:
            raise ExponentOverflow(e, MAX_EXPONENT)
    return out


def m_divides(a: Monomial, b: Monomial) -> bool:
    """a 是否整除 b"""
    return all(x <= y for x, y in zip(a, b))


def m_quotient(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def m_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def m_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# ---------- 多项式环 ----------

@dataclass(frozen=True)
class PolyRing:
    """F_p[x_1, ..., x_n] 及其单项式序"""
    modulus: int
    variables: Tuple[str, ...]
    order: str = "grevlex"

    def __post_init__(self):
        check_modulus(self.modulus)
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"变量名重复: {self.variables}")
        if self.order not in ORDERS:
            raise ValueError(f"未知单项式序: {self.order}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def key(self, m: Monomial) -> Tuple:
        return monomial_key(self.order, m)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, m: Monomial, c: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(m): c})

    def gen(self, name: str) -> "Polynomial":
        if name not in self.variables:
            raise UnknownVariable(name, self.variables)
        i = self.variables.index(name)
        return self.monomial(tuple(1 if k == i else 0 for k in range(self.nvars)))

    def gens(self) -> List["Polynomial"]:
        return [self.gen(v) for v in self.variables]

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(self, text)

    def __str__(self) -> str:
        return f"F_{self.modulus}[{','.join(self.variables)}]"


class Polynomial:
    """F_p[x_1..x_n] 的元素 (不可变)"""

    __slots__ = ("ring", "terms", "_lead", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, int]):
        p = ring.modulus
        clean: Dict[Monomial, int] = {}
        for m, c in terms.items():
            c = int(c) % p
            if c:
                if len(m) != ring.nvars:
                    raise ValueError(f"指数向量长度 {len(m)} 与变量数 {ring.nvars} 不符")
                for e in m:
                    if e > MAX_EXPONENT:
                        raise ExponentOverflow(e, MAX_EXPONENT)
                clean[tuple(m)] = c
        self.ring = ring
        self.terms = clean
        self._lead: Optional[Monomial] = None
        self._hash: Optional[int] = None

    # ----- 基本属性 -----

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def lead_monomial(self) -> Monomial:
        if self._lead is None:
            if not self.terms:
                raise ValueError("零多项式没有首项")
            self._lead = max(self.terms, key=self.ring.key)
        return self._lead

    @property
    def lead_coeff(self) -> int:
        return self.terms[self.lead_monomial]

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def sorted_terms(self) -> List[Tuple[Monomial, int]]:
        """按单项式序降序排列的项"""
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = pow(self.lead_coeff, -1, self.ring.modulus)
        return self.scale(inv)

    # ----- 运算 -----

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} 与 {other.ring} 不是同一个多项式环")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, FpScalar)):
            return self.ring.constant(int(other))
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, m: Monomial, c: int) -> "Polynomial":
        return Polynomial(self.ring, {m_mul(k, m): v * c for k, v in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.modulus
        terms: Dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m_mul(m1, m2)
                terms[m] = (terms.get(m, 0) + c1 * c2) % p
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("多项式不支持负幂")
        if k > MAX_EXPONENT:
            raise ExponentOverflow(k, MAX_EXPONENT)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.constant(other)
        return isinstance(other, Polynomial) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.ring.variables, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({self}, {self.ring})"


# ---------- 解析 ----------

class _PolyOps:
    """把语法树落到多项式环上"""

    def __init__(self, ring: PolyRing):
        self.ring = ring

    def constant(self, value: int) -> Polynomial:
        return self.ring.constant(value)

    def variable(self, name: str) -> Polynomial:
        return self.ring.gen(name)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def power(self, a, k):
        return a ** k


def parse_poly(ring: PolyRing, text: str) -> Polynomial:
    """
    解析多项式文本, 系数模 p 约化

    Raises:
        ParseError: 文法错误, 带字节偏移
        UnknownVariable: 变量不在环中
    """
    return evaluate(parse_expression(text), _PolyOps(ring))


# ---------- 约化与 Gröbner 基 ----------

def _check_ring(ring: PolyRing, polys: Iterable[Polynomial]):
    for f in polys:
        if f.ring != ring:
            raise RingMismatch(f"{f} 不属于 {ring}")


def reduce_terms(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """完全约化: 余式中没有任何一项被基的首项整除"""
    ring = f.ring
    p = ring.modulus
    work = dict(f.terms)
    remainder: Dict[Monomial, int] = {}
    leads = [(g.lead_monomial, pow(g.lead_coeff, -1, p), g) for g in basis if not g.is_zero()]
    while work:
        m = max(work, key=ring.key)
        c = work[m]
        for lm, inv, g in leads:
            if m_divides(lm, m):
                q = m_quotient(m, lm)
                factor = (c * inv) % p
                for gm, gc in g.terms.items():
                    mm = m_mul(gm, q)
                    v = (work.get(mm, 0) - factor * gc) % p
                    if v:
                        work[mm] = v
                    else:
                        work.pop(mm, None)
                break
        else:
            remainder[m] = c
            del work[m]
    return Polynomial(ring, remainder)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    lcm = m_lcm(f.lead_monomial, g.lead_monomial)
    p = f.ring.modulus
    a = f.mul_term(m_quotient(lcm, f.lead_monomial), pow(f.lead_coeff, -1, p))
    b = g.mul_term(m_quotient(lcm, g.lead_monomial), pow(g.lead_coeff, -1, p))
    return a - b


def reduce_basis(ring: PolyRing, basis: Sequence[Polynomial]) -> List[Polynomial]:
    """把 Gröbner 基化为既约形式, 并按首项降序排列"""
    monic = [g.monic() for g in basis if not g.is_zero()]
    minimal: List[Polynomial] = []
    for i, g in enumerate(monic):
        lm = g.lead_monomial
        dominated = False
        for j, h in enumerate(monic):
            if i == j:
                continue
            hm = h.lead_monomial
            if m_divides(hm, lm) and (hm != lm or j < i):
                dominated = True
                break
        if not dominated:
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = reduce_terms(g - g.ring.monomial(g.lead_monomial), others)
        reduced.append(ring.monomial(g.lead_monomial) + tail)
    reduced.sort(key=lambda g: ring.key(g.lead_monomial), reverse=True)
    return reduced


def buchberger(ring: PolyRing, gens: Sequence[Polynomial]) -> List[Polynomial]:
    """
    Buchberger 算法, 返回既约 Gröbner 基

    Args:
        ring: 多项式环
        gens: 生成元, 零多项式被丢弃; 全零输入得到空基

    Returns:
        List[Polynomial]: 首系数为 1, 首项两两不整除, 按首项降序
    """
    _check_ring(ring, gens)
    basis = [g.monic() for g in gens if not g.is_zero()]
    if not basis:
        return []
    heap: List[Tuple] = []

    def push(i: int, j: int):
        lcm = m_lcm(basis[i].lead_monomial, basis[j].lead_monomial)
        heapq.heappush(heap, (sum(lcm), ring.key(lcm), i, j))

    for j in range(len(basis)):
        for i in range(j):
            push(i, j)
    while heap:
        _, _, i, j = heapq.heappop(heap)
        f, g = basis[i], basis[j]
        if m_coprime(f.lead_monomial, g.lead_monomial):
            continue
        r = reduce_terms(s_polynomial(f, g), basis)
        if not r.is_zero():
            basis.append(r.monic())
            new = len(basis) - 1
            for k in range(new):
                push(k, new)
    result = reduce_basis(ring, basis)
    logger.debug("Gröbner 基: %d 个生成元 -> %d 个元素", len(gens), len(result))
    return result


def normal_form(f: Polynomial, gb: Sequence[Polynomial]) -> Polynomial:
    """
    关于 Gröbner 基的唯一余式; 余式为 0 当且仅当 f 属于理想

    Raises:
        RingMismatch: f 与基不在同一环
    """
    _check_ring(f.ring, gb)
    return reduce_terms(f, gb)


def ideal_contains(ring: PolyRing, gens: Sequence[Polynomial], f: Polynomial) -> bool:
    return normal_form(f, buchberger(ring, gens)).is_zero()


def is_proper(ring: PolyRing, gens: Sequence[Polynomial]) -> bool:
    """1 不在理想中"""
    return not normal_form(ring.one(), buchberger(ring, gens)).is_zero()


def quotient_monomial_basis(ring: PolyRing,
                            ideal_gens: Sequence[Polynomial]) -> Union[List[Monomial], QuotientSize]:
    """
    商环 P/I 的标准单项式基

    Returns:
        有限维时返回不被任何首项整除的单项式 (升序); 否则返回 INFINITE
    """
    gb = buchberger(ring, ideal_gens)
    leads = [g.lead_monomial for g in gb]
    if any(sum(m) == 0 for m in leads):
        return []
    bounds = []
    for i in range(ring.nvars):
        pure = [m[i] for m in leads if all(e == 0 for k, e in enumerate(m) if k != i) and m[i] > 0]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    standard = [m for m in product(*(range(b) for b in bounds))
                if not any(m_divides(lm, m) for lm in leads)]
    standard.sort(key=ring.key)
    return standard


def monomials_up_to(nvars: int, degree: int) -> List[Monomial]:
    """总次数 ≤ degree 的全部单项式"""
    if degree < 0:
        return []
    return [m for m in product(range(degree + 1), repeat=nvars) if sum(m) <= degree]


def bounded_span_contains(ring: PolyRing, gens: Sequence[Polynomial], f: Polynomial,
                          degree_cap: int) -> bool:
    """
    f 是否落在 {m·g : deg(m·g) ≤ degree_cap} 的 F_p 线性张成中

    只用线性代数, 作为 Gröbner 成员判定的对照: 返回 True 时 f 一定属于理想,
    返回 False 只说明次数上限内找不到表示。
    """
    _check_ring(ring, list(gens) + [f])
    columns = monomials_up_to(ring.nvars, degree_cap)
    index = {m: i for i, m in enumerate(columns)}
    target = np.zeros(len(columns), dtype=np.int64)
    for mono, c in f.terms.items():
        if mono not in index:
            return False
        target[index[mono]] = c
    rows = []
    for g in gens:
        if g.is_zero():
            continue
        for m in monomials_up_to(ring.nvars, degree_cap - g.total_degree()):
            row = np.zeros(len(columns), dtype=np.int64)
            for mono, c in (g * ring.monomial(m)).terms.items():
                row[index[mono]] = c
            rows.append(row)
    if not rows:
        return not target.any()
    base = rank_array(np.vstack(rows), ring.modulus)
    return rank_array(np.vstack(rows + [target]), ring.modulus) == base
