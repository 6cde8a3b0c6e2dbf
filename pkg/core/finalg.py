#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
F_p 上有限维交换含幺代数后端

代数由结构常数给出 (mul_table[i][j] 是 e_i·e_j 的坐标向量), 构造时校验交换律、
结合律与单位元。理想以规范行阶梯基为身份, 生成元列表只用于报告。
零代数 (dim 0) 可以作为模出现, 但需要环的操作会拒绝它。
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import (BadModule, BadUnit, BudgetExceeded, InfiniteDimensional, NotAssociative,
                         NotCommutative, UnknownVariable, ZeroRing)
from core.exactla import (FpMatrix, Subspace, check_modulus, complement_indices, kernel_array, rank_array,
                          mod_matmul, span_of)
from core.markers import INFINITE
from core.poly_parser import evaluate, parse_expression
from core.polyalg import (Monomial, Polynomial, PolyRing, buchberger, normal_form,
                          quotient_monomial_basis)

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 4096


def monomial_label(ring: PolyRing, m: Monomial) -> str:
    factors = []
    for name, e in zip(ring.variables, m):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


def _vec(data, p: int, length: int) -> np.ndarray:
    arr = np.mod(np.asarray(data, dtype=np.int64).reshape(-1), p)
    if arr.size != length:
        raise ValueError(f"向量长度 {arr.size} 与维数 {length} 不符")
    return arr


class FiniteAlgebra:
    """F_p 上的有限维交换含幺代数"""

    def __init__(self, modulus: int, mul_table, unit, basis_names: Sequence[str] = None,
                 generators: Dict[str, Sequence[int]] = None, presentation: Optional[Tuple] = None,
                 validate: bool = True):
        """
        Args:
            modulus: 素数 p
            mul_table: d×d×d 结构常数
            unit: 单位元坐标
            basis_names: 基元素名称
            generators: 可在表达式中使用的名字 -> 元素坐标
            presentation: 多项式表示 (PolyRing, Gröbner 基, 标准单项式), 可选
            validate: 是否校验环公理
        """
        p = check_modulus(modulus)
        table = np.mod(np.asarray(mul_table, dtype=np.int64), p)
        d = len(unit)
        table = table.reshape(d, d, d)
        table.setflags(write=False)
        self.modulus = p
        self.dim = d
        self.mul_table = table
        self.unit = _vec(unit, p, d)
        self.unit.setflags(write=False)
        self.basis_names = tuple(basis_names) if basis_names else tuple(f"e{i}" for i in range(d))
        if len(self.basis_names) != d:
            raise ValueError("基名称个数与维数不符")
        if generators is None:
            generators = {name: np.eye(d, dtype=np.int64)[i]
                          for i, name in enumerate(self.basis_names) if name.isidentifier()}
        self.generators = {name: _vec(v, p, d) for name, v in generators.items()}
        self.presentation = presentation
        self._flat = table.reshape(d, d * d) if d else table.reshape(0, 0)
        self._basis_left = None
        if validate:
            self._validate()

    # ----- 公理校验 -----

    def _validate(self):
        d, p = self.dim, self.modulus
        for i in range(d):
            for j in range(i + 1, d):
                if not np.array_equal(self.mul_table[i, j], self.mul_table[j, i]):
                    raise NotCommutative((i, j))
        left = self.basis_left_matrices()
        for i in range(d):
            for j in range(d):
                lhs = mod_matmul(left[i], left[j], p)
                rhs = self.left_matrix(self.mul_table[i, j])
                if not np.array_equal(lhs, rhs):
                    k = int(np.nonzero((lhs != rhs).any(axis=0))[0][0])
                    raise NotAssociative((i, j, k))
        unit_left = self.left_matrix(self.unit)
        if d and not np.array_equal(unit_left, np.eye(d, dtype=np.int64)):
            k = int(np.nonzero((unit_left != np.eye(d, dtype=np.int64)).any(axis=0))[0][0])
            raise BadUnit((k,))

    # ----- 元素运算 -----

    def require_ring(self, operation: str):
        if self.dim == 0:
            raise ZeroRing(operation)

    def element(self, data) -> np.ndarray:
        return _vec(data, self.modulus, self.dim)

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def one(self) -> np.ndarray:
        return self.unit.copy()

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.zero()
        v[i] = 1
        return v

    def left_matrix(self, a) -> np.ndarray:
        """乘 a 的矩阵 L(a), 第 j 列为 a·e_j"""
        d = self.dim
        if d == 0:
            return np.zeros((0, 0), dtype=np.int64)
        a = self.element(a)
        return mod_matmul(a.reshape(1, d), self._flat, self.modulus).reshape(d, d).T.copy()

    def basis_left_matrices(self) -> List[np.ndarray]:
        if self._basis_left is None:
            self._basis_left = [self.left_matrix(self.basis_vector(i)) for i in range(self.dim)]
        return self._basis_left

    def mul(self, a, b) -> np.ndarray:
        if self.dim == 0:
            return self.zero()
        b = self.element(b)
        return mod_matmul(self.left_matrix(a), b.reshape(-1, 1), self.modulus).reshape(-1)

    def add(self, a, b) -> np.ndarray:
        return np.mod(self.element(a) + self.element(b), self.modulus)

    def sub(self, a, b) -> np.ndarray:
        return np.mod(self.element(a) - self.element(b), self.modulus)

    def scale(self, a, c: int) -> np.ndarray:
        return np.mod(self.element(a) * (int(c) % self.modulus), self.modulus)

    def power(self, a, k: int) -> np.ndarray:
        result = self.one()
        base = self.element(a)
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def is_unit(self, a) -> bool:
        """L(a) 可逆当且仅当 a 是单位"""
        return rank_array(self.left_matrix(a), self.modulus) == self.dim

    def is_zero_divisor(self, a) -> bool:
        """a 的乘法矩阵不是单射"""
        return rank_array(self.left_matrix(a), self.modulus) < self.dim

    def element_from_text(self, text: str) -> np.ndarray:
        """在代数中对多项式文法表达式求值, 变量取 generators 中的名字"""
        return evaluate(parse_expression(text), _AlgebraOps(self))

    def format_element(self, v) -> str:
        v = self.element(v)
        pieces = []
        for c, name in zip(v, self.basis_names):
            c = int(c)
            if c == 0:
                continue
            if name == "1":
                pieces.append(str(c))
            elif c == 1:
                pieces.append(name)
            else:
                pieces.append(f"{c}*{name}")
        return " + ".join(pieces) if pieces else "0"

    def describe(self) -> Dict:
        return {
            "p": self.modulus,
            "dim": self.dim,
            "basis": list(self.basis_names),
            "mul_table": self.mul_table.tolist(),
            "unit": self.unit.tolist(),
        }

    def __repr__(self) -> str:
        return f"FiniteAlgebra(p={self.modulus}, dim={self.dim}, basis={list(self.basis_names)})"


class _AlgebraOps:
    def __init__(self, algebra: FiniteAlgebra):
        self.algebra = algebra

    def constant(self, value: int):
        return self.algebra.scale(self.algebra.unit, value)

    def variable(self, name: str):
        if name not in self.algebra.generators:
            raise UnknownVariable(name, tuple(self.algebra.generators))
        return self.algebra.generators[name].copy()

    def add(self, a, b):
        return self.algebra.add(a, b)

    def sub(self, a, b):
        return self.algebra.sub(a, b)

    def mul(self, a, b):
        return self.algebra.mul(a, b)

    def neg(self, a):
        return self.algebra.scale(a, -1)

    def power(self, a, k):
        return self.algebra.power(a, k)


# ---------- 理想与模 ----------

@dataclass(frozen=True, eq=False)
class AlgIdeal:
    """有限代数的理想"""
    parent: FiniteAlgebra
    space: Subspace
    generators: Tuple[Tuple[int, ...], ...] = ()

    @property
    def dim(self) -> int:
        return self.space.dim

    def is_zero(self) -> bool:
        return self.space.dim == 0

    def is_whole(self) -> bool:
        return self.space.dim == self.parent.dim

    def contains(self, v) -> bool:
        return self.space.contains(v)

    def basis(self) -> List[np.ndarray]:
        return self.space.vectors()

    def key(self):
        return self.space.key()

    def describe(self) -> str:
        if self.is_zero():
            return "0"
        if self.is_whole():
            return "R"
        gens = self.generators or tuple(tuple(int(x) for x in b) for b in self.basis())
        return "⟨" + ", ".join(self.parent.format_element(g) for g in gens) + "⟩"

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgIdeal) and self.space == other.space

    def __hash__(self) -> int:
        return hash(self.space)

    def __repr__(self) -> str:
        return f"AlgIdeal({self.describe()}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class FiniteModule:
    """有限代数上的有限维模, action[k] 是基元素 e_k 的作用矩阵"""
    parent: FiniteAlgebra
    dim: int
    action: Tuple[np.ndarray, ...]
    name: str = "M"

    def __post_init__(self):
        acts = []
        for a in self.action:
            a = np.mod(np.asarray(a, dtype=np.int64).reshape(self.dim, self.dim), self.parent.modulus)
            a.setflags(write=False)
            acts.append(a)
        object.__setattr__(self, "action", tuple(acts))
        if len(acts) != self.parent.dim:
            raise BadModule("作用矩阵个数与代数维数不符",
                            {"expected": self.parent.dim, "got": len(acts)})

    def act(self, r) -> np.ndarray:
        """环元素 r 的作用矩阵 Σ r_k action[k]"""
        m, d, p = self.dim, self.parent.dim, self.parent.modulus
        if m == 0 or d == 0:
            return np.zeros((m, m), dtype=np.int64)
        r = self.parent.element(r)
        stacked = np.stack(self.action).reshape(d, m * m)
        return mod_matmul(r.reshape(1, d), stacked, p).reshape(m, m)

    def validate(self) -> "FiniteModule":
        """校验作用与乘法表相容, 单位元作用为恒等"""
        R, p = self.parent, self.parent.modulus
        for i in range(R.dim):
            for j in range(R.dim):
                lhs = mod_matmul(self.action[i], self.action[j], p)
                rhs = self.act(R.mul_table[i, j])
                if not np.array_equal(lhs, rhs):
                    raise BadModule("模作用与乘法表不相容", {"pair": [i, j]})
        if not np.array_equal(self.act(R.unit), np.eye(self.dim, dtype=np.int64)):
            raise BadModule("单位元作用不是恒等")
        return self


def regular_module(R: FiniteAlgebra) -> FiniteModule:
    return FiniteModule(R, R.dim, tuple(R.basis_left_matrices()), name="R")


def free_module(R: FiniteAlgebra, rank: int) -> FiniteModule:
    """R^rank, 坐标按块排列: 第 t 块是第 t 个分量"""
    eye = np.eye(rank, dtype=np.int64)
    return FiniteModule(R, rank * R.dim, tuple(np.kron(eye, L) for L in R.basis_left_matrices()),
                        name=f"R^{rank}")


def module_span(M: FiniteModule, vectors: Sequence[np.ndarray]) -> Subspace:
    """vectors 生成的子模, 作为 M 的子空间"""
    p = M.parent.modulus
    images = [mod_matmul(a, np.asarray(v, dtype=np.int64).reshape(-1, 1), p).reshape(-1)
              for v in vectors for a in M.action]
    return span_of(images, M.dim, p)


def zero_module(R: FiniteAlgebra) -> FiniteModule:
    return FiniteModule(R, 0, tuple(np.zeros((0, 0), dtype=np.int64) for _ in range(R.dim)), name="0")


def quotient_module(R: FiniteAlgebra, I: AlgIdeal) -> FiniteModule:
    """循环模 R/I, 基取 I 的规范基的非主元坐标"""
    keep = complement_indices(I.space)
    m = len(keep)
    actions = []
    for k in range(R.dim):
        left = R.basis_left_matrices()[k]
        act = np.zeros((m, m), dtype=np.int64)
        for t, c in enumerate(keep):
            act[:, t] = I.space.reduce(left[:, c])[keep]
        actions.append(act)
    return FiniteModule(R, m, tuple(actions), name=f"R/{I.describe()}")


def submodule_action(M: FiniteModule, space: Subspace,
                     algebra: FiniteAlgebra, elements: Sequence[np.ndarray]) -> FiniteModule:
    """
    M 的子空间 space 在 elements (以 M.parent 坐标给出, 对应 algebra 的基) 作用下的模

    用于把 e·M 看作局部因子上的模。
    """
    basis = space.vectors()
    actions = []
    for r in elements:
        a = M.act(r)
        act = np.zeros((space.dim, space.dim), dtype=np.int64)
        for t, u in enumerate(basis):
            act[:, t] = space.coordinates(mod_matmul(a, u.reshape(-1, 1), M.parent.modulus).reshape(-1))
        actions.append(act)
    return FiniteModule(algebra, space.dim, tuple(actions), name=M.name)


def expand_matrix(M: FiniteModule, entries: np.ndarray) -> np.ndarray:
    """
    环上的矩阵 (rows×cols 个环元素) 展开为 M^cols → M^rows 的 F_p 矩阵

    Args:
        entries: 形状 (rows, cols, d) 的环元素网格
    """
    rows, cols = entries.shape[0], entries.shape[1]
    m, d, p = M.dim, M.parent.dim, M.parent.modulus
    if rows == 0 or cols == 0 or m == 0:
        return np.zeros((rows * m, cols * m), dtype=np.int64)
    stacked = np.stack(M.action).reshape(d, m * m)
    blocks = mod_matmul(entries.reshape(rows * cols, d), stacked, p).reshape(rows, cols, m, m)
    return blocks.transpose(0, 2, 1, 3).reshape(rows * m, cols * m)


# ---------- 构造 ----------

def algebra_from_structure_constants(modulus: int, mul_table, unit,
                                     basis_names: Sequence[str] = None) -> FiniteAlgebra:
    """
    由结构常数构造并校验代数

    Raises:
        NotCommutative / NotAssociative / BadUnit: 指出违例的基元组
    """
    algebra = FiniteAlgebra(modulus, mul_table, unit, basis_names)
    algebra.require_ring("algebra_from_structure_constants")
    return algebra


def algebra_from_zero_dim_quotient(ring: PolyRing,
                                   ideal_gens: Sequence[Polynomial]) -> Tuple[FiniteAlgebra, List[str]]:
    """
    零维商环 P/I 作为有限代数, 基为标准单项式

    Raises:
        InfiniteDimensional: 商环不是有限维
    """
    monomials = quotient_monomial_basis(ring, ideal_gens)
    if monomials is INFINITE:
        raise InfiniteDimensional([str(g) for g in ideal_gens])
    gb = buchberger(ring, ideal_gens)
    d = len(monomials)
    index = {m: i for i, m in enumerate(monomials)}

    def coords(f: Polynomial) -> np.ndarray:
        v = np.zeros(d, dtype=np.int64)
        for m, c in normal_form(f, gb).terms.items():
            v[index[m]] = c
        return v

    table = np.zeros((d, d, d), dtype=np.int64)
    for i, a in enumerate(monomials):
        for j, b in enumerate(monomials):
            table[i, j] = coords(ring.monomial(a) * ring.monomial(b))
    labels = [monomial_label(ring, m) for m in monomials]
    generators = {name: coords(ring.gen(name)) for name in ring.variables}
    algebra = FiniteAlgebra(ring.modulus, table, coords(ring.one()), labels, generators,
                            presentation=(ring, tuple(gb), tuple(monomials)))
    logger.debug("零维商环 %s / %s: dim %d", ring, [str(g) for g in ideal_gens], d)
    return algebra, labels


def product_algebra(A: FiniteAlgebra, B: FiniteAlgebra) -> FiniteAlgebra:
    """直积 A × B, 结构常数分块对角"""
    if A.modulus != B.modulus:
        raise ValueError("直积要求同一特征")
    da, db = A.dim, B.dim
    d = da + db
    table = np.zeros((d, d, d), dtype=np.int64)
    table[:da, :da, :da] = A.mul_table
    table[da:, da:, da:] = B.mul_table
    unit = np.concatenate([A.unit, B.unit])
    names = [f"{n}_L" if n.isidentifier() else f"L{i}" for i, n in enumerate(A.basis_names)]
    names += [f"{n}_R" if n.isidentifier() else f"R{i}" for i, n in enumerate(B.basis_names)]
    generators = {f"{g}_L": np.concatenate([v, np.zeros(db, dtype=np.int64)]) for g, v in A.generators.items()}
    generators.update({f"{g}_R": np.concatenate([np.zeros(da, dtype=np.int64), v])
                       for g, v in B.generators.items()})
    generators["e_L"] = np.concatenate([A.unit, np.zeros(db, dtype=np.int64)])
    generators["e_R"] = np.concatenate([np.zeros(da, dtype=np.int64), B.unit])
    return FiniteAlgebra(A.modulus, table, unit, names, generators)


def truncated_polynomial_algebra(p: int, n: int, deg: int) -> FiniteAlgebra:
    """trunc(p,n,deg) = F_p[x_1..x_n] / (所有 deg 次单项式)"""
    names = {1: ["x"], 2: ["x", "y"], 3: ["x", "y", "z"]}.get(n, [f"x{i + 1}" for i in range(n)])
    ring = PolyRing(p, tuple(names))
    relations = [ring.monomial(m) for m in product(range(deg + 1), repeat=n) if sum(m) == deg]
    return algebra_from_zero_dim_quotient(ring, relations)[0]


def chain_algebra(p: int, k: int) -> FiniteAlgebra:
    """chain(p,k) = F_p[x]/(x^k)"""
    ring = PolyRing(p, ("x",))
    return algebra_from_zero_dim_quotient(ring, [ring.monomial((k,))])[0]


def field_product_algebra(p: int, m: int) -> FiniteAlgebra:
    """F_p^m, 基为正交幂等元 e1..em"""
    table = np.zeros((m, m, m), dtype=np.int64)
    for i in range(m):
        table[i, i, i] = 1
    return FiniteAlgebra(p, table, np.ones(m, dtype=np.int64), [f"e{i + 1}" for i in range(m)])


def idealization(A: FiniteAlgebra, M: FiniteModule) -> FiniteAlgebra:
    """
    A(+)M: A ⊕ M 上 (a,m)(a',m') = (aa', am' + a'm), M 嵌入为平方零理想
    """
    d, m = A.dim, M.dim
    n = d + m
    table = np.zeros((n, n, n), dtype=np.int64)
    table[:d, :d, :d] = A.mul_table
    for i in range(d):
        for t in range(m):
            column = M.action[i][:, t]
            table[i, d + t, d:] = column
            table[d + t, i, d:] = column
    unit = np.concatenate([A.unit, np.zeros(m, dtype=np.int64)])
    module_names = ["t"] if m == 1 else [f"t{k + 1}" for k in range(m)]
    generators = {g: np.concatenate([v, np.zeros(m, dtype=np.int64)]) for g, v in A.generators.items()}
    for k, name in enumerate(module_names):
        vec = np.zeros(n, dtype=np.int64)
        vec[d + k] = 1
        generators[name] = vec
    return FiniteAlgebra(A.modulus, table, unit, list(A.basis_names) + module_names, generators)


# ---------- 理想运算 ----------

def ideal_closure(R: FiniteAlgebra, gens: Sequence) -> AlgIdeal:
    """
    gens 生成的理想: 含 gens 的最小乘法封闭子空间

    R·g 是 L(g) 的列空间; 迭代到不动点。
    """
    p, d = R.modulus, R.dim
    gens = [R.element(g) for g in gens]
    space = span_of(gens, d, p)
    while True:
        products = [column for b in space.basis for column in R.left_matrix(b).T]
        grown = span_of(space.vectors() + products, d, p) if products else space
        if grown.dim == space.dim:
            break
        space = grown
    return AlgIdeal(R, space, tuple(tuple(int(x) for x in g) for g in gens))


def ideal_from_text(R: FiniteAlgebra, texts: Sequence[str]) -> AlgIdeal:
    return ideal_closure(R, [R.element_from_text(t) for t in texts])


def whole_ideal(R: FiniteAlgebra) -> AlgIdeal:
    return AlgIdeal(R, Subspace.full(R.dim, R.modulus), (tuple(int(x) for x in R.unit),))


def zero_ideal(R: FiniteAlgebra) -> AlgIdeal:
    return AlgIdeal(R, Subspace.zero(R.dim, R.modulus), ())


def annihilator(R: FiniteAlgebra, I: AlgIdeal) -> AlgIdeal:
    """
    ann(I) = {r : r·I = 0}, 对 I 的基取乘法矩阵的核之交
    """
    p, d = R.modulus, R.dim
    if I.is_zero():
        return whole_ideal(R)
    stacked = np.vstack([R.left_matrix(b) for b in I.basis()])
    null = kernel_array(stacked, p, d)
    return AlgIdeal(R, span_of(null, d, p), ())


def quotient_algebra(R: FiniteAlgebra, I: AlgIdeal) -> Tuple[FiniteAlgebra, FpMatrix]:
    """
    R/I 及投影矩阵; R/R 得到零代数 (只能当作模使用)
    """
    p, d = R.modulus, R.dim
    keep = complement_indices(I.space)
    q = len(keep)

    def project(v) -> np.ndarray:
        return I.space.reduce(v)[keep]

    projection = np.zeros((q, d), dtype=np.int64)
    for j in range(d):
        projection[:, j] = project(R.basis_vector(j))
    table = np.zeros((q, q, q), dtype=np.int64)
    for a, ca in enumerate(keep):
        for b, cb in enumerate(keep):
            table[a, b] = project(R.mul_table[ca, cb])
    generators = {name: project(v) for name, v in R.generators.items()}
    algebra = FiniteAlgebra(p, table, project(R.unit) if q else np.zeros(0, dtype=np.int64),
                            [R.basis_names[c] for c in keep], generators)
    return algebra, FpMatrix(projection, p, shape=(q, d))


def is_nilpotent(R: FiniteAlgebra, x) -> bool:
    """x 幂零当且仅当乘法矩阵 L(x) 幂零"""
    left = R.left_matrix(x)
    power = np.eye(R.dim, dtype=np.int64)
    for _ in range(R.dim):
        power = mod_matmul(power, left, R.modulus)
    return not power.any()


def frobenius_matrix(R: FiniteAlgebra) -> np.ndarray:
    """x ↦ x^p 在特征 p 下是 F_p-线性的, 第 j 列为 e_j^p"""
    d = R.dim
    frob = np.zeros((d, d), dtype=np.int64)
    for j in range(d):
        frob[:, j] = R.power(R.basis_vector(j), R.modulus)
    return frob


def nilradical(R: FiniteAlgebra) -> AlgIdeal:
    """幂零根 = ker(x ↦ x^{p^K}), p^K ≥ dim R"""
    p, d = R.modulus, R.dim
    frob = frobenius_matrix(R)
    power = np.eye(d, dtype=np.int64)
    reach = 1
    while True:
        power = mod_matmul(frob, power, p)
        reach *= p
        if reach >= d:
            break
    return AlgIdeal(R, span_of(kernel_array(power, p, d), d, p), ())


@dataclass(frozen=True, eq=False)
class LocalFactor:
    """R 的一个局部直积因子 e·R"""
    maximal_ideal: AlgIdeal
    local_factor: FiniteAlgebra
    socle_dim: int
    idempotent: np.ndarray
    factor_space: Subspace = field(repr=False)

    def embedding(self) -> List[np.ndarray]:
        """因子基在 R 中的坐标"""
        return self.factor_space.vectors()


def primitive_idempotents(R: FiniteAlgebra, budget: int = DEFAULT_BUDGET) -> List[np.ndarray]:
    """
    本原幂等元: {x : x^p = x} ≅ F_p^t, 枚举其中的幂等元并逐次分裂

    Raises:
        BudgetExceeded: p^t 超过预算
    """
    p, d = R.modulus, R.dim
    fixed = np.mod(frobenius_matrix(R) - np.eye(d, dtype=np.int64), p)
    berlekamp = span_of(kernel_array(fixed, p, d), d, p)
    t = berlekamp.dim
    if p ** t > budget:
        raise BudgetExceeded(p ** t, budget)
    parts = [R.one()]
    for coeffs in product(range(p), repeat=t):
        b = np.mod(np.asarray(coeffs, dtype=np.int64) @ berlekamp.basis, p) if t else R.zero()
        if not b.any() or not np.array_equal(R.mul(b, b), b):
            continue
        complement = R.sub(R.one(), b)
        refined = []
        for e in parts:
            left, right = R.mul(e, b), R.mul(e, complement)
            if left.any() and right.any():
                refined.extend([left, right])
            else:
                refined.append(e)
        parts = refined
    return parts


def local_decompose(R: FiniteAlgebra, budget: int = DEFAULT_BUDGET) -> List[LocalFactor]:
    """
    R ≅ Π R_i 的局部分解

    Returns:
        List[LocalFactor]: 每个因子的极大理想 m_i = N + (1 - e_i)R、因子代数与 socle 维数,
        按极大理想的规范基排序
    """
    R.require_ring("local_decompose")
    p = R.modulus
    radical = nilradical(R)
    factors = []
    for e in primitive_idempotents(R, budget):
        complement = R.sub(R.one(), e)
        maximal = ideal_closure(R, radical.basis() + [complement])
        space = ideal_closure(R, [e]).space
        basis = space.vectors()
        k = len(basis)
        table = np.zeros((k, k, k), dtype=np.int64)
        for a in range(k):
            for b in range(k):
                table[a, b] = space.coordinates(R.mul(basis[a], basis[b]))
        names = [R.format_element(b) for b in basis]
        generators = {g: space.coordinates(R.mul(e, v)) for g, v in R.generators.items()}
        factor = FiniteAlgebra(p, table, space.coordinates(e), names, generators, validate=False)
        socle = annihilator(R, maximal).dim
        factors.append(LocalFactor(maximal, factor, socle, e, space))
    factors.sort(key=lambda f: f.maximal_ideal.key())
    logger.debug("局部分解: %d 个极大理想, socle 维数 %s", len(factors), [f.socle_dim for f in factors])
    return factors


def maximal_ideals(R: FiniteAlgebra, budget: int = DEFAULT_BUDGET) -> List[AlgIdeal]:
    return [f.maximal_ideal for f in local_decompose(R, budget)]


def residue_field_module(R: FiniteAlgebra, index: int = 0, budget: int = DEFAULT_BUDGET) -> FiniteModule:
    """剩余域 R/m_i, 极大理想按规范基排序后取第 index 个"""
    return quotient_module(R, maximal_ideals(R, budget)[index])


def is_local(R: FiniteAlgebra, budget: int = DEFAULT_BUDGET) -> bool:
    return len(primitive_idempotents(R, budget)) == 1


def enumerate_ideals(R: FiniteAlgebra, budget: int = DEFAULT_BUDGET) -> List[AlgIdeal]:
    """
    理想格穷举: 从零理想出发, 每次并入一个元素再取理想闭包, 按规范基去重

    Args:
        budget: p^dim 的上限

    Returns:
        List[AlgIdeal]: 每个理想恰好一次, 按 (维数, 规范基) 排序

    Raises:
        BudgetExceeded: p^dim 超过预算
    """
    R.require_ring("enumerate_ideals")
    p, d = R.modulus, R.dim
    required = p ** d
    if required > budget:
        raise BudgetExceeded(required, budget)
    # 只需枚举射影代表元 (首个非零坐标为 1)
    representatives = []
    for coeffs in product(range(p), repeat=d):
        nonzero = [c for c in coeffs if c]
        if nonzero and nonzero[0] == 1:
            representatives.append(np.asarray(coeffs, dtype=np.int64))
    start = zero_ideal(R)
    seen: Dict[Subspace, AlgIdeal] = {start.space: start}
    queue = [start]
    while queue:
        current = queue.pop()
        for v in representatives:
            if current.contains(v):
                continue
            gens = [np.asarray(g, dtype=np.int64) for g in current.generators] + [v]
            grown = ideal_closure(R, gens)
            if grown.space not in seen:
                seen[grown.space] = grown
                queue.append(grown)
    ideals = sorted(seen.values(), key=lambda I: I.key())
    logger.debug("理想格: %d 个理想 (dim R = %d, p = %d)", len(ideals), d, p)
    return ideals
