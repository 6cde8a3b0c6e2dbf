#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
素域 F_p 上的精确线性代数 - 所有有限后端同调计算的底座

矩阵元素以 int64 剩余存储, 模数随矩阵携带; p < 2^31 保证两数乘积不溢出。
子空间以既约行阶梯基作为唯一标识, 两个子空间相等当且仅当基逐位相同。
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from core.errors import DimensionMismatch, NotPrime

MAX_MODULUS = 2 ** 31


@lru_cache(maxsize=256)
def is_prime(n: int) -> bool:
    """试除法判定素数 (n < 2^31 时足够快)"""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def check_modulus(p: int) -> int:
    """校验模数为小于 2^31 的素数"""
    if not isinstance(p, (int, np.integer)) or p >= MAX_MODULUS or not is_prime(int(p)):
        raise NotPrime(p)
    return int(p)


@dataclass(frozen=True)
class FpScalar:
    """F_p 中的元素"""
    value: int
    modulus: int

    def __post_init__(self):
        check_modulus(self.modulus)
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, FpScalar):
            if other.modulus != self.modulus:
                raise DimensionMismatch(self.modulus, other.modulus, "modulus")
            return other.value
        return int(other) % self.modulus

    def __add__(self, other) -> "FpScalar":
        return FpScalar(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other) -> "FpScalar":
        return FpScalar(self.value - self._coerce(other), self.modulus)

    def __mul__(self, other) -> "FpScalar":
        return FpScalar(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "FpScalar":
        return FpScalar(-self.value, self.modulus)

    def inverse(self) -> "FpScalar":
        if self.value == 0:
            raise ZeroDivisionError("F_p 中 0 不可逆")
        return FpScalar(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other) -> "FpScalar":
        return self * FpScalar(self._coerce(other), self.modulus).inverse()

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


# ---------- 底层 numpy 例程 ----------

def _reduce(data, p: int) -> np.ndarray:
    arr = np.asarray(data, dtype=np.int64)
    return np.mod(arr, p)


def mod_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """模 p 矩阵乘法; 累加可能溢出 int64 时按列分块累加"""
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if (p - 1) * (p - 1) * a.shape[1] < 2 ** 63:
        return np.mod(a @ b, p)
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        acc = np.mod(acc + np.mod(np.outer(a[:, k], b[k, :]), p), p)
    return acc


def rref_array(data: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """
    高斯-若尔当消元, 取第一个非零元为主元

    Returns:
        (既约行阶梯形, 主元列下标列表); 行阶梯形保留原行数, 零行在底部
    """
    a = _reduce(data, p).copy()
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nonzero = np.nonzero(a[r:, c])[0]
        if nonzero.size == 0:
            continue
        pivot_row = r + int(nonzero[0])
        if pivot_row != r:
            a[[r, pivot_row]] = a[[pivot_row, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = np.mod(a[r] * inv, p)
        column = a[:, c].copy()
        column[r] = 0
        hit = np.nonzero(column)[0]
        if hit.size:
            a[hit] = np.mod(a[hit] - np.outer(column[hit], a[r]), p)
        pivots.append(c)
        r += 1
    return a, pivots


def kernel_array(data: np.ndarray, p: int, cols: int) -> np.ndarray:
    """右零空间的一组基 (行向量), 未规范化"""
    if data.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    reduced, pivots = rref_array(data, p)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = (-reduced[i, f]) % p
    return basis


def rank_array(data: np.ndarray, p: int) -> int:
    if data.size == 0:
        return 0
    return len(rref_array(data, p)[1])


# ---------- 矩阵 ----------

class FpMatrix:
    """F_p 上的不可变矩阵"""

    __slots__ = ("data", "modulus")

    def __init__(self, data, modulus: int, shape: Tuple[int, int] = None):
        p = check_modulus(modulus)
        arr = _reduce(data, p)
        if shape is not None:
            arr = arr.reshape(shape)
        if arr.ndim != 2:
            raise DimensionMismatch(2, arr.ndim, "ndim")
        arr = arr.copy()
        arr.setflags(write=False)
        self.data = arr
        self.modulus = p

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus: int) -> "FpMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), modulus)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def entries(self) -> Tuple[FpScalar, ...]:
        """按行展开的元素"""
        return tuple(FpScalar(int(v), self.modulus) for v in self.data.reshape(-1))

    def __getitem__(self, index) -> int:
        return int(self.data[index])

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if self.modulus != other.modulus:
            raise DimensionMismatch(self.modulus, other.modulus, "modulus")
        if self.cols != other.rows:
            raise DimensionMismatch(self.cols, other.rows, "inner_dim")
        return FpMatrix(mod_matmul(self.data, other.data, self.modulus), self.modulus)

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        if self.data.shape != other.data.shape:
            raise DimensionMismatch(self.data.shape, other.data.shape, "shape")
        return FpMatrix(self.data + other.data, self.modulus)

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self.data.T, self.modulus)

    @property
    def T(self) -> "FpMatrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return not self.data.any()

    def to_lists(self) -> List[List[int]]:
        return self.data.tolist()

    def __eq__(self, other) -> bool:
        return (isinstance(other, FpMatrix) and self.modulus == other.modulus
                and self.data.shape == other.data.shape
                and np.array_equal(self.data, other.data))

    def __hash__(self) -> int:
        return hash((self.modulus, self.data.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"FpMatrix({self.to_lists()}, p={self.modulus})"


# ---------- 子空间 ----------

class Subspace:
    """F_p^n 的子空间, 基为唯一的既约行阶梯形"""

    __slots__ = ("ambient_dim", "basis", "modulus", "pivots")

    def __init__(self, ambient_dim: int, basis: np.ndarray, modulus: int, pivots: Sequence[int]):
        # 只由 span() 构造, basis 已是既约行阶梯形
        self.ambient_dim = ambient_dim
        basis = basis.reshape(len(pivots), ambient_dim).copy()
        basis.setflags(write=False)
        self.basis = basis
        self.modulus = modulus
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, vectors, ambient_dim: int, modulus: int) -> "Subspace":
        """向量组张成的子空间"""
        p = check_modulus(modulus)
        arr = np.asarray(vectors, dtype=np.int64)
        if arr.size == 0:
            return cls.zero(ambient_dim, p)
        arr = arr.reshape(-1, ambient_dim)
        reduced, pivots = rref_array(arr, p)
        return cls(ambient_dim, reduced[:len(pivots)], p, pivots)

    @classmethod
    def zero(cls, ambient_dim: int, modulus: int) -> "Subspace":
        return cls(ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64), modulus, ())

    @classmethod
    def full(cls, ambient_dim: int, modulus: int) -> "Subspace":
        return cls(ambient_dim, np.eye(ambient_dim, dtype=np.int64), modulus, range(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def vectors(self) -> List[np.ndarray]:
        return [row for row in self.basis]

    def reduce(self, vector) -> np.ndarray:
        """向量模去子空间后的规范代表元"""
        v = _reduce(vector, self.modulus).reshape(-1).copy()
        for row, c in zip(self.basis, self.pivots):
            if v[c]:
                v = np.mod(v - v[c] * row, self.modulus)
        return v

    def contains(self, vector) -> bool:
        return not self.reduce(vector).any()

    def contains_subspace(self, other: "Subspace") -> bool:
        _check_compatible(self, other)
        return all(self.contains(row) for row in other.basis)

    def coordinates(self, vector) -> np.ndarray:
        """子空间内向量在规范基下的坐标 (即主元位置上的分量)"""
        v = _reduce(vector, self.modulus).reshape(-1)
        return v[list(self.pivots)] if self.pivots else np.zeros(0, dtype=np.int64)

    def key(self) -> Tuple[int, Tuple[int, ...]]:
        """确定性排序键: 先维数, 再规范基"""
        return (self.dim, tuple(int(v) for v in self.basis.reshape(-1)))

    def to_lists(self) -> List[List[int]]:
        return self.basis.tolist()

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.modulus == other.modulus
                and self.ambient_dim == other.ambient_dim
                and self.pivots == other.pivots
                and np.array_equal(self.basis, other.basis))

    def __hash__(self) -> int:
        return hash((self.modulus, self.ambient_dim, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}/{self.ambient_dim}, p={self.modulus}, basis={self.to_lists()})"


def _check_compatible(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(a.ambient_dim, b.ambient_dim)
    if a.modulus != b.modulus:
        raise DimensionMismatch(a.modulus, b.modulus, "modulus")


# ---------- 对外操作 ----------

@dataclass(frozen=True)
class Decomposition:
    """decompose 的结果"""
    rank: int
    kernel: Subspace
    image: Subspace
    rref: FpMatrix


def decompose(m: FpMatrix) -> Decomposition:
    """
    矩阵的秩、核、像与既约行阶梯形

    Args:
        m: F_p 上的矩阵, 允许零维

    Returns:
        Decomposition: rank + dim(kernel) = cols, 像由主元列张成
    """
    p = m.modulus
    if m.rows == 0 or m.cols == 0:
        return Decomposition(0, Subspace.full(m.cols, p), Subspace.zero(m.rows, p), m)
    reduced, pivots = rref_array(m.data, p)
    kernel = Subspace.span(kernel_array(m.data, p, m.cols), m.cols, p)
    image = Subspace.span(m.data[:, pivots].T, m.rows, p) if pivots else Subspace.zero(m.rows, p)
    return Decomposition(len(pivots), kernel, image, FpMatrix(reduced, p))


@dataclass(frozen=True)
class SubspaceOps:
    sum: Subspace
    intersection: Subspace
    a_contains_b: bool


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_compatible(a, b)
    return Subspace.span(np.vstack([a.basis, b.basis]), a.ambient_dim, a.modulus)


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b: 解 Σ c_i a_i − Σ d_j b_j = 0, 取 Σ c_i a_i"""
    _check_compatible(a, b)
    p, n = a.modulus, a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(n, p)
    stacked = np.hstack([a.basis.T, np.mod(-b.basis.T, p)])
    null = kernel_array(stacked, p, a.dim + b.dim)
    if null.shape[0] == 0:
        return Subspace.zero(n, p)
    return Subspace.span(mod_matmul(null[:, :a.dim], a.basis, p), n, p)


def subspace_ops(a: Subspace, b: Subspace) -> SubspaceOps:
    """
    子空间的和、交与包含关系

    Raises:
        DimensionMismatch: 外围维数不同
    """
    _check_compatible(a, b)
    return SubspaceOps(
        sum=subspace_sum(a, b),
        intersection=subspace_intersection(a, b),
        a_contains_b=a.contains_subspace(b),
    )


def complement_indices(space: Subspace) -> List[int]:
    """非主元坐标, 对应商空间的规范基"""
    pivots = set(space.pivots)
    return [c for c in range(space.ambient_dim) if c not in pivots]


def span_of(vectors: Iterable, ambient_dim: int, modulus: int) -> Subspace:
    vectors = [np.asarray(v, dtype=np.int64).reshape(-1) for v in vectors]
    if not vectors:
        return Subspace.zero(ambient_dim, modulus)
    return Subspace.span(np.vstack(vectors), ambient_dim, modulus)
