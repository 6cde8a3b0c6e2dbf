#!/usr/bin/env python3
"""
基础分类器类 - 所有分类器的基类
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, Iterable, List, Optional, Tuple

from tqdm import tqdm

from core.config_manager import config_manager
from core.finalg import AlgIdeal, FiniteAlgebra, enumerate_ideals, ideal_closure, quotient_module
from core.homology import ExtTable, ext_dims_finite, pd_cutoff
from core.markers import ExtendedInt


class ComputationCache:
    """理想格、Ext 表与投射维数的共享缓存, 键为 (环的 id, 理想的规范基, 截断)"""

    def __init__(self):
        self.ideals: Dict[int, List[AlgIdeal]] = {}
        self.ext: Dict[Tuple, ExtTable] = {}
        self.pd: Dict[Tuple, ExtendedInt] = {}
        self.rings: Dict[int, FiniteAlgebra] = {}

    def key_of(self, R: FiniteAlgebra) -> int:
        # 持有引用, 保证 id 在缓存生命周期内不被复用
        self.rings[id(R)] = R
        return id(R)

    def clear(self):
        self.rings.clear()
        self.ideals.clear()
        self.ext.clear()
        self.pd.clear()


class BaseClassifier(ABC):
    """基础分类器类"""

    def __init__(self, name: str, cutoff: Optional[int] = None, budget: Optional[int] = None,
                 cache: Optional[ComputationCache] = None):
        """初始化分类器"""
        self.name = name
        self.cutoff = cutoff if cutoff is not None else config_manager.get("computation.cutoff", 6)
        self.budget = budget if budget is not None else config_manager.get("computation.budget", 4096)
        self.cache = cache or ComputationCache()
        self.logger = logging.getLogger(f"classifiers.{name}")

    # ----- 共享计算 -----

    def ideals(self, R: FiniteAlgebra) -> List[AlgIdeal]:
        key = self.cache.key_of(R)
        if key not in self.cache.ideals:
            self.cache.ideals[key] = enumerate_ideals(R, self.budget)
        return self.cache.ideals[key]

    def ext(self, R: FiniteAlgebra, ideal: AlgIdeal, cutoff: Optional[int] = None) -> ExtTable:
        """Ext^i(R/I, R), i = 0..cutoff"""
        cutoff = self.cutoff if cutoff is None else cutoff
        key = (self.cache.key_of(R), ideal.key(), cutoff)
        if key not in self.cache.ext:
            self.cache.ext[key] = ext_dims_finite(R, quotient_module(R, ideal), cutoff, budget=self.budget)
        return self.cache.ext[key]

    def pd_of_quotient(self, R: FiniteAlgebra, ideal: AlgIdeal, cutoff: Optional[int] = None) -> ExtendedInt:
        """pd(R/I), 超出截断时为 EXCEEDS_CUTOFF"""
        cutoff = self.cutoff if cutoff is None else cutoff
        key = (self.cache.key_of(R), ideal.key(), cutoff)
        if key not in self.cache.pd:
            self.cache.pd[key] = pd_cutoff(R, quotient_module(R, ideal), cutoff, self.budget)
        return self.cache.pd[key]

    def progress(self, items: Iterable, desc: str) -> Iterable:
        """理想格扫描的进度条 (写到 stderr)"""
        show = config_manager.get("output.show_progress", True)
        return tqdm(items, desc=f"[{self.name}] {desc}", disable=not show, leave=False)

    @abstractmethod
    def process(self, ring: FiniteAlgebra) -> Dict[str, Any]:
        """对一个有限环做分类, 返回结果字典"""
        pass

    def log(self, message: str, level: int = logging.INFO):
        """记录日志"""
        self.logger.log(level, f"[{self.name}] {message}")


def resolve_ideal(R: FiniteAlgebra, J) -> AlgIdeal:
    """AlgIdeal 原样返回; 生成元列表 (表达式文本或坐标向量) 取理想闭包"""
    if isinstance(J, AlgIdeal):
        return J
    gens = [R.element_from_text(g) if isinstance(g, str) else R.element(g) for g in J]
    return ideal_closure(R, gens)
