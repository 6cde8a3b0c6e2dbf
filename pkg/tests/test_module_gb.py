import random

import pytest

from core.errors import RankMismatch
from core.module_gb import (ModuleVector, bounded_kernel_vectors, matrix_apply, module_groebner, module_kernel,
                            prune_generators, submodule_contains)
from core.polyalg import Polynomial, PolyRing


def _vec(ring, *texts):
    return ModuleVector(ring, tuple(ring.parse(t) for t in texts))


def _row(ring, *texts):
    return [[ring.parse(t) for t in texts]]


def test_kernel_of_regular_pair_is_koszul_syzygy(F2xy):
    matrix = _row(F2xy, "x", "y")
    kernel = module_kernel(F2xy, matrix)
    assert kernel
    for v in kernel:
        assert matrix_apply(F2xy, matrix, v).is_zero()
    assert submodule_contains(kernel, _vec(F2xy, "y", "x"))
    assert not submodule_contains(kernel, _vec(F2xy, "1", "0"))


def test_kernel_of_three_variables_contains_all_koszul_relations():
    ring = PolyRing(3, ("x", "y", "z"))
    matrix = _row(ring, "x", "y", "z")
    kernel = module_kernel(ring, matrix)
    for v in kernel:
        assert matrix_apply(ring, matrix, v).is_zero()
    for relation in [("y", "-x", "0"), ("z", "0", "-x"), ("0", "z", "-y")]:
        assert submodule_contains(kernel, _vec(ring, *relation))


def test_kernel_over_quotient_ring():
    ring = PolyRing(2, ("x",))
    relations = [ring.parse("x^2")]
    matrix = _row(ring, "x")
    kernel = module_kernel(ring, matrix, relations=relations)
    for v in kernel:
        assert matrix_apply(ring, matrix, v, relations).is_zero()
    assert submodule_contains(kernel, _vec(ring, "x"), relations)
    assert not submodule_contains(kernel, _vec(ring, "1"), relations)


def test_zero_row_matrix_kernel_is_everything(F2xy):
    kernel = module_kernel(F2xy, [], cols=2)
    assert len(kernel) == 2


def test_rank_mismatch(F2xy):
    with pytest.raises(RankMismatch):
        submodule_contains([_vec(F2xy, "x")], _vec(F2xy, "x", "y"))


def test_groebner_membership_in_rank_two(F2xy):
    gens = [_vec(F2xy, "x", "y"), _vec(F2xy, "y", "0")]
    gb = module_groebner(F2xy, 2, gens)
    combo = gens[0].scale(F2xy.parse("y")) + gens[1].scale(F2xy.parse("x + 1"))
    assert gb.contains(combo)
    assert not gb.contains(_vec(F2xy, "0", "1"))


def test_prune_drops_redundant_generators(F2xy):
    pruned = prune_generators(F2xy, [_vec(F2xy, "x"), _vec(F2xy, "x^2"), _vec(F2xy, "y")])
    assert len(pruned) == 2
    assert submodule_contains(pruned, _vec(F2xy, "x^2 + x*y"))


def _random_poly(rng, ring):
    terms = {}
    for _ in range(rng.randint(1, 2)):
        exps = tuple(rng.randint(0, 1) for _ in range(ring.nvars))
        terms[exps] = rng.randrange(1, ring.modulus)
    return Polynomial(ring, terms)


def test_bounded_kernel_of_two_row_matrix(F2xy):
    # 核由 (y^2, xy, x^2) 生成, 次数 ≤ 2 时只有它的倍数
    matrix = [[F2xy.parse(t) for t in row] for row in (("x", "y", "0"), ("0", "x", "y"))]
    bounded = bounded_kernel_vectors(F2xy, matrix, 2)
    assert len(bounded) == 1
    assert bounded[0] == _vec(F2xy, "y^2", "x*y", "x^2")
    kernel = module_kernel(F2xy, matrix)
    assert submodule_contains(kernel, bounded[0])


def test_bounded_kernel_over_quotient_ring():
    ring = PolyRing(2, ("x",))
    relations = [ring.parse("x^2")]
    bounded = bounded_kernel_vectors(ring, _row(ring, "x"), 2, relations)
    assert sorted(str(v.components[0]) for v in bounded) == ["x", "x^2"]


@pytest.mark.parametrize("seed", range(12))
def test_kernel_soundness_and_capped_completeness(seed):
    rng = random.Random(seed)
    ring = PolyRing(rng.choice([2, 3]), ("x", "y"))
    cols = rng.randint(2, 3)
    matrix = [[_random_poly(rng, ring) for _ in range(cols)] for _ in range(rng.randint(1, 2))]
    relations = [_random_poly(rng, ring) * ring.parse("x*y")] if seed % 3 == 0 else []
    kernel = module_kernel(ring, matrix, relations=relations)
    for v in kernel:
        assert matrix_apply(ring, matrix, v, relations).is_zero()
    for v in bounded_kernel_vectors(ring, matrix, 3, relations):
        assert matrix_apply(ring, matrix, v, relations).is_zero()
        assert submodule_contains(kernel, v, relations)
