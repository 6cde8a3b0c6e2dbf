import numpy as np
import pytest

from core.errors import BadUnit, BudgetExceeded, InfiniteDimensional, NotCommutative, UnknownVariable, ZeroRing
from core.finalg import (algebra_from_structure_constants, algebra_from_zero_dim_quotient, annihilator,
                         chain_algebra, enumerate_ideals, field_product_algebra, ideal_closure, ideal_from_text,
                         idealization, is_local, is_nilpotent, local_decompose, nilradical,
                         product_algebra, quotient_algebra, quotient_module, regular_module, zero_ideal)
from core.polyalg import PolyRing


def test_truncated_ring_shape(trunc):
    assert trunc.dim == 3
    assert trunc.modulus == 2
    assert sorted(trunc.basis_names) == ["1", "x", "y"]
    assert not trunc.element_from_text("x*y").any()
    assert not trunc.element_from_text("x^2 + y^2").any()


def test_units_and_zero_divisors(chain22):
    assert chain22.is_unit(chain22.element_from_text("1 + x"))
    assert chain22.is_zero_divisor(chain22.element_from_text("x"))
    assert not chain22.is_zero_divisor(chain22.one())


def test_unknown_generator(chain22):
    with pytest.raises(UnknownVariable):
        chain22.element_from_text("y")


def test_non_commutative_table_rejected():
    table = np.zeros((2, 2, 2), dtype=np.int64)
    table[0, 0] = [1, 0]
    table[0, 1] = [0, 1]
    table[1, 0] = [0, 0]
    with pytest.raises(NotCommutative):
        algebra_from_structure_constants(2, table, [1, 0])


def test_wrong_unit_rejected(chain22):
    with pytest.raises(BadUnit):
        algebra_from_structure_constants(2, chain22.mul_table, chain22.element_from_text("x"))


def test_infinite_quotient_rejected(F2xy):
    with pytest.raises(InfiniteDimensional):
        algebra_from_zero_dim_quotient(F2xy, [F2xy.parse("x^2")])


def test_ideal_lattice_sizes(trunc, chain22, chain33, fp22):
    assert len(enumerate_ideals(trunc)) == 6
    assert len(enumerate_ideals(chain22)) == 3
    assert len(enumerate_ideals(chain33)) == 4
    assert len(enumerate_ideals(fp22)) == 4


def test_ideal_lattice_is_sorted_and_distinct(trunc):
    ideals = enumerate_ideals(trunc)
    keys = [I.key() for I in ideals]
    assert keys == sorted(keys)
    assert len(set(ideals)) == len(ideals)
    assert ideals[0].is_zero()
    assert ideals[-1].is_whole()


def test_budget_guard(trunc):
    with pytest.raises(BudgetExceeded):
        enumerate_ideals(trunc, budget=4)


def test_annihilator_of_maximal_ideal_is_socle(trunc):
    m = ideal_from_text(trunc, ["x", "y"])
    assert m.dim == 2
    socle = annihilator(trunc, m)
    assert socle == m
    assert annihilator(trunc, zero_ideal(trunc)).is_whole()


def test_ideal_closure_of_products(chain33):
    m = ideal_from_text(chain33, ["x"])
    assert m.dim == 2
    x = chain33.element_from_text("x")
    square = ideal_closure(chain33, [chain33.mul(a, x) for a in m.basis()])
    assert square == ideal_from_text(chain33, ["x^2"])
    assert ideal_closure(chain33, [chain33.element_from_text("1 + x")]).is_whole()


def test_local_decomposition(trunc, fp22):
    [factor] = local_decompose(trunc)
    assert factor.socle_dim == 2
    assert factor.local_factor.dim == 3
    factors = local_decompose(fp22)
    assert len(factors) == 2
    assert [f.socle_dim for f in factors] == [1, 1]
    assert not is_local(fp22)
    total = fp22.add(factors[0].idempotent, factors[1].idempotent)
    assert np.array_equal(total, fp22.one())


def test_product_with_chain_ring_splits():
    R = product_algebra(chain_algebra(2, 2), field_product_algebra(2, 1))
    dims = sorted(f.local_factor.dim for f in local_decompose(R))
    assert dims == [1, 2]
    assert "e_L" in R.generators


def test_nilradical(trunc, fp22):
    assert nilradical(trunc) == ideal_from_text(trunc, ["x", "y"])
    assert nilradical(fp22).is_zero()
    assert is_nilpotent(trunc, trunc.element_from_text("x + y"))
    assert not is_nilpotent(trunc, trunc.element_from_text("1 + x"))
    assert not is_nilpotent(fp22, fp22.element_from_text("e1"))


def test_nonsplit_quadratic_residue_field():
    ring = PolyRing(2, ("x",))
    field, _ = algebra_from_zero_dim_quotient(ring, [ring.parse("x^2 + x + 1")])
    assert is_local(field)
    assert nilradical(field).is_zero()
    assert len(enumerate_ideals(field)) == 2


def test_quotient_algebra_and_module(chain33):
    I = ideal_from_text(chain33, ["x^2"])
    Q, projection = quotient_algebra(chain33, I)
    assert Q.dim == 2
    assert projection.rows == 2 and projection.cols == 3
    M = quotient_module(chain33, I).validate()
    assert M.dim == 2


def test_zero_ring_operations_refused(chain22):
    Q, _ = quotient_algebra(chain22, ideal_from_text(chain22, ["1"]))
    assert Q.dim == 0
    with pytest.raises(ZeroRing):
        enumerate_ideals(Q)


def test_idealization_matches_chain_ring_table():
    F2 = field_product_algebra(2, 1)
    T = idealization(F2, regular_module(F2))
    chain = chain_algebra(2, 2)
    assert np.array_equal(T.mul_table, chain.mul_table)
    assert np.array_equal(T.unit, chain.unit)
    assert T.generators["t"].tolist() == [0, 1]
