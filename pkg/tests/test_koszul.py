import pytest

from core.errors import BackendMismatch, EmptySequence, IndexOutOfRange
from core.finalg import ideal_from_text, quotient_module
from core.koszul import (build_koszul, koszul_cohomology_vanishes, koszul_endpoint_dims, koszul_grade,
                         koszul_homology)
from core.markers import INFINITY
from core.polyalg import PolyRing
from corpus_manager import CorpusManager


def test_truncated_ring_homology_table(trunc):
    table = koszul_homology(build_koszul(trunc, ["x", "y"]))
    assert table.dims_homology == [1, 3, 2]
    assert table.dims_cohomology == [2, 3, 1]
    assert table.chain_dims == [3, 6, 3]
    assert table.duality_holds()
    assert table.euler_characteristic() == (0, 0)


def test_chain_ring_single_element(chain22):
    table = koszul_homology(build_koszul(chain22, ["x"]))
    assert table.dims_homology == [1, 1]
    assert table.duality_holds()


def test_unit_in_sequence_kills_homology(chain22):
    table = koszul_homology(build_koszul(chain22, ["1 + x", "x"]))
    assert table.dims_homology == [0, 0, 0]
    assert table.dims_cohomology == [0, 0, 0]


def test_homology_with_coefficients_in_a_module(chain33):
    M = quotient_module(chain33, ideal_from_text(chain33, ["x^2"]))
    table = koszul_homology(build_koszul(chain33, ["x"]), M)
    assert table.dims_homology == [1, 1]
    assert table.duality_holds()


def test_endpoint_dims(trunc):
    assert koszul_endpoint_dims(trunc, ["x", "y"]) == (1, 2)


def test_finite_grades(trunc, chain22, fp22):
    assert koszul_grade(trunc, ["x", "y"]) == 0
    assert koszul_grade(chain22, ["1"]) is INFINITY
    assert koszul_grade(fp22, ["e1"]) == 0


def test_empty_sequence(trunc):
    with pytest.raises(EmptySequence):
        build_koszul(trunc, [])


def test_backend_guards(trunc, F2xy):
    with pytest.raises(BackendMismatch):
        koszul_homology(build_koszul(F2xy, ["x"]))
    with pytest.raises(BackendMismatch):
        koszul_cohomology_vanishes(build_koszul(trunc, ["x"]), 0)
    with pytest.raises(IndexOutOfRange):
        koszul_cohomology_vanishes(build_koszul(F2xy, ["x"]), 2)


@pytest.mark.parametrize("names", [("x",), ("x", "y"), ("x", "y", "z")])
def test_regular_sequence_grade_equals_length(names):
    ring = PolyRing(2, names)
    assert koszul_grade(ring, list(names)) == len(names)


def test_grade_does_not_depend_on_generators(F2xy):
    assert koszul_grade(F2xy, ["x", "y"]) == 2
    assert koszul_grade(F2xy, ["x", "y", "x + y"]) == 2
    assert koszul_grade(F2xy, ["x*y", "x"]) == koszul_grade(F2xy, ["x"]) == 1


def test_poly_grade_over_quotient():
    ring = PolyRing(2, ("x",))
    assert koszul_grade(ring, ["x"], relations=["x^2"]) == 0
    assert koszul_grade(ring, ["x + 1"], relations=["x^2"]) is INFINITY


def test_duality_and_endpoints_on_random_corpus():
    corpus = CorpusManager(seed=0)
    for entry in corpus.random_algebras(100):
        R = entry.algebra
        x = corpus.random_sequence(R, 3)
        table = koszul_homology(build_koszul(R, x))
        n = len(x)
        assert all(table.dims_homology[p] == table.dims_cohomology[n - p] for p in range(n + 1)), entry.label
        h0, hn = koszul_endpoint_dims(R, x)
        assert table.dims_homology[0] == h0
        assert table.dims_homology[n] == hn
        chain, homology = table.euler_characteristic()
        assert chain == homology
