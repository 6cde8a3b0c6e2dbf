from core.finalg import (algebra_from_zero_dim_quotient, annihilator, enumerate_ideals, ideal_from_text,
                         local_decompose, quotient_module, regular_module, residue_field_module,
                         zero_module)
from core.homology import (MINIMAL, REDUNDANT, ext_dims_finite, ext_is_zero_poly, ext_vanishing_profile,
                           free_resolution_finite, global_dimension_finite, pd_cutoff, poly_resolution,
                           residue_degree, self_injective_dim_finite)
from core.markers import EXCEEDS_CUTOFF, INFINITY
from core.polyalg import PolyRing


def test_minimal_resolution_of_residue_field_doubles(trunc):
    resolution = free_resolution_finite(trunc, residue_field_module(trunc), cutoff=3)
    assert resolution.minimal
    assert resolution.ranks == [1, 2, 4, 8]
    assert not resolution.complete
    assert resolution.truncated_at == 3
    assert resolution.is_exact()


def test_free_module_resolves_immediately(trunc):
    resolution = free_resolution_finite(trunc, regular_module(trunc))
    assert resolution.complete
    assert resolution.ranks == [1]
    assert resolution.length == 0


def test_redundant_resolution_is_exact(chain22):
    resolution = free_resolution_finite(chain22, residue_field_module(chain22), cutoff=2, method=REDUNDANT)
    assert resolution.is_exact()


def test_projective_dimensions(chain22, fp22, trunc):
    assert pd_cutoff(chain22, residue_field_module(chain22), cutoff=4) is EXCEEDS_CUTOFF
    assert pd_cutoff(trunc, regular_module(trunc)) == 0
    assert pd_cutoff(trunc, zero_module(trunc)) == 0
    # R/⟨e1⟩ ≅ e2·R 是投射模
    assert pd_cutoff(fp22, quotient_module(fp22, ideal_from_text(fp22, ["e1"]))) == 0


def test_ext_over_gorenstein_ring(chain22):
    table = ext_dims_finite(chain22, residue_field_module(chain22), cutoff=3)
    assert table.dims == [1, 0, 0, 0]
    assert table.first_nonzero() == 0


def test_ext_over_non_gorenstein_ring(trunc):
    table = ext_dims_finite(trunc, residue_field_module(trunc), cutoff=3)
    assert table.dims[0] == 2
    assert all(d > 0 for d in table.dims)


def test_ext_of_zero_module(trunc):
    table = ext_dims_finite(trunc, zero_module(trunc), cutoff=2)
    assert table.dims == [0, 0, 0]
    assert table.first_nonzero() is None


def test_minimal_and_redundant_ext_agree_on_every_ideal(trunc, chain33, fp22):
    for R in (trunc, chain33, fp22):
        for ideal in enumerate_ideals(R):
            M = quotient_module(R, ideal)
            minimal = ext_dims_finite(R, M, cutoff=3, method=MINIMAL)
            redundant = ext_dims_finite(R, M, cutoff=3, method=REDUNDANT)
            assert minimal.dims == redundant.dims, ideal.describe()
            assert minimal.dims[0] == annihilator(R, ideal).dim


def test_self_injective_dimension(trunc, fp22, chain33):
    result = self_injective_dim_finite(trunc)
    assert result.value is INFINITY
    assert result.gorenstein_factors[0]["socle_dim"] == 2
    assert result.agrees
    assert result.baer_witness is not None
    for R in (fp22, chain33):
        result = self_injective_dim_finite(R)
        assert result.value == 0
        assert result.agrees
    assert self_injective_dim_finite(fp22, baer_oracle=False).baer_value is None


def test_nonsplit_field_is_gorenstein():
    ring = PolyRing(2, ("x",))
    field, _ = algebra_from_zero_dim_quotient(ring, [ring.parse("x^2 + x + 1")])
    [factor] = local_decompose(field)
    assert residue_degree(field, factor) == 2
    assert factor.socle_dim == 2
    assert self_injective_dim_finite(field).value == 0


def test_global_dimension(fp22, chain22):
    assert global_dimension_finite(fp22) == 0
    assert global_dimension_finite(chain22, cutoff=3) is EXCEEDS_CUTOFF


def test_poly_resolution_of_maximal_ideal(F2xy):
    ranks, differentials = poly_resolution(F2xy, [F2xy.parse("x"), F2xy.parse("y")], 3)
    assert ranks[:3] == [1, 2, 1]
    assert len(differentials) == 2


def test_ext_vanishing_matches_grade(F2xy):
    gens = [F2xy.parse("x"), F2xy.parse("y")]
    assert ext_vanishing_profile(F2xy, gens, 2) == [True, True, False]
    ring = PolyRing(2, ("x",))
    assert ext_vanishing_profile(ring, [ring.parse("x")], 1) == [True, False]


def test_ext_of_unit_ideal_vanishes(F2xy):
    assert ext_is_zero_poly(F2xy, [F2xy.parse("x + 1"), F2xy.parse("x")], 0)
    assert ext_is_zero_poly(F2xy, [F2xy.parse("x + 1"), F2xy.parse("x")], 3)
