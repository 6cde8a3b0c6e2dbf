import pytest

from classifiers.fpd_classifier import (FpdClassifier, check_maximal, fpd_finite, fpd_lower_bound_poly,
                                        is_total_quotient_ring, verify_fpd_le_selfinjdim)
from classifiers.gv_classifier import GVClassifier, dw_witness_poly, is_dw, is_gv_ideal, strong_w_check
from classifiers.main_controller import ClassifierController, classify_report
from classifiers.prufer_classifier import ideal_regularity, is_projective_ideal, prufer_classify
from classifiers.theorem_verifier import verify_theorem_wnd, weak_1d_mahdou_check
from core.command_result import CommandStatus
from core.errors import ImproperIdeal, NotMaximal
from core.finalg import chain_algebra, field_product_algebra
from core.markers import INCONCLUSIVE, INFINITY
from core.polyalg import PolyRing


def test_truncated_ring_headline(trunc):
    fpd = fpd_finite(trunc)
    assert fpd.value == 0
    assert fpd.method_grade == 0 and fpd.method_ext == 0
    assert fpd.agree
    dw = is_dw(trunc)
    assert dw.is_dw
    assert dw.gv_ideals == ["R"]
    check = verify_fpd_le_selfinjdim(trunc)
    assert check["holds"]
    assert check["id"] is INFINITY
    assert check["gorenstein_factors"][0]["socle_dim"] == 2


@pytest.mark.parametrize("p", [2, 3])
def test_field_product_is_self_injective(p):
    R = field_product_algebra(p, 2)
    assert fpd_finite(R).value == 0
    check = verify_fpd_le_selfinjdim(R)
    assert check["holds"]
    assert check["id"] == 0
    assert check["baer_agrees"]


def test_grade_table_lists_every_maximal_ideal(fp22):
    table = FpdClassifier(cutoff=3).grade_table(fp22)
    assert len(table) == 2
    assert all(row["grade"] == 0 for row in table)


def test_total_quotient_ring(chain33):
    assert is_total_quotient_ring(chain33)


def test_gv_verdicts(trunc, chain22):
    verdict = is_gv_ideal(trunc, ["x", "y"])
    assert not verdict.hom_zero
    assert not verdict.is_gv
    assert is_gv_ideal(chain22, ["1"]).is_gv
    assert GVClassifier(cutoff=3).gv_implies_semiregular(trunc)


def test_strong_w_matches_dw_on_finite_rings(trunc, chain22, fp22):
    for R in (trunc, chain22, fp22):
        assert strong_w_check(R, 5).is_strong_w == is_dw(R).is_dw


def test_poly_dw_witness(F2xy):
    assert dw_witness_poly(F2xy, ["x", "y"])
    line = PolyRing(2, ("x",))
    assert not dw_witness_poly(line, ["x"])
    with pytest.raises(ImproperIdeal):
        dw_witness_poly(F2xy, ["x + 1", "x"])


def test_poly_strong_w_fails_at_degree_two(F2xy):
    result = strong_w_check(F2xy, 3, candidates=[["x", "y"]])
    assert not result.is_strong_w
    assert result.witness[1] == 2


def test_fpd_lower_bound_poly(F2xy):
    assert fpd_lower_bound_poly(F2xy, [["x", "y"]]) == 2
    assert fpd_lower_bound_poly(F2xy, [["x", "y"], ["x + 1", "y"]]) == 2


@pytest.mark.parametrize("gens,witness", [
    (["x"], "infinite"),
    (["x", "y^2"], "y"),
    (["x", "x + 1"], "unit ideal"),
])
def test_check_maximal_witnesses(F2xy, gens, witness):
    with pytest.raises(NotMaximal) as info:
        check_maximal(F2xy, gens)
    assert info.value.witness == witness


def test_prufer_on_artinian_rings(trunc, chain22, chain33, fp22):
    for R in (trunc, chain22, chain33, fp22):
        result = prufer_classify(R)
        assert (result.prufer, result.strong_prufer) == (True, True)
        assert result.witnesses == {}
        assert result.corollary_holds


def test_ideal_regularity(trunc, fp22):
    reg = ideal_regularity(trunc, ["x", "y"])
    assert (reg.regular, reg.semiregular) == (False, False)
    reg = ideal_regularity(fp22, ["e1 + e2"])
    assert (reg.regular, reg.semiregular) == (True, True)


def test_projective_ideals(fp22, chain22):
    assert is_projective_ideal(fp22, ["e1"])
    assert not is_projective_ideal(chain22, ["x"])
    assert is_projective_ideal(chain22, ["1"])


@pytest.mark.parametrize("R", [
    chain_algebra(2, 2),
    chain_algebra(3, 3),
    field_product_algebra(2, 2),
])
def test_ext_characterisation_holds_at_fpd(R):
    d = fpd_finite(R).value
    result = verify_theorem_wnd(R, d, cutoff=5)
    assert result.holds
    assert result.quantifier_holds
    assert result.counterexample is None


def test_ext_characterisation_on_truncated_ring(trunc):
    assert verify_theorem_wnd(trunc, 0, cutoff=5).holds


def test_weak_1d_check(chain22, fp22):
    result = weak_1d_mahdou_check(chain22, 1)
    assert result.is_weak_1d is False
    assert result.witness is not None
    assert result.implies_fpd_le_d_verified
    assert weak_1d_mahdou_check(fp22, 1).is_weak_1d is True
    assert weak_1d_mahdou_check(chain22, 1, cutoff=0).is_weak_1d is INCONCLUSIVE
    assert "open_question" in result.to_dict()["metadata"]


def test_controller_report_for_truncated_ring(trunc):
    report, status = classify_report(trunc, "trunc(2,2,2)", cutoff=5)
    assert status is CommandStatus.PASS
    assert report.fpd.value == 0
    assert report.is_dw
    assert report.strong_w_ok
    assert report.self_inj_dim == "infinity"
    assert (report.prufer, report.strong_prufer) == (True, True)
    assert report.is_total_quotient_ring
    assert all(report.checks.values())
    assert report.checks["dw_iff_fpd_le_1"]
    assert report.metadata["ideal_count"] == 6
    assert "gorenstein" in report.witnesses


def test_controller_shares_cache(chain22):
    controller = ClassifierController(cutoff=3)
    controller.classify(chain22, "chain(2,2)")
    assert controller.cache.ideals
    assert controller.gv.cache is controller.fpd.cache is controller.prufer.cache
