import copy
import json

import pytest

from core.config_manager import config_manager
from main import main


@pytest.fixture(autouse=True)
def restore_config():
    # 命令行参数会写入全局配置 (persist=False), 每个用例之后复原
    saved = copy.deepcopy(config_manager.config)
    yield
    config_manager.config = saved


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_ring_show_trunc(capsys):
    code, report = run_json(capsys, "ring", "show", "trunc(2,2,2)", "--cutoff", "3")
    assert code == 0
    assert report["command"] == "ring show"
    assert report["status"] == "pass"
    assert report["results"]["dim"] == 3
    assert report["results"]["ideal_count"] == 6
    assert report["results"]["is_local"] is True
    assert report["spec"]["kind"] == "family"
    assert report["spec"]["name"] == "trunc"
    assert "timings" not in report


def test_ring_show_poly_backend(capsys):
    code, report = run_json(capsys, "ring", "show", "F_2[x,y]", "--cutoff", "3")
    assert code == 0
    assert report["results"]["backend"] == "poly"
    assert report["results"]["variables"] == ["x", "y"]


def test_koszul_command(capsys):
    code, report = run_json(capsys, "koszul", "trunc(2,2,2)", "--seq", "x,y", "--cutoff", "3")
    assert code == 0
    assert report["results"]["dims_homology"] == [1, 3, 2]
    assert report["results"]["duality_holds"] is True


def test_grade_command_poly(capsys):
    code, report = run_json(capsys, "grade", "F_2[x,y]", "--ideal", "x,y", "--cutoff", "3")
    assert code == 0
    assert report["results"]["grade"] == 2


def test_ext_command_chain(capsys):
    code, report = run_json(capsys, "ext", "chain(2,2)", "--ideal", "x", "--cutoff", "3")
    assert code == 0
    assert report["results"]["dims"] == [1, 0, 0, 0]
    assert report["results"]["first_nonzero"] == 0
    assert report["results"]["pd"] == "exceeds_cutoff"


def test_fpd_finite(capsys):
    code, report = run_json(capsys, "fpd", "trunc(2,2,2)", "--cutoff", "3")
    assert code == 0
    assert report["results"]["fpd"]["value"] == 0
    assert report["results"]["fpd_le_id"] is True


def test_fpd_poly_lower_bound(capsys):
    code, report = run_json(capsys, "fpd", "F_2[x,y]", "--maximal", "x,y", "--cutoff", "3")
    assert code == 0
    assert report["results"]["lower_bound"] == 2


def test_fpd_poly_requires_maximal(capsys):
    code, report = run_json(capsys, "fpd", "F_2[x,y]", "--cutoff", "3")
    assert code == 1
    assert report["status"] == "error"
    assert report["results"]["error"] == "SchemaError"


def test_bad_spec_is_error(capsys):
    code, report = run_json(capsys, "ring", "show", "chain(2)", "--cutoff", "3")
    assert code == 1
    assert report["status"] == "error"


def test_classify_trunc(capsys):
    code, report = run_json(capsys, "classify", "trunc(2,2,2)", "--cutoff", "5")
    assert code == 0
    assert report["results"]["self_inj_dim"] == "infinity"
    assert report["results"]["is_dw"] is True


def test_verify_with_injected_fault(capsys):
    code, report = run_json(capsys, "verify-theorems", "--random", "3", "--no-poly",
                            "--cutoff", "2", "--inject-fault", "duality")
    assert code == 1
    assert report["status"] == "violation"
    assert report["results"]["checks"]["koszul_duality"]["passed"] is False
    assert report["results"]["counterexample"] is not None


def test_table_output(capsys):
    code, out = run(capsys, "ring", "show", "chain(2,2)", "--cutoff", "3", "--table")
    assert code == 0
    assert "ring show" in out
    assert "PASS" in out


def test_report_is_stable_and_written(capsys, tmp_path):
    target = tmp_path / "report.json"
    argv = ("koszul", "chain(3,3)", "--seq", "x", "--cutoff", "3", "--seed", "7")
    _, first = run(capsys, *argv, "--out", str(target))
    _, second = run(capsys, *argv)
    assert first == second
    assert json.loads(target.read_text(encoding="utf-8")) == json.loads(first)
    assert json.loads(first)["seed"] == 7


def test_timings_flag(capsys):
    _, report = run_json(capsys, "grade", "chain(2,2)", "--ideal", "x", "--cutoff", "3", "--timings")
    assert "total_seconds" in report["timings"]
    assert report["results"]["grade"] == 0


def test_classify_poly_unit_ideal_reports_missing_witness(capsys):
    code, report = run_json(capsys, "classify", "F_2[x,y]", "--ideal", "1", "--cutoff", "2")
    assert code == 0
    assert report["status"] == "pass"
    assert report["results"]["grade"] == "infinity"
    assert report["results"]["dw_witness"] is None
    assert report["results"]["dw_witness_reason"]


def test_classify_poly_proper_ideal_has_witness(capsys):
    code, report = run_json(capsys, "classify", "F_2[x,y]", "--ideal", "x,y", "--cutoff", "2")
    assert code == 0
    assert report["results"]["dw_witness"] is True
    assert report["results"]["dw_witness_reason"] is None


def test_paper_examples_table(capsys):
    code, report = run_json(capsys, "paper-examples", "--cutoff", "3")
    assert code in (0, 2)
    assert report["command"] == "paper-examples"
    rows = {row["ring"]: row for row in report["results"]["rows"]}
    assert len(rows) == 11
    assert rows["trunc(2,2,2)"]["fpd"] == 0
    assert rows["F_2[x,y]"]["is_dw"] is False
    assert rows["F_2[x]"]["is_dw"] is None


def test_old_examples_name_is_rejected():
    with pytest.raises(SystemExit):
        main(["examples"])


def test_classify_details_lists_every_classifier(capsys):
    code, report = run_json(capsys, "classify", "field_product(2,2)", "--cutoff", "3", "--details")
    assert code == 0
    details = report["results"]["details"]
    assert sorted(details) == ["fpd", "gv", "prufer", "theorem"]
    assert details["gv"]["is_dw"] is True
    assert details["prufer"]["prufer"] is True


def test_ring_export_round_trips(capsys, tmp_path):
    target = tmp_path / "trunc.json"
    _, report = run_json(capsys, "ring", "show", "trunc(2,2,2)", "--cutoff", "3", "--export", str(target))
    assert report["results"]["exported"] is True
    code, again = run_json(capsys, "ring", "show", str(target), "--cutoff", "3")
    assert code == 0
    assert again["spec"]["kind"] == "structure_constants"
    assert again["results"]["dim"] == 3
    assert again["results"]["ideal_count"] == 6
