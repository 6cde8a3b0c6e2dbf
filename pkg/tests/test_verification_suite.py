from classifiers.verification_suite import CheckOutcome, run_verification_suite
from core.command_result import CommandStatus
from core.config_manager import config_manager


def test_builtin_corpus_passes():
    results, status = run_verification_suite(seed=0, cutoff=3, random_count=20)
    assert status is CommandStatus.PASS, results["counterexample"]
    assert results["counterexample"] is None
    checks = results["checks"]
    for name in ("koszul_duality", "koszul_endpoints", "koszul_euler", "grade_generator_independence",
                 "groebner_membership", "module_kernel_completeness", "resolution_exact"):
        assert checks[name]["passed"]
        assert checks[name]["instances"] > 0
    assert len(results["corpus"]["finite"]) == 8


def test_injected_duality_fault_is_reported():
    results, status = run_verification_suite(corpus=[], seed=1, cutoff=3, random_count=5,
                                             inject_fault="duality", include_poly=False)
    assert status is CommandStatus.VIOLATION
    assert status.exit_code == 1
    assert results["counterexample"]["check"] == "koszul_duality"
    assert "spec" in results["counterexample"]
    assert results["inject_fault"] == "duality"


def test_same_seed_gives_same_results():
    first, _ = run_verification_suite(corpus=[], seed=3, cutoff=2, random_count=5, include_poly=False)
    second, _ = run_verification_suite(corpus=[], seed=3, cutoff=2, random_count=5, include_poly=False)
    assert first == second


def test_minimal_counterexample_prefers_smaller_rings():
    outcome = CheckOutcome("demo")
    outcome.record(False, {"ring": "b", "size": 4})
    outcome.record(False, {"ring": "a", "size": 2})
    outcome.record(True, {"ring": "c", "size": 1})
    assert outcome.instances == 3
    assert outcome.minimal_counterexample()["ring"] == "a"
    assert outcome.to_dict()["failures"] == 2
    assert outcome.status is CommandStatus.VIOLATION
    pending = CheckOutcome("pending")
    pending.inconclusive += 1
    assert pending.status is CommandStatus.INCONCLUSIVE
    assert CheckOutcome("empty").status is CommandStatus.PASS


def test_kernel_completeness_check_runs_configured_instances():
    saved = dict(config_manager.get("verification"))
    config_manager.set("verification.kernel_instances", 6, persist=False)
    config_manager.set("verification.groebner_instances", 5, persist=False)
    try:
        results, _ = run_verification_suite(corpus=[], seed=5, cutoff=2, random_count=1)
    finally:
        config_manager.config["verification"] = saved
    outcome = results["checks"]["module_kernel_completeness"]
    assert outcome["instances"] == 6
    assert outcome["passed"], outcome["counterexample"]
