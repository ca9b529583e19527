import json

import pytest

from conelab.algebra import Element, scale, unit
from conelab.errors import HarnessFailure
from conelab.io import dumps_fixed
from conelab.jordan import JordanIso
from conelab.suites import (
    MUTATIONS,
    SUITE_NAMES,
    Mutation,
    SuiteId,
    all_suites,
    mutate_and_expect_failure,
    run_suite,
)

TRIALS = 30


def test_suite_id_parsing():
    assert SuiteId.parse("Thm36Equivalences:2") == SuiteId("Thm36Equivalences", 2.0)
    assert SuiteId.parse("EffectDiamond(p=0.5)") == SuiteId("EffectDiamond", 0.5)
    assert SuiteId.parse("Semi13Equivalences(3)").p == 3.0
    assert SuiteId.parse("Semi13Equivalences").p == 1.0
    assert str(SuiteId("Thm36Equivalences", 2)) == "Thm36Equivalences(p=2)"
    for bad in ("Bogus", "GyoeNormIdentities:2", "Thm36Equivalences:0", "Thm36Equivalences:-1", "x y"):
        with pytest.raises(ValueError):
            SuiteId.parse(bad)


def test_all_tags_present():
    assert len(SUITE_NAMES) == 18
    assert len(all_suites((0.5, 1))) == 21


def test_mutation_parsing():
    assert Mutation.parse("perturb_weight(0.01)") == Mutation("perturb_weight", 0.01)
    assert Mutation.parse("break_transpose").expected == "Pass"
    with pytest.raises(ValueError):
        Mutation("perturb_unitary", 1e-4)
    with pytest.raises(ValueError):
        Mutation.parse("swap_blocks(0.1)")
    assert set(MUTATIONS) == {"perturb_weight", "perturb_unitary", "break_transpose", "swap_blocks"}


@pytest.mark.parametrize("suite", [str(s) for s in all_suites((0.5, 2))])
@pytest.mark.parametrize("shape", [[2], [1, 2]])
def test_every_suite_passes(suite, shape):
    r = run_suite(suite, shape, TRIALS, 3)
    assert r.verdict == "Pass", r.reason
    assert r.max_violation <= max(c.tol for c in r.checks.values())
    assert all(c.passed for c in r.checks.values())


def test_pass_iff_checks_within_tolerance():
    r = run_suite("HooEquivalence", [2], TRIALS, 0)
    assert r.passed and not r.failing_checks()
    f = mutate_and_expect_failure("HooEquivalence", "perturb_unitary(0.05)", [2], TRIALS, 0)
    assert f.verdict == "Fail" and f.failing_checks()
    assert f.max_violation > f.tol


def test_report_is_replayable():
    a = dumps_fixed(run_suite("QimEquivalence", [2, 3], 20, 7).to_json())
    b = dumps_fixed(run_suite("QimEquivalence", [2, 3], 20, 7).to_json())
    assert a == b
    c = dumps_fixed(run_suite("QimEquivalence", [2, 3], 20, 8).to_json())
    assert a != c


def test_thread_count_does_not_change_report():
    one = dumps_fixed(run_suite("Thm36Equivalences:2", [2, 3], 25, 4, threads=1).to_json())
    four = dumps_fixed(run_suite("Thm36Equivalences:2", [2, 3], 25, 4, threads=4).to_json())
    assert one == four


def test_env_threads(monkeypatch):
    monkeypatch.setenv("CONELAB_THREADS", "3")
    r = run_suite("GyoeNormIdentities", [2], 10, 1)
    monkeypatch.setenv("CONELAB_THREADS", "1")
    assert dumps_fixed(r.to_json()) == dumps_fixed(run_suite("GyoeNormIdentities", [2], 10, 1).to_json())


def test_json_schema():
    obj = run_suite("GyoeNormIdentities", [2], 10, 1).to_json()
    for key, typ in [("suite", str), ("params", dict), ("verdict", str), ("max_violation", float),
                     ("witnesses", list), ("seed", int), ("paper_ref", str)]:
        assert isinstance(obj[key], typ)
    json.loads(dumps_fixed(obj))


def test_fail_report_carries_inputs():
    f = mutate_and_expect_failure("GyoeNormIdentities", "perturb_weight(0.01)", [2], TRIALS, 0)
    inputs = f.worst_inputs()
    assert inputs and all(isinstance(v, Element) for v in inputs.values())
    assert f.to_json()["witnesses"]
    assert f.reason


def test_qim_central_identity_example():
    r = run_suite("QimEquivalence", [2], TRIALS, 0, weight=scale(unit([2]), 2.0),
                  jordan=JordanIso.identity([2]))
    assert r.passed
    assert r.checks["additive_if_central"].max_violation <= 1e-8
    assert r.checks["equals_weight_times_J"].max_violation <= 1e-8


def test_example38_with_fixed_weight():
    r = run_suite("Example38NonAdditive", [2], TRIALS, 0, weight=Element([[[2, 1], [1, 1]]]))
    assert r.passed
    assert r.witnesses and min(w.margin for w in r.witnesses) >= 1e-3


def test_example38_rejects_central_weight():
    with pytest.raises(ValueError):
        run_suite("Example38NonAdditive", [2], 5, 0, weight=unit([2]))


def test_noncentral_qim_exhibits_nonadditivity():
    r = run_suite("QimEquivalence", [2], 10, 0, weight=Element([[[2, 1], [1, 1]]]))
    assert r.passed and any(w.kind == "nonadditivity" for w in r.witnesses)


def test_inconclusive_when_budget_exhausted():
    # the guided direction succeeds on its first evaluation, so only 0 runs dry
    r = run_suite("OgasawaraLocal", [2], 5, 0, witness_budget=0)
    assert r.verdict == "Inconclusive" and r.reason


def test_gyoe_detects_weight_mismatch():
    r = mutate_and_expect_failure("GyoeNormIdentities", "perturb_weight(0.01)", [2], TRIALS, 0)
    assert r.verdict == "Fail" and r.max_violation >= 1e-3


@pytest.mark.parametrize("p", [0.5, 1, 2, 3])
def test_thm36_unitary_perturbation_fails_every_norm_check(p):
    r = mutate_and_expect_failure(SuiteId("Thm36Equivalences", p), "perturb_unitary(0.05)", [2], TRIALS, 0)
    for k in ("norm_product", "seminorm_product", "power_mean_norm"):
        assert r.checks[k].max_violation >= 5e-3


def test_hoo_transpose_is_expected_pass():
    r = mutate_and_expect_failure("HooEquivalence", "break_transpose", [2], TRIALS, 0,
                                  jordan=JordanIso.transpose_map([2]))
    assert r.verdict == "Pass"
    assert r.params["expected"] == "Pass"


MAPPED = ["QimEquivalence", "HooEquivalence", "TripleNormJordan", "Thm36Equivalences", "HunaTwoMaps",
          "Example38NonAdditive", "AdditiveBijection", "ExtheSemidefinite", "Semi13Equivalences",
          "EffectDiamond"]


@pytest.mark.parametrize("suite", MAPPED)
@pytest.mark.parametrize("mutation", ["perturb_weight(0.01)", "perturb_unitary(0.01)", "break_transpose",
                                      "swap_blocks"])
def test_mutation_matrix(suite, mutation):
    mutate_and_expect_failure(suite, mutation, [2, 2], 40, 0)


def test_swap_blocks_needs_equal_blocks():
    with pytest.raises(ValueError):
        mutate_and_expect_failure("Thm36Equivalences", "swap_blocks", [2, 3], 5, 0)


def test_unmapped_suite_rejects_map_mutation():
    with pytest.raises(ValueError):
        run_suite("OgasawaraLocal", [2], 5, 0, mutation="perturb_unitary(0.01)")


def test_harness_failure_when_expectation_unmet(monkeypatch):
    import conelab.suites as suites

    monkeypatch.setattr(Mutation, "expected", property(lambda self: "Pass"))
    with pytest.raises(HarnessFailure):
        suites.mutate_and_expect_failure("TripleNormJordan", "perturb_unitary(0.05)", [2], 10, 0)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        run_suite("GyoeNormIdentities", [2], 0, 0)
    with pytest.raises(ValueError):
        run_suite("GyoeNormIdentities", [2], 5, 0, tol=0)


def test_semidefinite_suites_sample_singular_inputs():
    r = run_suite("Semi13Equivalences", [2], 10, 0)
    assert "invertibility_flags" in r.checks
    from conelab.suites import _Ctx

    assert sum(_Ctx.singular(i) for i in range(500)) == 150
