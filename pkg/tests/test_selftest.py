import pytest

from cohnet import coherent, selftest
from cohnet.errors import SpecError
from cohnet.selftest import RunConfig, check_network_vs_closed_form, check_pure_dual_path, run_selftest


def test_subset_and_declaration_order():
    results = run_selftest(RunConfig(), only=["point_value_theta0", "separability"])
    assert [r.name for r in results] == ["separability", "point_value_theta0"]
    assert all(r.passed for r in results)


def test_unknown_check_name_rejected():
    with pytest.raises(SpecError):
        run_selftest(RunConfig(), only=["no_such_check"])


def test_tolerance_override_defeats_live_checks():
    results = run_selftest(RunConfig(tolerance=1e-20), only=["network_vs_closed_form"])
    assert not results[0].passed
    assert results[0].threshold == 1e-20


def test_sign_flip_mutation_breaks_network_check(monkeypatch):
    original = coherent.xi_from_angles

    def flipped(angles):
        return tuple(-x for x in original(angles))

    monkeypatch.setattr(coherent, "xi_from_angles", flipped)
    metric = check_network_vs_closed_form(RunConfig())
    assert metric > 1e-3  # the convention is load-bearing, not cosmetic


def test_parallel_evaluation_matches_serial(monkeypatch):
    monkeypatch.setattr(selftest, "PURE_GRID_P_Q", ((2, 1),))
    monkeypatch.setattr(selftest, "PURE_GRID_N", (1, 2))
    monkeypatch.setattr(selftest, "VARPHI_POINTS", 4)
    serial = check_pure_dual_path(RunConfig(jobs=1))
    parallel = check_pure_dual_path(RunConfig(jobs=2))
    assert serial == parallel


def test_seed_changes_draws_but_not_health():
    a = check_network_vs_closed_form(RunConfig(seed=1))
    b = check_network_vs_closed_form(RunConfig(seed=2))
    assert a <= 1e-10 and b <= 1e-10
