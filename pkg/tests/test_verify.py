import numpy as np
import pytest

from weylwalk import verify, walk
from weylwalk.lattice import LatticeVector


def outcome(checks):
    return {c.name: c.status for c in checks}


def test_checks_are_independent_of_threads():
    serial = verify.run_checks(samples=10, seed=3, names=["walk", "lattice", "symmetry"])
    parallel = verify.run_checks(samples=10, seed=3, threads=2,
                                 names=["walk", "lattice", "symmetry"])
    assert [c.max_error for c in serial] == [c.max_error for c in parallel]


@pytest.mark.parametrize("seed", [1, 2])
def test_seed_change_keeps_outcome(seed):
    base = outcome(verify.run_checks(samples=20, seed=0))
    assert outcome(verify.run_checks(samples=20, seed=seed)) == base


def test_report_pass_flag():
    ok = verify.CheckResult.from_error("a", 0.0, 1, 1e-12)
    bad = verify.CheckResult.from_error("b", np.nan, 1, 1e-12)
    assert ok.passed and not bad.passed
    assert verify.VerifyReport([ok]).overall_pass
    assert not verify.VerifyReport([ok, bad]).overall_pass


def test_injected_coin_sign_error_is_caught(monkeypatch):
    original = walk.coin_set

    def broken(kind):
        coins = dict(original(kind))
        h = LatticeVector((0, 1, 0))
        coins[h] = -coins[h]
        return coins

    monkeypatch.setattr(walk, "coin_set", broken)
    result = outcome(verify.run_checks(samples=20, seed=0, names=["unitarity", "equality"]))
    assert result["walk.three_way_equality"] == "fail"
    assert result["walk.unitarity"] == "fail"


def test_recovery_order_is_two(rng):
    lam = verify.random_spinor_transform(rng)
    assert abs(verify.recovery_order(lam, [1.0, 2.0, 2.0]) - 2) < 0.25
