"""Suite runner: selection, determinism, shapes, and mutation wiring."""
from __future__ import annotations

import pytest

from resolvend import faults
from resolvend.errors import PreconditionError
from resolvend.groups import FiniteAbelianGroup
from resolvend.suite import odd_abelian_groups, run_suite


def test_fast_checks_pass_and_are_deterministic():
    first = run_suite(checks=["02", "07", "09"])
    second = run_suite(checks=["02", "07", "09"])
    assert first.ok
    assert first.to_json() == second.to_json()


def test_report_shape():
    report = run_suite(checks=["07"])
    data = report.to_json()
    assert set(data) == {"status", "counts", "entries"}
    assert data["status"] == "pass"
    assert data["counts"] == {"pass": len(report.entries), "fail": 0}
    ids = [e.check_id for e in report.entries]
    assert ids == sorted(ids)
    for e in report.entries:
        out = e.to_json()
        assert set(out) == {"check_id", "identity", "params", "status"}
        assert out["status"] == "pass"


def test_checks_filter():
    report = run_suite(checks=["07"])
    assert len(report.entries) == 5
    assert all(e.check_id.startswith("07") for e in report.entries)
    with pytest.raises(PreconditionError):
        run_suite(checks=["99-no-such-check"])


def test_parameter_validation():
    with pytest.raises(PreconditionError):
        run_suite(max_order=2)
    with pytest.raises(PreconditionError):
        run_suite(max_order=100)
    with pytest.raises(PreconditionError):
        run_suite(p_list=(11,))
    with pytest.raises(PreconditionError):
        run_suite(e_list=(4,))


def test_timings_are_opt_in():
    plain = run_suite(checks=["09"])
    assert all(e.wall_ms is None for e in plain.entries)
    assert all("wall_ms" not in e.to_json() for e in plain.entries)
    timed = run_suite(checks=["09"], timings=True)
    assert all(isinstance(e.wall_ms, int) and e.wall_ms >= 0 for e in timed.entries)
    assert all("wall_ms" in e.to_json() for e in timed.entries)


def test_mutation_breaks_targeted_check():
    clean = run_suite(checks=["04"], e_list=(3,))
    assert clean.ok
    mutated = run_suite(mutate=faults.PAIRING_SIGN_FLIP, checks=["04"], e_list=(3,))
    assert not mutated.ok
    failed = [e for e in mutated.entries if not e.ok]
    assert failed and all(e.witness for e in failed)
    with pytest.raises(PreconditionError):
        run_suite(mutate="no-such-fault", checks=["07"])


def test_mutation_sensitivity_check_is_self_contained():
    report = run_suite(checks=["11"])
    assert report.ok
    assert len(report.entries) == 3


def test_odd_abelian_groups_enumeration():
    groups = list(odd_abelian_groups(27))
    assert len(groups) == 17
    assert all(g.order % 2 == 1 and 3 <= g.order <= 27 for g in groups)
    assert len({g.spec for g in groups}) == 17
    small = list(odd_abelian_groups(9))
    assert {g.spec for g in small} == {"3", "5", "7", "9", "3,3"}
    assert FiniteAbelianGroup((3, 9)) in list(odd_abelian_groups(27))
