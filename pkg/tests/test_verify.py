"""Tests for the built-in property checks and their registry."""

import pytest

from elastodg.verify import CheckResult, VerifyCheck, get_checks, register_check, run_checks
from elastodg.verify.checks import check_energy


@pytest.mark.parametrize("name", ["sbp", "riemann", "antisymmetry", "free_stream"])
def test_builtin_check_passes(name):
    (result,) = run_checks([name])
    assert result.passed, result.detail


def test_short_energy_check_passes():
    result = check_energy(steps=50)
    assert result.passed, result.detail
    assert result.name == "energy"


def test_unknown_check():
    with pytest.raises(ValueError, match="Check not found"):
        run_checks(["nope"])


def test_registered_check_failure_is_reported():
    def explode():
        raise RuntimeError("boom")

    register_check(VerifyCheck("explodes", "always raises", explode))
    try:
        (result,) = run_checks(["explodes"])
        assert not result.passed
        assert "RuntimeError: boom" in result.detail
    finally:
        get_checks().pop("explodes")


def test_registry_order():
    assert list(get_checks())[:5] == ["sbp", "riemann", "antisymmetry", "free_stream", "energy"]
    assert isinstance(run_checks(["sbp"])[0], CheckResult)
