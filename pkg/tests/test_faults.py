"""Fault switches and the error hierarchy."""
from __future__ import annotations

import inspect

import pytest

from resolvend import errors, faults


def test_faults_start_inactive():
    for name in faults.ALL_FAULTS:
        assert not faults.is_active(name)


def test_inject_scopes_cleanly():
    with faults.inject(faults.PAIRING_SIGN_FLIP):
        assert faults.is_active(faults.PAIRING_SIGN_FLIP)
        assert not faults.is_active(faults.OMEGA_UNINVERTED)
    assert not faults.is_active(faults.PAIRING_SIGN_FLIP)


def test_inject_survives_exceptions():
    with pytest.raises(ValueError):
        with faults.inject(faults.ALPHA_UNNORMALIZED):
            raise ValueError("boom")
    assert not faults.is_active(faults.ALPHA_UNNORMALIZED)


def test_inject_is_reentrant():
    with faults.inject(faults.OMEGA_UNINVERTED):
        with faults.inject(faults.OMEGA_UNINVERTED):
            assert faults.is_active(faults.OMEGA_UNINVERTED)
        # the inner exit must not disarm the outer scope
        assert faults.is_active(faults.OMEGA_UNINVERTED)
    assert not faults.is_active(faults.OMEGA_UNINVERTED)


def test_unknown_fault_rejected():
    with pytest.raises(errors.PreconditionError):
        with faults.inject("definitely-not-a-fault"):
            pass


def test_error_hierarchy():
    classes = [cls for _, cls in inspect.getmembers(errors, inspect.isclass)
               if issubclass(cls, Exception)]
    assert errors.ResolvendError in classes
    for cls in classes:
        assert issubclass(cls, errors.ResolvendError)
    assert len(classes) > 10
