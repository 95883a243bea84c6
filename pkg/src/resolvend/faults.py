"""Deliberate fault injection.

The verification suite must be able to demonstrate its own sensitivity:
each named fault perturbs one formula at its definition site, and the
suite re-runs targeted checks expecting at least one failure.  Faults are
never active unless explicitly injected.
"""

from __future__ import annotations

from contextlib import contextmanager

from .errors import PreconditionError

PAIRING_SIGN_FLIP = "pairing-sign-flip"
ALPHA_UNNORMALIZED = "alpha-unnormalized"
OMEGA_UNINVERTED = "omega-uninverted"

ALL_FAULTS = (PAIRING_SIGN_FLIP, ALPHA_UNNORMALIZED, OMEGA_UNINVERTED)

_active: set[str] = set()


def is_active(name: str) -> bool:
    return name in _active


@contextmanager
def inject(name: str):
    if name not in ALL_FAULTS:
        raise PreconditionError(f"unknown fault {name!r}; known: {', '.join(ALL_FAULTS)}")
    already = name in _active
    _active.add(name)
    try:
        yield
    finally:
        if not already:
            _active.discard(name)
