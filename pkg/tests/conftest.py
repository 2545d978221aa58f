"""Shared helpers for the test suite."""

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def rand_sigma(rng):
    """Generic complex 3x3 conductivity sample."""
    return rng.uniform(-1.0, 1.0, (3, 3)) + 1j * rng.uniform(-1.0, 1.0, (3, 3))


def rand_unit(rng):
    u = rng.normal(size=3)
    return u / np.linalg.norm(u)


def rand_rotation(rng):
    """Random rotation matrix from an axis-angle pair (Rodrigues form)."""
    axis = rand_unit(rng)
    theta = rng.uniform(0.0, 2.0 * np.pi)
    skew = np.array(
        [
            [0.0, -axis[2], axis[1]],
            [axis[2], 0.0, -axis[0]],
            [-axis[1], axis[0], 0.0],
        ]
    )
    return np.eye(3) + np.sin(theta) * skew + (1.0 - np.cos(theta)) * (skew @ skew)


def guarded_setup(rng, vmax=0.9, separation=1e-3):
    """Random (kw, v) with |omega - v.k| kept away from the resonance.

    The separation is relative to max(|omega|, |v||k|); transforms are
    well conditioned there, so cross checks can run at tight tolerances.
    """
    from ohmcov import Wavevector4

    while True:
        omega = rng.uniform(0.1, 10.0)
        kvec = rng.uniform(0.0, 5.0) * rand_unit(rng)
        v = rng.uniform(0.0, vmax) * rand_unit(rng)
        scale = max(abs(omega), float(np.linalg.norm(v) * np.linalg.norm(kvec)))
        if abs(omega - float(v @ kvec)) > separation * scale:
            return Wavevector4(omega, kvec), v
