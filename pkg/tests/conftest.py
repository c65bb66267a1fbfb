import math

import numpy as np
import pytest

from pulseforge.su2 import TWO_PI


def random_su2(rng):
    """Haar-random SU(2) via QR of a complex Ginibre matrix, det normalized."""
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    q = q @ np.diag(r.diagonal() / np.abs(r.diagonal()))
    det = q[0, 0] * q[1, 1] - q[0, 1] * q[1, 0]
    return q / np.sqrt(det)


def random_state(rng):
    psi = rng.normal(size=2) + 1j * rng.normal(size=2)
    return psi / np.linalg.norm(psi)


def circular_diff(a, b):
    """Distance between two angles on the circle."""
    d = math.fmod(a - b, TWO_PI)
    if d < -math.pi:
        d += TWO_PI
    elif d > math.pi:
        d -= TWO_PI
    return abs(d)


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
