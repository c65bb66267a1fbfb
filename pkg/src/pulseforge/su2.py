"""Exact SU(2) algebra for single-qubit rotations about axes in the xy plane.

The elementary operation is

    U(theta, phi) = exp(-i theta (cos(phi) sx + sin(phi) sy) / 2),  theta > 0,

a rotation by ``theta`` on the Bloch sphere about the xy-plane axis at azimuth
``phi``.  A static detuning-type (off-resonance) error of fractional size
``f`` tilts the drive axis out of the plane,

    U_f(theta, phi) = exp(-i theta (cos(phi) sx + sin(phi) sy + f sz) / 2),

which is evaluated in closed form as a rotation by ``theta * sqrt(1 + f**2)``
about the renormalized axis — exact at every ``f``, no series truncation.
Amplitude (pulse-length) errors are out of scope; the propagator kernel is the
single place where an error channel enters, so they would slot in there.

Matrices are plain ``numpy`` 2x2 complex arrays.  Helpers in this module treat
them as SU(2) values; ``is_su2`` checks the contract (unitary and det 1 within
1e-12) where a boundary validation is wanted.
"""

import math
from dataclasses import dataclass

import numpy as np

from .backend import kernels

TWO_PI = 2.0 * math.pi

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)

UNITARITY_TOL = 1e-12


def reduce_angle(x):
    """Reduce an angle to [0, 2*pi).  fmod keeps the reduction exact."""
    r = math.fmod(x, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    if r >= TWO_PI:
        r = 0.0
    return r


@dataclass(frozen=True)
class Pulse:
    """One elementary rotation: flip angle ``theta`` > 0, axis azimuth ``phi``.

    ``theta`` may exceed 2*pi (winding turns are physical time); ``phi`` is
    stored reduced to [0, 2*pi).
    """

    theta: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and self.theta > 0.0):
            raise ValueError(
                f"flip angle must be positive and finite, got {self.theta!r}"
            )
        if not math.isfinite(self.phi):
            raise ValueError(f"axis azimuth must be finite, got {self.phi!r}")
        object.__setattr__(self, "phi", reduce_angle(self.phi))


def _check_ore(f):
    if not (math.isfinite(f) and abs(f) < 1.0):
        raise ValueError(f"off-resonance fraction must satisfy |f| < 1, got {f!r}")


def pulse_unitary(pulse, f=0.0):
    """Propagator of one pulse under off-resonance fraction ``f``.

    Parameters
    ----------
    pulse : Pulse
        The elementary rotation.
    f : float
        Dimensionless z-axis error fraction, |f| < 1.  ``f=0`` gives the
        ideal rotation.

    Returns
    -------
    numpy.ndarray
        2x2 complex unitary with determinant 1.
    """
    _check_ore(f)
    return kernels.propagator(pulse.theta, pulse.phi, f)


def first_order_ore_term(pulse):
    """Derivative of ``pulse_unitary`` with respect to ``f`` at ``f = 0``.

    Equals ``-i sin(theta/2) sz``; in particular it vanishes for full
    2*pi*n rotations.  The result is not unitary.
    """
    return -1j * math.sin(0.5 * pulse.theta) * PAULI_Z


def sequence_unitary(pulses, f=0.0):
    """Propagator of a pulse train; the first pulse in the list acts first.

    Parameters
    ----------
    pulses : sequence of Pulse
        Nonempty ordered train; the product is taken right-to-left.
    f : float
        Off-resonance fraction shared by every pulse (static error).
    """
    pulses = tuple(pulses)
    if not pulses:
        raise ValueError("pulse sequence must be nonempty")
    _check_ore(f)
    thetas = np.array([p.theta for p in pulses])
    phis = np.array([p.phi for p in pulses])
    return kernels.sequence_propagator(thetas, phis, f)


def gate_infidelity(u, v):
    """Gate infidelity ``1 - |tr(u^dag v)| / 2``.

    Zero iff the two unitaries agree up to a global phase; symmetric in its
    arguments and invariant under a global phase of either one.
    """
    out = 1.0 - kernels.gate_fidelity(np.asarray(u, dtype=complex),
                                      np.asarray(v, dtype=complex))
    return out if out > 0.0 else 0.0


def state_infidelity(u, v, psi):
    """State infidelity ``1 - |<psi| u^dag v |psi>|`` for a unit vector psi.

    Never exceeds ``gate_infidelity(u, v)`` (up to roundoff): the gate value
    is the worst case over initial states.
    """
    psi = np.asarray(psi, dtype=complex)
    norm = math.sqrt(float(np.vdot(psi, psi).real))
    if abs(norm - 1.0) > UNITARITY_TOL:
        raise ValueError(f"state must be normalized, got |psi| = {norm!r}")
    out = 1.0 - kernels.state_fidelity(np.asarray(u, dtype=complex),
                                       np.asarray(v, dtype=complex), psi)
    return out if out > 0.0 else 0.0


def distance_up_to_phase(u, v):
    """min over chi of the max-abs entry of ``u - exp(i chi) v``.

    Zero iff the matrices agree up to a global phase.  Found by a coarse
    phase scan followed by ternary refinement of the bracketing interval.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)

    def dist(chi):
        return float(np.max(np.abs(u - np.exp(1j * chi) * v)))

    n = 720
    chis = np.linspace(0.0, TWO_PI, n, endpoint=False)
    diffs = u[None, :, :] - np.exp(1j * chis)[:, None, None] * v[None, :, :]
    vals = np.abs(diffs).reshape(n, -1).max(axis=1)
    i = int(np.argmin(vals))
    best = float(vals[i])
    lo = chis[i] - TWO_PI / n
    hi = chis[i] + TWO_PI / n
    for _ in range(90):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if dist(m1) <= dist(m2):
            hi = m2
        else:
            lo = m1
    return min(best, dist(0.5 * (lo + hi)))


def is_su2(m, tol=UNITARITY_TOL):
    """Whether ``m`` is unitary with determinant 1, within ``tol`` max-abs."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        return False
    unitary = float(np.max(np.abs(m.conj().T @ m - IDENTITY))) <= tol
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return unitary and abs(det - 1.0) <= tol
