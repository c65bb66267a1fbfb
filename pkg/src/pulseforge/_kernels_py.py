"""Pure-Python (numpy) implementations of the 2x2 propagator kernels.

Same API as the compiled module ``pulseforge._kernels_cy``; used as the
import-time fallback when the extension is unavailable (see
``pulseforge.backend``).  Batch functions are vectorized over the leading
axis, so the fallback stays usable for large sweeps.
"""

import math

import numpy as np

KIND = "python"


def propagator(theta, phi, f):
    """Exact propagator for one pulse with a tilted drive axis.

    Rotation by ``theta * sqrt(1 + f**2)`` about the unit axis
    ``(cos(phi), sin(phi), f) / sqrt(1 + f**2)``.
    """
    r = math.sqrt(1.0 + f * f)
    half = 0.5 * theta * r
    a = math.cos(half)
    sb = math.sin(half) / r
    nx = sb * math.cos(phi)
    ny = sb * math.sin(phi)
    nz = sb * f
    return np.array(
        [[a - 1j * nz, -ny - 1j * nx], [ny - 1j * nx, a + 1j * nz]]
    )


def sequence_propagator(thetas, phis, f):
    """Right-to-left product of propagators; first entry acts first."""
    u = np.eye(2, dtype=complex)
    for theta, phi in zip(thetas, phis):
        u = propagator(float(theta), float(phi), f) @ u
    return u


def gate_fidelity(u, v):
    """|tr(u^dag v)| / 2 for two 2x2 matrices."""
    return 0.5 * abs(np.vdot(u, v))


def state_fidelity(u, v, psi):
    """|<psi| u^dag v |psi>|."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    return abs(np.vdot(u @ psi, v @ psi))


def _fold(thetas, phis, f):
    """Entrywise product fold for (n, k) pulse arrays; returns 4 (n,) arrays."""
    thetas = np.ascontiguousarray(thetas, dtype=float)
    phis = np.ascontiguousarray(phis, dtype=float)
    r = math.sqrt(1.0 + f * f)
    half = 0.5 * thetas * r
    a = np.cos(half)
    sb = np.sin(half) / r
    nx = sb * np.cos(phis)
    ny = sb * np.sin(phis)
    nz = sb * f
    p00 = a - 1j * nz
    p01 = -ny - 1j * nx
    p10 = ny - 1j * nx
    p11 = a + 1j * nz
    u00, u01, u10, u11 = p00[:, 0], p01[:, 0], p10[:, 0], p11[:, 0]
    for j in range(1, thetas.shape[1]):
        q00, q01, q10, q11 = p00[:, j], p01[:, j], p10[:, j], p11[:, j]
        v00 = q00 * u00 + q01 * u10
        v01 = q00 * u01 + q01 * u11
        v10 = q10 * u00 + q11 * u10
        v11 = q10 * u01 + q11 * u11
        u00, u01, u10, u11 = v00, v01, v10, v11
    return u00, u01, u10, u11


def batch_gate_infidelity(thetas, phis, f, target):
    """Gate infidelity of each row's sequence against ``target``, shape (n,)."""
    target = np.asarray(target, dtype=complex)
    u00, u01, u10, u11 = _fold(thetas, phis, f)
    tr = (
        np.conj(target[0, 0]) * u00
        + np.conj(target[0, 1]) * u01
        + np.conj(target[1, 0]) * u10
        + np.conj(target[1, 1]) * u11
    )
    out = 1.0 - 0.5 * np.abs(tr)
    np.maximum(out, 0.0, out=out)
    return out


def batch_state_infidelity(thetas, phis, f, target, psi):
    """State infidelity of each row's sequence against ``target`` on ``psi``."""
    target = np.asarray(target, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    u00, u01, u10, u11 = _fold(thetas, phis, f)
    w0 = u00 * psi[0] + u01 * psi[1]
    w1 = u10 * psi[0] + u11 * psi[1]
    ref = target @ psi
    overlap = np.conj(ref[0]) * w0 + np.conj(ref[1]) * w1
    out = 1.0 - np.abs(overlap)
    np.maximum(out, 0.0, out=out)
    return out
