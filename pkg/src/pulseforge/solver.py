"""Closed-form synthesis of three-pulse time-symmetric composite pulses that
cancel the first-order effect of off-resonance error for an arbitrary target
rotation in the xy plane.

Everything is written in half-angle variables.  For a target ``U(theta, phi)``
with ``0 < theta < 2*pi`` put ``c = cos(theta/2)`` and ``s = sin(theta/2) > 0``.
A time-symmetric triple has principal flip angles ``theta_p1 = theta_p3``
(windings ``n1, n3`` may differ) and equal outer phases; write
``c_i = cos(theta_p_i / 2)``, ``s_i = sin(theta_p_i / 2) >= 0``, the phase
offsets ``l = phi2 - phi1`` and ``k = phi2 - phi``, and ``alpha = cos(l)``.
The windings enter only through the parity of ``n = n1 + n2 + n3`` via
``c_n = (-1)**n * c``.

First-order robustness plus the errorless target condition reduce to closed
forms in the single free parameter ``c1``:

    R     = sqrt(1 - (1 - c1^2) c^2)
    c2    = -c_n (1 - c1^2) - c1 R
    s2    = s1 (R - c_n c1)
    alpha = 1 - (R + c_n c1) / (2 s1^2 (R - c_n c1))

with ``alpha = -1`` marking the two ends of the admissible ``c1`` interval

    lower = -sqrt(3 - c^2 + c_n sqrt(3 + c^2)) / 2
    upper = +sqrt(3 - c^2 - c_n sqrt(3 + c^2)) / 2.

The sign of ``sin(l)`` stays free (the ``branch``); either choice yields a
valid sequence with its own ``k``, recovered from

    cos k = ((-1)^n / s) (2 s1 c1 c2 cos l + c1^2 s2 - s1^2 s2 cos 2l)
    sin k = ((-1)^n / s) (2 s1 c1 c2 sin l - s1^2 s2 sin 2l).

``build_sequence`` assembles the pulses as ``theta_i = theta_p_i + 2 pi n_i``,
``phi1 = phi3 = phi + k - l`` and ``phi2 = phi + k``.  Phases are computed for
``phi = 0`` first and shifted afterwards, so rotational covariance about z is
exact at the floating-point level.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergenceError, OutOfBoundsError
from .su2 import TWO_PI, IDENTITY, Pulse, pulse_unitary, reduce_angle

# Roundoff allowance for cosine-valued quantities at the interval endpoints.
# At near-degenerate endpoints (c1 close to +-1) the computed alpha can land a
# few 1e-12 away from -1 even for an exactly in-range c1, because
# d(alpha)/d(c1) grows like 1e4 there; interval membership is checked first,
# so anything below -1 past that check is noise, not an out-of-bounds request.
ENDPOINT_ALPHA_TOL = 1e-9

#: deterministic 3x3 start grid for the Newton verification solver
_NEWTON_STARTS = tuple(
    (c2_0, a_0) for c2_0 in (-0.75, 0.0, 0.75) for a_0 in (-0.75, 0.0, 0.75)
)


@dataclass(frozen=True)
class TargetRotation:
    """Target rotation angle and axis azimuth; ``0 < theta < 2*pi``."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.theta) and 0.0 < self.theta < TWO_PI):
            raise ValueError(
                f"target flip angle must lie strictly inside (0, 2*pi), got {self.theta!r}"
            )
        if not math.isfinite(self.phi):
            raise ValueError(f"target azimuth must be finite, got {self.phi!r}")

    @property
    def c(self):
        """cos(theta / 2)."""
        return math.cos(0.5 * self.theta)

    @property
    def s(self):
        """sin(theta / 2), always positive on the open angle interval."""
        return math.sin(0.5 * self.theta)


@dataclass(frozen=True)
class WindingNumbers:
    """Extra full turns (n1, n2, n3) added to the principal flip angles."""

    n1: int
    n2: int
    n3: int

    def __post_init__(self):
        for name in ("n1", "n2", "n3"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"winding {name} must be a non-negative integer, got {value!r}")

    @property
    def total(self):
        return self.n1 + self.n2 + self.n3

    @property
    def parity(self):
        return self.total & 1


@dataclass(frozen=True)
class C1Bounds:
    """Admissible closed interval for the free parameter c1."""

    lower: float
    upper: float

    def contains(self, c1):
        return self.lower <= c1 <= self.upper


@dataclass(frozen=True)
class SolutionPoint:
    """Solved manifold coordinates for one composite sequence."""

    c1: float
    s1: float
    c2: float
    s2: float
    alpha: float
    k: float
    l: float
    parity: int
    branch: str


@dataclass(frozen=True)
class CompositeSequence:
    """A built three-pulse sequence plus the data that produced it.

    ``pulses`` carry the full flip angles (principal part + 2*pi*n_i); the
    errorless product equals the target unitary exactly, with no global-phase
    freedom.
    """

    pulses: tuple
    windings: WindingNumbers
    target: TargetRotation
    solution: SolutionPoint


def _parity_sign(parity):
    return -1.0 if parity & 1 else 1.0


def _check_c(c):
    if not (math.isfinite(c) and abs(c) < 1.0):
        raise ValueError(f"target half-angle cosine must satisfy |c| < 1, got {c!r}")


def c1_bounds(c, parity):
    """Admissible interval of the first-pulse half-angle cosine c1.

    ``alpha(c1) = -1`` exactly at both endpoints; outside them the required
    relative phase would need |cos(phi2 - phi1)| > 1.
    """
    _check_c(c)
    cn = _parity_sign(parity) * c
    root = math.sqrt(3.0 + c * c)
    lower = -0.5 * math.sqrt(3.0 - c * c + cn * root)
    upper = 0.5 * math.sqrt(3.0 - c * c - cn * root)
    return C1Bounds(lower, upper)


def _clamp_unit(x, tol=ENDPOINT_ALPHA_TOL):
    """Clamp a cosine-valued quantity onto [-1, 1]; only roundoff may stray."""
    if x > 1.0:
        if x > 1.0 + tol:
            raise OutOfBoundsError(f"cosine-valued quantity exceeded 1 by more than {tol}: {x!r}")
        return 1.0
    if x < -1.0:
        if x < -1.0 - tol:
            raise OutOfBoundsError(f"cosine-valued quantity fell below -1 by more than {tol}: {x!r}")
        return -1.0
    return x


def solve_secondary(c1, c, parity):
    """Middle-pulse parameters (c2, s2, alpha) for a free parameter c1.

    Raises
    ------
    OutOfBoundsError
        If ``c1`` lies outside ``c1_bounds(c, parity)`` (alpha would fall
        below -1) or |c1| = 1 (vanishing first pulse).
    """
    _check_c(c)
    if not (math.isfinite(c1) and abs(c1) < 1.0):
        raise OutOfBoundsError(f"c1 must satisfy |c1| < 1, got {c1!r}")
    bounds = c1_bounds(c, parity)
    if not bounds.contains(c1):
        raise OutOfBoundsError(
            f"c1 = {c1!r} outside the admissible interval "
            f"[{bounds.lower!r}, {bounds.upper!r}] for c = {c!r}, parity {parity}"
        )
    cn = _parity_sign(parity) * c
    s1_sq = 1.0 - c1 * c1
    root = math.sqrt(1.0 - s1_sq * c * c)
    c2 = -cn * s1_sq - c1 * root
    s2 = math.sqrt(s1_sq) * (root - cn * c1)
    alpha = 1.0 - (root + cn * c1) / (2.0 * s1_sq * (root - cn * c1))
    if c1 == bounds.lower or c1 == bounds.upper:
        # the endpoints are the exact roots of alpha = -1; pinning alpha keeps
        # sin(phi2 - phi1) exactly zero there, where sqrt(1 - alpha^2) would
        # otherwise amplify 1e-12 rounding into 1e-6 phases
        alpha = -1.0
    elif alpha < -1.0:
        if alpha < -1.0 - ENDPOINT_ALPHA_TOL:
            raise OutOfBoundsError(
                f"alpha = {alpha!r} below -1 for in-range c1 = {c1!r}; inconsistent inputs"
            )
        alpha = -1.0
    return _clamp_unit(c2), s2, alpha


def _branch_sign(branch):
    if branch == "+":
        return 1.0
    if branch == "-":
        return -1.0
    raise ValueError(f"branch must be '+' or '-', got {branch!r}")


def _phases(c1, c, parity, branch, c2, s2, alpha):
    sign = _branch_sign(branch)
    s = math.sqrt(1.0 - c * c)
    s1 = math.sqrt(1.0 - c1 * c1)
    sin_l = sign * math.sqrt(max(0.0, 1.0 - alpha * alpha))
    l = math.atan2(sin_l, alpha)
    # double-angle forms keep cos(2l), sin(2l) consistent with alpha = cos(l)
    cos_2l = 2.0 * alpha * alpha - 1.0
    sin_2l = 2.0 * sin_l * alpha
    pref = _parity_sign(parity) / s
    cos_k = pref * (2.0 * s1 * c1 * c2 * alpha + c1 * c1 * s2 - s1 * s1 * s2 * cos_2l)
    sin_k = pref * (2.0 * s1 * c1 * c2 * sin_l - s1 * s1 * s2 * sin_2l)
    k = math.atan2(sin_k, cos_k)
    return k, l


def solve_phases(c1, c, parity, branch="+"):
    """Phase offsets (k, l) with ``l = phi2 - phi1`` and ``k = phi2 - phi``.

    ``branch`` selects the free sign of sin(l); both choices give valid
    sequences.  The (cos k, sin k) pair always has unit radius when the
    secondary solve succeeded, so ``k`` is recovered with atan2.
    """
    c2, s2, alpha = solve_secondary(c1, c, parity)
    return _phases(c1, c, parity, branch, c2, s2, alpha)


def build_sequence(target, c1, windings=WindingNumbers(0, 0, 0), branch="+"):
    """Assemble the composite sequence for a target rotation.

    Parameters
    ----------
    target : TargetRotation
    c1 : float
        Free parameter inside ``c1_bounds(cos(theta/2), parity)``.
    windings : WindingNumbers
        Full turns added per pulse; only the parity of their sum changes the
        solved parameters, the rest is extra operation time.
    branch : str
        '+' or '-', the free sign of sin(phi2 - phi1).

    Returns
    -------
    CompositeSequence
        Errorless product equals the target unitary exactly; the first-order
        off-resonance term of the product vanishes.
    """
    c = target.c
    parity = windings.parity
    c2, s2, alpha = solve_secondary(c1, c, parity)
    k, l = _phases(c1, c, parity, branch, c2, s2, alpha)
    s1 = math.sqrt(1.0 - c1 * c1)
    theta_p1 = 2.0 * math.acos(c1)
    theta_p2 = 2.0 * math.acos(c2)
    phi1_base = reduce_angle(k - l)
    phi2_base = reduce_angle(k)
    pulses = (
        Pulse(theta_p1 + TWO_PI * windings.n1, phi1_base + target.phi),
        Pulse(theta_p2 + TWO_PI * windings.n2, phi2_base + target.phi),
        Pulse(theta_p1 + TWO_PI * windings.n3, phi1_base + target.phi),
    )
    point = SolutionPoint(
        c1=c1, s1=s1, c2=c2, s2=s2, alpha=alpha, k=k, l=l,
        parity=parity, branch=branch,
    )
    return CompositeSequence(pulses=pulses, windings=windings, target=target, solution=point)


def _three_pulses(seq):
    pulses = tuple(seq.pulses) if hasattr(seq, "pulses") else tuple(seq)
    if len(pulses) != 3:
        raise ValueError(f"expected a three-pulse sequence, got {len(pulses)} pulses")
    return pulses


def principal_parts(pulse):
    """Split a pulse's flip angle into (principal angle in (0, 2*pi], turns)."""
    n = int(math.ceil(pulse.theta / TWO_PI)) - 1
    theta_p = pulse.theta - TWO_PI * n
    if theta_p > TWO_PI:  # guard ceil roundoff just above a full turn
        n += 1
        theta_p -= TWO_PI
    return theta_p, n


def robustness_residual(seq):
    """Max-abs entry of the first-order cancellation matrix.

        sin(t2/2) I + sin(t3/2) U3 U2 + sin(t1/2) (U1 U2)^dag

    evaluated with the full flip angles; < 1e-12 for any built sequence, and
    order one for a generic unprotected triple.
    """
    p1, p2, p3 = _three_pulses(seq)
    u1 = pulse_unitary(p1)
    u2 = pulse_unitary(p2)
    u3 = pulse_unitary(p3)
    m = (
        math.sin(0.5 * p2.theta) * IDENTITY
        + math.sin(0.5 * p3.theta) * (u3 @ u2)
        + math.sin(0.5 * p1.theta) * (u1 @ u2).conj().T
    )
    return float(np.max(np.abs(m)))


def scalar_robustness_residual(seq):
    """|s2 + 2 s1 (c2 c1 - alpha s2 s1)| from the principal pulse parameters.

    Scalar reduction of ``robustness_residual``: a product of two xy-axis
    SU(2) rotations M satisfies M + M^dag = tr(M) I, so the cancellation
    matrix collapses to this single real number times the identity.  Both
    residuals vanish together.
    """
    p1, p2, p3 = _three_pulses(seq)
    half1 = 0.5 * principal_parts(p1)[0]
    half2 = 0.5 * principal_parts(p2)[0]
    c1, s1 = math.cos(half1), math.sin(half1)
    c2, s2 = math.cos(half2), math.sin(half2)
    alpha = math.cos(p2.phi - p1.phi)
    return abs(s2 + 2.0 * s1 * (c2 * c1 - alpha * s2 * s1))


def _newton_residuals(c2, alpha, c1, s1, cn):
    s2 = math.sqrt(max(0.0, 1.0 - c2 * c2))
    f1 = s2 + 2.0 * s1 * (c2 * c1 - alpha * s2 * s1)
    f2 = c2 * (c1 * c1 - s1 * s1) - 2.0 * alpha * c1 * s1 * s2 - cn
    return f1, f2, s2


def _damped_newton(c2, alpha, c1, s1, cn, tol, max_iter):
    f1, f2, s2 = _newton_residuals(c2, alpha, c1, s1, cn)
    norm = max(abs(f1), abs(f2))
    for _ in range(max_iter):
        if norm < tol:
            return c2, alpha
        if s2 < 1e-12:
            return None
        ds2 = -c2 / s2
        j11 = ds2 * (1.0 - 2.0 * alpha * s1 * s1) + 2.0 * s1 * c1
        j12 = -2.0 * s1 * s1 * s2
        j21 = (c1 * c1 - s1 * s1) - 2.0 * alpha * c1 * s1 * ds2
        j22 = -2.0 * c1 * s1 * s2
        det = j11 * j22 - j12 * j21
        if abs(det) < 1e-300:
            return None
        dc2 = -(f1 * j22 - f2 * j12) / det
        da = -(j11 * f2 - j21 * f1) / det
        lam = 1.0
        while lam > 1e-10:
            c2_new = min(1.0, max(-1.0, c2 + lam * dc2))
            a_new = min(3.0, max(-3.0, alpha + lam * da))
            g1, g2, s2_new = _newton_residuals(c2_new, a_new, c1, s1, cn)
            if max(abs(g1), abs(g2)) < norm:
                c2, alpha, s2 = c2_new, a_new, s2_new
                f1, f2 = g1, g2
                norm = max(abs(f1), abs(f2))
                break
            lam *= 0.5
        else:
            return None
    return (c2, alpha) if norm < tol else None


def oracle_solve(c1, c, parity, tol=1e-13, max_iter=100):
    """Independent two-dimensional root solve for (c2, alpha).

    Solves the robustness and diagonal-target equations directly by damped
    Newton iteration from a deterministic 3x3 start grid, with no use of the
    closed forms in ``solve_secondary``.  Returns the unique root with
    ``s2 > 0`` and ``alpha`` in [-1, 1].

    Raises
    ------
    NoConvergenceError
        If no start point converges to a valid root.
    """
    _check_c(c)
    if not abs(c1) < 1.0:
        raise OutOfBoundsError(f"c1 must satisfy |c1| < 1, got {c1!r}")
    cn = _parity_sign(parity) * c
    s1 = math.sqrt(1.0 - c1 * c1)
    roots = []
    for c2_0, a_0 in _NEWTON_STARTS:
        got = _damped_newton(c2_0, a_0, c1, s1, cn, tol, max_iter)
        if got is None:
            continue
        c2_r, a_r = got
        if not (-1.0 - 1e-9 <= a_r <= 1.0 + 1e-9):
            continue
        if math.sqrt(max(0.0, 1.0 - c2_r * c2_r)) <= 1e-9:
            continue
        if not any(abs(c2_r - c2_p) < 1e-7 and abs(a_r - a_p) < 1e-7 for c2_p, a_p in roots):
            roots.append((c2_r, a_r))
    if not roots:
        raise NoConvergenceError(
            f"no valid root found for c1 = {c1!r}, c = {c!r}, parity {parity}"
        )
    if len(roots) > 1:
        raise NoConvergenceError(
            f"multiple distinct roots found for c1 = {c1!r}, c = {c!r}: {roots!r}"
        )
    return roots[0]
