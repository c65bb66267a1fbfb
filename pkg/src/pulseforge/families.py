"""Closed-form constructors for the CORPSE composite-pulse family, its short
and fundamental members, and the mirror ("twin") family.

All of them sit on the edges of the one-parameter solution interval of
``pulseforge.solver``: CORPSE members at the upper endpoint ``c1 = upper`` and
twins at the lower endpoint, both characterized by ``cos(phi2 - phi1) = -1``.
Depending on the winding indices a CORPSE triple may implement
``U(2*pi - theta, phi + pi) = -U(theta, phi)`` instead of ``U(theta, phi)``;
the constructors therefore measure the implemented sign from the errorless
product instead of assuming it.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidIndicesError
from .solver import TargetRotation, WindingNumbers, principal_parts
from .su2 import TWO_PI, Pulse, pulse_unitary, sequence_unitary

SIGN_MATCH_TOL = 1e-10


@dataclass(frozen=True)
class CorpseIndices:
    """Full-turn indices (nu1, nu2, nu3) of a CORPSE member; all >= 0."""

    nu1: int
    nu2: int
    nu3: int

    def __post_init__(self):
        for name in ("nu1", "nu2", "nu3"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise InvalidIndicesError(
                    f"CORPSE index {name} must be a non-negative integer, got {value!r}"
                )


@dataclass(frozen=True)
class TwinIndices:
    """Full-turn indices (mu1, mu2, mu3) of a twin member; mu1, mu3 >= 1, mu2 >= 0."""

    mu1: int
    mu2: int
    mu3: int

    def __post_init__(self):
        for name, minimum in (("mu1", 1), ("mu2", 0), ("mu3", 1)):
            value = getattr(self, name)
            if not isinstance(value, int) or value < minimum:
                raise InvalidIndicesError(
                    f"twin index {name} must be an integer >= {minimum}, got {value!r}"
                )


@dataclass(frozen=True)
class FamilySequence:
    """A family member's pulse triple plus the sign it implements.

    ``implemented_sign`` is +1 when the errorless product equals
    ``U(theta, phi)`` and -1 when it equals ``-U(theta, phi)``; it is always
    measured from the product, never inferred from the indices.
    """

    family: str
    pulses: tuple
    target: TargetRotation
    windings: WindingNumbers
    implemented_sign: int


def _kappa(target):
    return math.asin(0.5 * target.s)


def _family_sequence(name, target, pulses):
    product = sequence_unitary(pulses, 0.0)
    ideal = pulse_unitary(Pulse(target.theta, target.phi), 0.0)
    d_plus = float(np.max(np.abs(product - ideal)))
    d_minus = float(np.max(np.abs(product + ideal)))
    if d_plus < SIGN_MATCH_TOL:
        sign = 1
    elif d_minus < SIGN_MATCH_TOL:
        sign = -1
    else:
        raise RuntimeError(
            f"{name} product matches neither +target nor -target "
            f"(distances {d_plus:.3e}, {d_minus:.3e})"
        )
    windings = WindingNumbers(*(principal_parts(p)[1] for p in pulses))
    return FamilySequence(
        family=name, pulses=tuple(pulses), target=target,
        windings=windings, implemented_sign=sign,
    )


def corpse(target, indices):
    """CORPSE member with explicit full-turn indices.

    Flip angles ``theta/2 - kappa + 2 pi nu1``, ``2 pi nu2 - 2 kappa`` and
    ``theta/2 - kappa + 2 pi nu3`` with ``kappa = arcsin(sin(theta/2) / 2)``;
    outer phases at ``phi``, middle phase at ``phi + pi``.

    Raises
    ------
    InvalidIndicesError
        If any flip angle comes out non-positive (e.g. nu2 = 0).
    """
    kappa = _kappa(target)
    half = 0.5 * target.theta
    th1 = half - kappa + TWO_PI * indices.nu1
    th2 = TWO_PI * indices.nu2 - 2.0 * kappa
    th3 = half - kappa + TWO_PI * indices.nu3
    if min(th1, th2, th3) <= 0.0:
        raise InvalidIndicesError(
            f"CORPSE indices {indices!r} give non-positive flip angles "
            f"({th1!r}, {th2!r}, {th3!r}) for theta = {target.theta!r}"
        )
    pulses = (
        Pulse(th1, target.phi),
        Pulse(th2, math.pi + target.phi),
        Pulse(th3, target.phi),
    )
    return _family_sequence("corpse", target, pulses)


def short_corpse(target):
    """Shortest CORPSE member, rewritten to implement ``U(theta, phi)`` itself.

    Flip angles ``pi - theta/2 - kappa`` (outer, phase ``phi + pi``) and
    ``2 pi - 2 kappa`` (middle, phase ``phi``).  Equals the generic sequence
    at the upper interval endpoint with zero windings.
    """
    kappa = _kappa(target)
    th1 = math.pi - 0.5 * target.theta - kappa
    th2 = TWO_PI - 2.0 * kappa
    pulses = (
        Pulse(th1, math.pi + target.phi),
        Pulse(th2, target.phi),
        Pulse(th1, math.pi + target.phi),
    )
    return _family_sequence("short_corpse", target, pulses)


def fundamental_corpse(target):
    """CORPSE member with indices (1, 1, 0); implements ``U(theta, phi)``.

    Equals the generic sequence at the upper interval endpoint of odd parity
    with windings (1, 0, 0).
    """
    seq = corpse(target, CorpseIndices(1, 1, 0))
    return FamilySequence(
        family="fundamental_corpse", pulses=seq.pulses, target=seq.target,
        windings=seq.windings, implemented_sign=seq.implemented_sign,
    )


def twin_corpse(target, indices=TwinIndices(1, 0, 1)):
    """Mirror-family member at the lower interval endpoint.

    Flip angles ``2 pi mu1 - theta/2 + kappa``, ``2 pi mu2 + 2 kappa`` and
    ``2 pi mu3 - theta/2 + kappa``; outer phases at ``phi + pi``, middle at
    ``phi``.
    """
    kappa = _kappa(target)
    half = 0.5 * target.theta
    th1 = TWO_PI * indices.mu1 - half + kappa
    th2 = TWO_PI * indices.mu2 + 2.0 * kappa
    th3 = TWO_PI * indices.mu3 - half + kappa
    pulses = (
        Pulse(th1, math.pi + target.phi),
        Pulse(th2, target.phi),
        Pulse(th3, math.pi + target.phi),
    )
    return _family_sequence("twin", target, pulses)
