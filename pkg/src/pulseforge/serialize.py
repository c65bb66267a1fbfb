"""JSON serialization of composite sequences.

The document layout is fixed:

    {
      "target": {"theta": ..., "phi": ...},
      "pulses": [{"theta": ..., "phi": ...}, ...3 entries...],
      "windings": [n1, n2, n3],
      "branch": "+" | "-"
    }

Family sequences append ``"family"`` and ``"implemented_sign"``.  Angles are
radians written with 17 significant digits (lossless double round-trip);
pulse flip angles are serialized as principal parts in (0, 2*pi), with the
windings array carrying the extra full turns.  The writer emits the text
directly so identical sequences always produce identical bytes.
"""

import json
import math
from dataclasses import dataclass

from .errors import PulseforgeError
from .solver import CompositeSequence, TargetRotation, WindingNumbers
from .su2 import TWO_PI, Pulse, reduce_angle


class SequenceFormatError(PulseforgeError, ValueError):
    """The JSON document is not a valid serialized sequence."""


@dataclass(frozen=True)
class LoadedSequence:
    """A sequence document read back from JSON; pulses carry full flip angles."""

    target: TargetRotation
    pulses: tuple
    windings: WindingNumbers
    branch: str
    family: str = None
    implemented_sign: int = 1


def _g17(x):
    return format(float(x), ".17g")


def dump_sequence(seq):
    """Serialize a CompositeSequence or FamilySequence to JSON text."""
    windings = seq.windings
    branch = seq.solution.branch if isinstance(seq, CompositeSequence) else "+"
    ns = (windings.n1, windings.n2, windings.n3)
    pulse_lines = []
    for pulse, n in zip(seq.pulses, ns):
        theta_p = pulse.theta - TWO_PI * n
        pulse_lines.append(
            f'    {{"theta": {_g17(theta_p)}, "phi": {_g17(pulse.phi)}}}'
        )
    lines = [
        "{",
        f'  "target": {{"theta": {_g17(seq.target.theta)}, '
        f'"phi": {_g17(reduce_angle(seq.target.phi))}}},',
        '  "pulses": [',
        ",\n".join(pulse_lines),
        "  ],",
        f'  "windings": [{ns[0]}, {ns[1]}, {ns[2]}],',
        f'  "branch": "{branch}"',
    ]
    family = getattr(seq, "family", None)
    if family is not None:
        lines[-1] += ","
        lines.append(f'  "family": "{family}",')
        lines.append(f'  "implemented_sign": {seq.implemented_sign}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_sequence(text):
    """Parse a serialized sequence; reconstructs full flip angles from windings."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SequenceFormatError(f"not valid JSON: {exc}") from exc
    try:
        target = TargetRotation(float(doc["target"]["theta"]), float(doc["target"]["phi"]))
        raw_windings = [int(n) for n in doc["windings"]]
        raw_pulses = doc["pulses"]
        branch = doc["branch"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SequenceFormatError(f"malformed sequence document: {exc}") from exc
    if len(raw_pulses) != len(raw_windings):
        raise SequenceFormatError("pulses and windings must have equal length")
    if branch not in ("+", "-"):
        raise SequenceFormatError(f"branch must be '+' or '-', got {branch!r}")
    pulses = []
    for entry, n in zip(raw_pulses, raw_windings):
        theta_p = float(entry["theta"])
        if not 0.0 < theta_p <= TWO_PI:
            raise SequenceFormatError(
                f"principal flip angle must lie in (0, 2*pi], got {theta_p!r}"
            )
        pulses.append(Pulse(theta_p + TWO_PI * n, float(entry["phi"])))
    windings = WindingNumbers(*raw_windings) if len(raw_windings) == 3 else None
    if windings is None:
        raise SequenceFormatError("exactly three pulses expected")
    family = doc.get("family")
    sign = int(doc.get("implemented_sign", 1))
    if sign not in (1, -1):
        raise SequenceFormatError(f"implemented_sign must be +1 or -1, got {sign!r}")
    if not math.isfinite(target.theta):
        raise SequenceFormatError("non-finite target angle")
    return LoadedSequence(
        target=target, pulses=tuple(pulses), windings=windings,
        branch=branch, family=family, implemented_sign=sign,
    )
