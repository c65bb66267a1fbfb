"""Command-line front end: sequence synthesis, family constructors, interval
bounds, verification, and sweep/scaling table generation.

Angles are decimal radians by default; the literals ``pi``, ``pi/2``,
``3pi/4`` etc. are accepted as-is, and ``--degrees`` switches plain numbers
to degrees.  Sequences are emitted as JSON, sweeps as CSV with '#' metadata
comments (suppressible with ``--no-meta``), both byte-deterministic.
"""

import math
import re
import sys

import numpy as np

from ._version import __version__
from .analysis import infidelity_sweep, scaling_exponent, state_infidelity_sweep, time_sweep
from .errors import FloorReachedError, InvalidIndicesError, NoConvergenceError, OutOfBoundsError
from .families import CorpseIndices, TwinIndices, corpse, fundamental_corpse, short_corpse, twin_corpse
from .serialize import SequenceFormatError, dump_sequence, load_sequence
from .solver import TargetRotation, WindingNumbers, build_sequence, c1_bounds, robustness_residual
from .su2 import Pulse, gate_infidelity, pulse_unitary, sequence_unitary

VERIFY_RESIDUAL_MAX = 1e-10
VERIFY_DISTANCE_MAX = 1e-9

_PI_LITERAL = re.compile(r"^\s*([+-]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$", re.IGNORECASE)


def _parse_angle(text, degrees):
    match = _PI_LITERAL.match(text)
    if match:
        coef_text = match.group(1)
        if coef_text in ("", "+"):
            coef = 1.0
        elif coef_text == "-":
            coef = -1.0
        else:
            coef = float(coef_text)
        denom = float(match.group(2)) if match.group(2) else 1.0
        return coef * math.pi / denom
    value = float(text)
    return math.radians(value) if degrees else value


def _parse_windings(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"expected n1,n2,n3, got {text!r}")
    return WindingNumbers(int(parts[0]), int(parts[1]), int(parts[2]))


def _emit(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as handle:
            handle.write(text)


def _read_input(path):
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path) as handle:
        return handle.read()


def _g17(x):
    return format(float(x), ".17g")


def _add_output(parser):
    parser.add_argument("--output", "-o", default=None, help="output file (default stdout)")


def _add_angle_flags(parser):
    parser.add_argument("--degrees", action="store_true",
                        help="interpret plain numeric angles as degrees")


def _cmd_synth(args, parser):
    theta = _parse_angle(args.theta, args.degrees)
    phi = _parse_angle(args.phi, args.degrees)
    target = TargetRotation(theta, phi)
    windings = WindingNumbers(args.n1, args.n2, args.n3)
    seq = build_sequence(target, args.c1, windings, args.branch)
    _emit(dump_sequence(seq), args.output)
    return 0


def _cmd_family(args, parser):
    theta = _parse_angle(args.theta, args.degrees)
    phi = _parse_angle(args.phi, args.degrees)
    target = TargetRotation(theta, phi)
    if args.name == "corpse":
        seq = corpse(target, CorpseIndices(args.nu1, args.nu2, args.nu3))
    elif args.name == "short-corpse":
        seq = short_corpse(target)
    elif args.name == "fundamental-corpse":
        seq = fundamental_corpse(target)
    else:
        seq = twin_corpse(target, TwinIndices(args.mu1, args.mu2, args.mu3))
    _emit(dump_sequence(seq), args.output)
    return 0


def _cmd_bounds(args, parser):
    theta = _parse_angle(args.theta, args.degrees)
    target = TargetRotation(theta)
    bounds = c1_bounds(target.c, args.parity)
    sys.stdout.write(f"c1_lower: {_g17(bounds.lower)}\n")
    sys.stdout.write(f"c1_upper: {_g17(bounds.upper)}\n")
    return 0


def _cmd_verify(args, parser):
    loaded = load_sequence(_read_input(args.input))
    residual = robustness_residual(loaded.pulses)
    ideal = pulse_unitary(Pulse(loaded.target.theta, loaded.target.phi), 0.0)
    signed_ideal = loaded.implemented_sign * ideal
    product = sequence_unitary(loaded.pulses, 0.0)
    distance = float(np.max(np.abs(product - signed_ideal)))
    infidelity = gate_infidelity(ideal, sequence_unitary(loaded.pulses, args.f))
    sys.stdout.write(f"robustness_residual: {_g17(residual)}\n")
    sys.stdout.write(f"product_distance: {_g17(distance)}\n")
    sys.stdout.write(f"gate_infidelity: {_g17(infidelity)}\n")
    ok = residual <= VERIFY_RESIDUAL_MAX and distance <= VERIFY_DISTANCE_MAX
    return 0 if ok else 1


def _cmd_sweep_infidelity(args, parser):
    table = infidelity_sweep(
        _parse_angle(args.theta, args.degrees), _parse_windings(args.n),
        args.f, args.points, args.branch,
    )
    _emit(table.to_csv(include_meta=not args.no_meta), args.output)
    return 0


def _cmd_sweep_state(args, parser):
    table = state_infidelity_sweep(
        _parse_angle(args.theta, args.degrees), _parse_windings(args.n),
        args.f, args.points, args.branch,
    )
    _emit(table.to_csv(include_meta=not args.no_meta), args.output)
    return 0


def _cmd_sweep_time(args, parser):
    grid = np.linspace(args.c_min, args.c_max, args.points)
    table = time_sweep(args.n, grid)
    _emit(table.to_csv(include_meta=not args.no_meta), args.output)
    return 0


def _cmd_scaling(args, parser):
    theta = _parse_angle(args.theta, args.degrees)
    target = TargetRotation(theta)
    selectors = [args.elementary, args.c1 is not None, args.family is not None]
    if sum(bool(s) for s in selectors) != 1:
        parser.error("exactly one of --elementary, --c1, --family is required")
    if args.elementary:
        subject = Pulse(theta, 0.0)
        label = "elementary"
    elif args.c1 is not None:
        subject = build_sequence(target, args.c1, _parse_windings(args.n), args.branch)
        label = f"c1={_g17(args.c1)}"
    else:
        constructors = {
            "short-corpse": short_corpse,
            "fundamental-corpse": fundamental_corpse,
            "twin": twin_corpse,
        }
        if args.family not in constructors:
            parser.error(f"unknown family {args.family!r} for scaling")
        subject = constructors[args.family](target)
        label = args.family

    fit = scaling_exponent(subject, args.f_min, args.f_max, args.points)
    pulses = (subject,) if isinstance(subject, Pulse) else tuple(subject.pulses)
    reference = sequence_unitary(pulses, 0.0)
    fs = np.geomspace(args.f_min, args.f_max, args.points)
    rows = [(float(fv), gate_infidelity(reference, sequence_unitary(pulses, float(fv)))) for fv in fs]
    lines = []
    if not args.no_meta:
        lines += [
            "# table: scaling",
            f"# subject: {label}",
            f"# theta: {_g17(theta)}",
            f"# exponent: {_g17(fit.exponent)}",
            f"# intercept: {_g17(fit.intercept)}",
            f"# residual: {_g17(fit.residual)}",
            f"# version: {__version__}",
        ]
    lines.append("f,gate_infidelity")
    lines += [f"{fv:.16e},{val:.16e}" for fv, val in rows]
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _build_parser():
    import argparse

    parser = argparse.ArgumentParser(
        prog="pulseforge",
        description="Synthesize and evaluate three-pulse composite pulses robust "
                    "to off-resonance error.",
    )
    parser.add_argument("--version", action="version", version=f"pulseforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="solve for a sequence at a chosen c1")
    p.add_argument("--theta", required=True)
    p.add_argument("--phi", default="0")
    p.add_argument("--c1", type=float, required=True)
    p.add_argument("--n1", type=int, default=0)
    p.add_argument("--n2", type=int, default=0)
    p.add_argument("--n3", type=int, default=0)
    p.add_argument("--branch", choices=["+", "-"], default="+")
    _add_angle_flags(p)
    _add_output(p)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("family", help="build a named family member")
    p.add_argument("--name", required=True,
                   choices=["corpse", "short-corpse", "fundamental-corpse", "twin"])
    p.add_argument("--theta", required=True)
    p.add_argument("--phi", default="0")
    p.add_argument("--nu1", type=int, default=1)
    p.add_argument("--nu2", type=int, default=1)
    p.add_argument("--nu3", type=int, default=0)
    p.add_argument("--mu1", type=int, default=1)
    p.add_argument("--mu2", type=int, default=0)
    p.add_argument("--mu3", type=int, default=1)
    _add_angle_flags(p)
    _add_output(p)
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("bounds", help="print the admissible c1 interval")
    p.add_argument("--theta", required=True)
    p.add_argument("--parity", type=int, choices=[0, 1], required=True)
    _add_angle_flags(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("verify", help="check a serialized sequence")
    p.add_argument("--input", "-i", default="-", help="sequence JSON file (default stdin)")
    p.add_argument("--f", type=float, default=0.0)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sweep-infidelity", help="gate infidelity along the c1 interval")
    p.add_argument("--theta", required=True)
    p.add_argument("--n", default="0,0,0", help="windings n1,n2,n3")
    p.add_argument("--f", type=float, required=True)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--branch", choices=["+", "-"], default="+")
    p.add_argument("--no-meta", action="store_true")
    _add_angle_flags(p)
    _add_output(p)
    p.set_defaults(func=_cmd_sweep_infidelity)

    p = sub.add_parser("sweep-state", help="state infidelity along the c1 interval")
    p.add_argument("--theta", required=True)
    p.add_argument("--n", default="0,0,0", help="windings n1,n2,n3")
    p.add_argument("--f", type=float, required=True)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--branch", choices=["+", "-"], default="+")
    p.add_argument("--no-meta", action="store_true")
    _add_angle_flags(p)
    _add_output(p)
    p.set_defaults(func=_cmd_sweep_state)

    p = sub.add_parser("sweep-time", help="minimum operation time against c")
    p.add_argument("--n", type=int, default=0, help="total winding number")
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--c-min", type=float, default=-0.99)
    p.add_argument("--c-max", type=float, default=0.99)
    p.add_argument("--no-meta", action="store_true")
    _add_output(p)
    p.set_defaults(func=_cmd_sweep_time)

    p = sub.add_parser("scaling", help="error-scaling exponent fit")
    p.add_argument("--theta", required=True)
    p.add_argument("--elementary", action="store_true")
    p.add_argument("--c1", type=float, default=None)
    p.add_argument("--family", default=None)
    p.add_argument("--n", default="0,0,0", help="windings n1,n2,n3 (with --c1)")
    p.add_argument("--branch", choices=["+", "-"], default="+")
    p.add_argument("--f-min", type=float, default=1e-3)
    p.add_argument("--f-max", type=float, default=1e-2)
    p.add_argument("--points", type=int, default=12)
    p.add_argument("--no-meta", action="store_true")
    _add_angle_flags(p)
    _add_output(p)
    p.set_defaults(func=_cmd_scaling)

    return parser


def run(argv=None):
    """Parse and execute one invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, parser)
    except SystemExit as exc:  # parser.error inside a handler
        return int(exc.code or 0)
    except (OutOfBoundsError, InvalidIndicesError, NoConvergenceError,
            FloorReachedError, SequenceFormatError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def main():
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
