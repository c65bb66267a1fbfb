"""Quantitative evaluation of composite sequences: infidelity sweeps over the
solution interval, power-law error-scaling fits, and operation-time analysis.

Sweep results are carried as :class:`SweepTable`, a rectangular numeric table
with deterministic CSV serialization (identical inputs give byte-identical
output).  Grid rows are independent; chunks may be evaluated on worker
threads, capped by the ``PULSEFORGE_THREADS`` environment variable.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._version import __version__
from .backend import kernels
from .errors import FloorReachedError
from .solver import (
    TargetRotation,
    WindingNumbers,
    build_sequence,
    c1_bounds,
    solve_secondary,
)
from .su2 import TWO_PI, Pulse, gate_infidelity, pulse_unitary, sequence_unitary, state_infidelity

INFIDELITY_FLOOR = 1e-13

_THREADS_ENV = "PULSEFORGE_THREADS"
_MIN_CHUNK = 16


def _env_threads():
    raw = os.environ.get(_THREADS_ENV)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise ValueError(f"{_THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def _threaded_batch(fn, thetas, phis, f, *extra):
    n = thetas.shape[0]
    workers = min(_env_threads(), max(1, n // _MIN_CHUNK))
    if workers <= 1:
        return fn(thetas, phis, f, *extra)
    edges = np.linspace(0, n, workers + 1).astype(int)
    spans = list(zip(edges[:-1], edges[1:]))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(
            pool.map(lambda se: fn(thetas[se[0]:se[1]], phis[se[0]:se[1]], f, *extra), spans)
        )
    return np.concatenate(parts)


@dataclass(frozen=True)
class SweepTable:
    """Columnar numeric sweep results plus run metadata.

    ``data`` is rectangular with the grid coordinate in the first column,
    strictly increasing; all values finite.
    """

    name: str
    columns: tuple
    data: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        object.__setattr__(self, "data", data)
        if data.ndim != 2 or data.shape[1] != len(self.columns):
            raise ValueError("table data must be rectangular with one column per label")
        if not np.all(np.isfinite(data)):
            raise ValueError("table values must be finite")
        if data.shape[0] > 1 and not np.all(np.diff(data[:, 0]) > 0.0):
            raise ValueError("grid coordinates must be strictly increasing")

    def to_csv(self, include_meta=True):
        """Deterministic CSV text: '#' metadata lines, header, then rows.

        Floats are written in scientific notation with 17 significant digits
        and LF line endings, so identical tables serialize to identical bytes.
        """
        lines = []
        if include_meta:
            lines.append(f"# table: {self.name}")
            lines.extend(f"# {key}: {value}" for key, value in self.metadata.items())
        lines.append(",".join(self.columns))
        for row in self.data:
            lines.append(",".join(format(x, ".16e") for x in row))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares slope of log(infidelity) against log(f)."""

    exponent: float
    intercept: float
    residual: float
    f_min: float
    f_max: float
    num_points: int


def _pulses_of(obj):
    if isinstance(obj, Pulse):
        return (obj,)
    if hasattr(obj, "pulses"):
        return tuple(obj.pulses)
    return tuple(obj)


def operation_time(seq):
    """Total flip angle of the sequence, i.e. its duration at unit drive rate."""
    return math.fsum(p.theta for p in _pulses_of(seq))


def operation_time_closed_form(c, c1, n):
    """Duration ``4 arccos(c1) + 2 arccos(c2(c, c1)) + 2 pi n`` of a built triple."""
    c2, _, _ = solve_secondary(c1, c, n & 1)
    return 4.0 * math.acos(c1) + 2.0 * math.acos(c2) + TWO_PI * n


def min_operation_time(c, n):
    """Shortest duration over the c1 interval at fixed total winding ``n``.

    The duration decreases monotonically in c1, so the optimum sits at the
    upper interval endpoint.  Returns ``(c1_star, duration)``.
    """
    c1_star = c1_bounds(c, n & 1).upper
    return c1_star, operation_time_closed_form(c, c1_star, n)


def _sweep_sequences(theta, windings, grid_points, branch):
    target = TargetRotation(theta, 0.0)
    bounds = c1_bounds(target.c, windings.parity)
    grid = np.linspace(bounds.lower, bounds.upper, grid_points)
    seqs = [build_sequence(target, float(c1), windings, branch) for c1 in grid]
    thetas = np.array([[p.theta for p in s.pulses] for s in seqs])
    phis = np.array([[p.phi for p in s.pulses] for s in seqs])
    return target, grid, thetas, phis


def _sweep_metadata(theta, f, windings, branch, grid_points):
    return {
        "theta": format(theta, ".17g"),
        "f": format(f, ".17g"),
        "windings": f"{windings.n1},{windings.n2},{windings.n3}",
        "branch": branch,
        "points": str(grid_points),
        "version": __version__,
    }


def infidelity_sweep(theta, windings, f, grid_points=101, branch="+"):
    """Gate infidelity along the c1 interval at fixed error fraction ``f``.

    One row per grid point over ``[lower, upper]`` (endpoints included), with
    the constant single-pulse reference in the last column for comparison.
    """
    if grid_points < 3:
        raise ValueError(f"need at least 3 grid points, got {grid_points!r}")
    if f == 0.0:
        raise ValueError("f must be nonzero for a gate-infidelity sweep")
    target, grid, thetas, phis = _sweep_sequences(theta, windings, grid_points, branch)
    ideal = pulse_unitary(Pulse(theta, 0.0), 0.0)
    values = _threaded_batch(kernels.batch_gate_infidelity, thetas, phis, f, ideal)
    elementary = gate_infidelity(ideal, pulse_unitary(Pulse(theta, 0.0), f))
    data = np.column_stack([grid, values, np.full(grid_points, elementary)])
    return SweepTable(
        name="gate-infidelity-sweep",
        columns=("c1", "gate_infidelity", "elementary"),
        data=data,
        metadata=_sweep_metadata(theta, f, windings, branch, grid_points),
    )


def state_infidelity_sweep(theta, windings, f, grid_points=101, branch="+", psi=None):
    """State infidelity along the c1 interval for initial state ``psi``.

    Defaults to the +z eigenstate.  Unlike the gate sweep, ``f = 0`` is
    allowed and gives an all-zero column.
    """
    if grid_points < 3:
        raise ValueError(f"need at least 3 grid points, got {grid_points!r}")
    if psi is None:
        psi = np.array([1.0, 0.0], dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    target, grid, thetas, phis = _sweep_sequences(theta, windings, grid_points, branch)
    ideal = pulse_unitary(Pulse(theta, 0.0), 0.0)
    values = _threaded_batch(kernels.batch_state_infidelity, thetas, phis, f, ideal, psi)
    elementary = state_infidelity(ideal, pulse_unitary(Pulse(theta, 0.0), f), psi)
    data = np.column_stack([grid, values, np.full(grid_points, elementary)])
    return SweepTable(
        name="state-infidelity-sweep",
        columns=("c1", "state_infidelity", "elementary"),
        data=data,
        metadata=_sweep_metadata(theta, f, windings, branch, grid_points),
    )


def time_sweep(n, c_grid):
    """Minimum duration as a function of the target half-angle cosine."""
    c_grid = np.asarray(c_grid, dtype=float)
    if c_grid.size and (c_grid.min() <= -1.0 or c_grid.max() >= 1.0):
        raise ValueError("c grid must lie strictly inside (-1, 1)")
    rows = np.array([[c, min_operation_time(float(c), n)[1]] for c in c_grid])
    return SweepTable(
        name="min-operation-time-sweep",
        columns=("c", "L_min"),
        data=rows,
        metadata={"n": str(n), "points": str(c_grid.size), "version": __version__},
    )


def scaling_exponent(seq_or_pulse, f_min, f_max, num_points=12):
    """Power-law exponent of the gate infidelity over a geometric f grid.

    Fits ``log F`` against ``log f`` by least squares.  The reference gate is
    the object's own errorless propagator, so single pulses and composite
    sequences are treated uniformly.

    Raises
    ------
    FloorReachedError
        If any sampled infidelity sits below 1e-13, where roundoff noise
        dominates; shrink the f range instead.
    """
    if not (0.0 < f_min < f_max <= 0.3):
        raise ValueError(f"need 0 < f_min < f_max <= 0.3, got ({f_min!r}, {f_max!r})")
    if num_points < 6:
        raise ValueError(f"need at least 6 points for a scaling fit, got {num_points!r}")
    pulses = _pulses_of(seq_or_pulse)
    reference = sequence_unitary(pulses, 0.0)
    fs = np.geomspace(f_min, f_max, num_points)
    values = np.array([gate_infidelity(reference, sequence_unitary(pulses, float(fv))) for fv in fs])
    if np.any(values < INFIDELITY_FLOOR):
        raise FloorReachedError(
            f"infidelity below {INFIDELITY_FLOOR:g} in [{f_min:g}, {f_max:g}]; shrink the range"
        )
    log_f = np.log(fs)
    log_v = np.log(values)
    slope, intercept = np.polyfit(log_f, log_v, 1)
    fitted = slope * log_f + intercept
    residual = float(np.sqrt(np.mean((log_v - fitted) ** 2)))
    return ScalingFit(
        exponent=float(slope), intercept=float(intercept), residual=residual,
        f_min=f_min, f_max=f_max, num_points=num_points,
    )


def first_order_derivative_norm(seq_or_pulse, step=1e-5):
    """Max-abs norm of the f-derivative of the propagator at f = 0.

    Central finite difference with the global-phase direction projected out;
    below 1e-8 for robust sequences, order one otherwise.
    """
    pulses = _pulses_of(seq_or_pulse)
    plus = sequence_unitary(pulses, step)
    minus = sequence_unitary(pulses, -step)
    diff = (plus - minus) / (2.0 * step)
    base = sequence_unitary(pulses, 0.0)
    diff = diff - 0.5 * np.trace(base.conj().T @ diff) * base
    return float(np.max(np.abs(diff)))
