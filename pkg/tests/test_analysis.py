"""Tests for sweep tables, operation-time analysis, and scaling-exponent fits."""

import math

import numpy as np
import pytest

from pulseforge.analysis import (
    ScalingFit,
    SweepTable,
    first_order_derivative_norm,
    infidelity_sweep,
    min_operation_time,
    operation_time,
    operation_time_closed_form,
    scaling_exponent,
    state_infidelity_sweep,
    time_sweep,
)
from pulseforge.errors import FloorReachedError
from pulseforge.families import fundamental_corpse, short_corpse
from pulseforge.solver import TargetRotation, WindingNumbers, build_sequence, c1_bounds
from pulseforge.su2 import TWO_PI, Pulse

PI = math.pi


class TestOperationTime:
    def test_short_corpse_pi(self):
        seq = short_corpse(TargetRotation(PI))
        assert operation_time(seq) == pytest.approx(7.0 * PI / 3.0, abs=1e-12)

    def test_short_corpse_quarter_turn(self):
        seq = short_corpse(TargetRotation(PI / 2))
        assert operation_time(seq) == pytest.approx(9.5501058, abs=1e-6)

    def test_winding_adds_full_turn(self):
        # at theta = pi the solved angles are parity-independent, so one extra
        # turn adds exactly 2*pi
        t = TargetRotation(PI)
        base = build_sequence(t, 0.2, WindingNumbers(0, 0, 0), "+")
        wound = build_sequence(t, 0.2, WindingNumbers(1, 0, 0), "+")
        assert operation_time(wound) == pytest.approx(operation_time(base) + TWO_PI, abs=1e-12)

    def test_parity_preserving_windings_add_turns(self):
        # away from theta = pi the middle pulse depends on the winding parity;
        # comparisons at fixed parity shift by whole turns
        t = TargetRotation(1.9)
        base = build_sequence(t, 0.2, WindingNumbers(0, 0, 0), "+")
        for w, turns in ((WindingNumbers(1, 1, 0), 2), (WindingNumbers(1, 0, 1), 2),
                         (WindingNumbers(0, 2, 0), 2)):
            wound = build_sequence(t, 0.2, w, "+")
            assert operation_time(wound) == pytest.approx(
                operation_time(base) + turns * TWO_PI, abs=1e-12
            )

    def test_agrees_with_closed_form(self):
        for c, c1, n in ((0.0, 0.3, 0), (0.5, -0.2, 1), (-0.7, 0.1, 2)):
            seq = build_sequence(
                TargetRotation(2.0 * math.acos(c)), c1,
                WindingNumbers(n, 0, 0), "+",
            )
            assert operation_time(seq) == pytest.approx(
                operation_time_closed_form(c, c1, n), abs=1e-12
            )


class TestMinOperationTime:
    def test_pi_rotation(self):
        c1_star, duration = min_operation_time(0.0, 0)
        assert c1_star == pytest.approx(math.sqrt(3.0) / 2.0, abs=1e-12)
        assert duration == pytest.approx(7.0 * PI / 3.0, abs=1e-12)

    def test_odd_winding_adds_turn(self):
        c1_star, duration = min_operation_time(0.0, 1)
        assert c1_star == pytest.approx(math.sqrt(3.0) / 2.0, abs=1e-12)
        assert duration == pytest.approx(13.0 * PI / 3.0, abs=1e-12)

    def test_degenerate_limit_is_two_full_turns(self):
        for n in (0, 1):
            _, duration = min_operation_time(1.0 - 1e-15, n)
            assert duration == pytest.approx(4.0 * PI, abs=1e-6)

    def test_duration_decreases_with_c1(self):
        for c in (0.0, 0.3, -0.3, 1.0 / math.sqrt(2.0), -1.0 / math.sqrt(2.0), 0.95, -0.95):
            for parity in (0, 1):
                b = c1_bounds(c, parity)
                grid = np.linspace(b.lower, b.upper, 23)[1:-1]
                ls = np.array([operation_time_closed_form(c, float(x), parity) for x in grid])
                assert np.all(ls[2:] - ls[:-2] < 0.0)


class TestSweepTable:
    def test_rectangularity_enforced(self):
        with pytest.raises(ValueError):
            SweepTable("t", ("a", "b"), np.zeros((3, 3)))

    def test_grid_must_increase(self):
        with pytest.raises(ValueError):
            SweepTable("t", ("a", "b"), np.array([[1.0, 0.0], [1.0, 0.0]]))

    def test_finite_values_required(self):
        with pytest.raises(ValueError):
            SweepTable("t", ("a",), np.array([[float("nan")]]))

    def test_csv_shape_and_determinism(self):
        table = infidelity_sweep(PI, WindingNumbers(0, 0, 0), 0.1, 11)
        text = table.to_csv()
        again = infidelity_sweep(PI, WindingNumbers(0, 0, 0), 0.1, 11).to_csv()
        assert text == again
        lines = text.split("\n")
        assert lines[0] == "# table: gate-infidelity-sweep"
        header_idx = next(i for i, ln in enumerate(lines) if not ln.startswith("#"))
        assert lines[header_idx] == "c1,gate_infidelity,elementary"
        assert len(lines) == header_idx + 11 + 2  # rows + trailing newline split
        assert text.endswith("\n")
        bare = table.to_csv(include_meta=False)
        assert bare.split("\n")[0] == "c1,gate_infidelity,elementary"

    def test_threads_do_not_change_bytes(self, monkeypatch):
        base = infidelity_sweep(PI, WindingNumbers(0, 0, 0), 0.1, 64).to_csv()
        monkeypatch.setenv("PULSEFORGE_THREADS", "3")
        threaded = infidelity_sweep(PI, WindingNumbers(0, 0, 0), 0.1, 64).to_csv()
        assert threaded == base

    def test_bad_thread_env_rejected(self, monkeypatch):
        monkeypatch.setenv("PULSEFORGE_THREADS", "zero")
        with pytest.raises(ValueError):
            infidelity_sweep(PI, WindingNumbers(0, 0, 0), 0.1, 64)


class TestInfidelitySweep:
    def test_minimum_at_right_end_for_zero_windings(self):
        table = infidelity_sweep(PI, WindingNumbers(0, 0, 0), 0.1, 101)
        assert int(np.argmin(table.data[:, 1])) == 100

    def test_minimum_at_left_end_for_middle_winding(self):
        table = infidelity_sweep(PI, WindingNumbers(0, 1, 0), 0.1, 101)
        assert int(np.argmin(table.data[:, 1])) == 0

    def test_first_winding_right_end_beats_other_curves(self):
        tables = {
            w: infidelity_sweep(PI, WindingNumbers(*w), 0.1, 101)
            for w in ((0, 0, 0), (1, 0, 0), (0, 1, 0))
        }
        best = tables[(1, 0, 0)].data[-1, 1]
        others = np.concatenate(
            [tables[(0, 0, 0)].data[:, 1], tables[(0, 1, 0)].data[:, 1]]
        )
        assert best < others.min()

    def test_elementary_reference_column(self):
        table = infidelity_sweep(PI, WindingNumbers(0, 0, 0), 0.1, 21)
        assert np.all(table.data[:, 2] == table.data[0, 2])
        assert table.data[0, 2] == pytest.approx(4.993e-3, abs=1e-5)

    def test_even_in_f(self):
        plus = infidelity_sweep(1.9, WindingNumbers(0, 0, 0), 0.07, 31)
        minus = infidelity_sweep(1.9, WindingNumbers(0, 0, 0), -0.07, 31)
        assert np.max(np.abs(plus.data[:, 1] - minus.data[:, 1])) < 1e-12

    def test_same_existence_range_for_pi(self):
        # at theta = pi the interval is +-sqrt(3)/2 for every winding choice
        tables = [
            infidelity_sweep(PI, WindingNumbers(*w), 0.1, 11)
            for w in ((0, 0, 0), (1, 0, 0), (0, 1, 0))
        ]
        for table in tables[1:]:
            assert np.array_equal(table.data[:, 0], tables[0].data[:, 0])

    def test_branch_curves_reported_equal(self):
        plus = infidelity_sweep(PI, WindingNumbers(0, 0, 0), 0.1, 31, "+")
        minus = infidelity_sweep(PI, WindingNumbers(0, 0, 0), 0.1, 31, "-")
        diff = float(np.max(np.abs(plus.data[:, 1] - minus.data[:, 1])))
        # not asserted equal by contract; record the measured difference
        print(f"branch-to-branch gate sweep difference: {diff:.3e}")
        assert np.isfinite(diff)

    def test_zero_f_rejected(self):
        with pytest.raises(ValueError):
            infidelity_sweep(PI, WindingNumbers(0, 0, 0), 0.0, 11)

    def test_too_few_points_rejected(self):
        with pytest.raises(ValueError):
            infidelity_sweep(PI, WindingNumbers(0, 0, 0), 0.1, 2)


class TestStateInfidelitySweep:
    def test_bounded_by_gate_values(self):
        gate = infidelity_sweep(PI, WindingNumbers(0, 0, 0), 0.1, 51)
        state = state_infidelity_sweep(PI, WindingNumbers(0, 0, 0), 0.1, 51)
        assert np.all(state.data[:, 1] <= gate.data[:, 1] + 1e-12)
        assert state.data[0, 2] <= gate.data[0, 2] + 1e-12

    def test_zero_error_gives_zero_rows(self):
        table = state_infidelity_sweep(PI, WindingNumbers(0, 0, 0), 0.0, 21)
        assert np.all(table.data[:, 1] < 1e-15)
        assert np.all(table.data[:, 2] < 1e-15)

    def test_interior_minimum_exists_for_some_winding(self):
        interior = []
        for w in ((0, 0, 0), (1, 0, 0), (0, 1, 0)):
            table = state_infidelity_sweep(PI, WindingNumbers(*w), 0.1, 101)
            idx = int(np.argmin(table.data[:, 1]))
            interior.append(0 < idx < 100)
        assert any(interior)

    def test_custom_state(self):
        psi = np.array([1.0, 1.0]) / math.sqrt(2.0)
        table = state_infidelity_sweep(PI, WindingNumbers(0, 0, 0), 0.1, 11, psi=psi)
        assert np.all(table.data[:, 1] >= 0.0)


class TestTimeSweep:
    def test_monotonicity_and_ordering(self):
        grid = np.linspace(-0.99, 0.99, 50)
        even = time_sweep(0, grid)
        odd = time_sweep(1, grid)
        assert np.all(np.diff(even.data[:, 1]) >= 0.0)
        assert np.all(np.diff(odd.data[:, 1]) <= 0.0)
        assert np.all(even.data[:, 1] <= odd.data[:, 1])

    def test_rejects_grid_outside_open_interval(self):
        with pytest.raises(ValueError):
            time_sweep(0, np.array([-1.0, 0.0]))


class TestScalingExponent:
    def test_elementary_pulse_is_quadratic(self):
        fit = scaling_exponent(Pulse(PI, 0.0), 1e-3, 1e-2)
        assert fit.exponent == pytest.approx(2.0, abs=0.05)
        assert isinstance(fit, ScalingFit)
        assert fit.num_points == 12
        assert fit.residual < 1e-3

    def test_interior_sequence_is_quartic(self):
        seq = build_sequence(TargetRotation(PI), 0.3, WindingNumbers(0, 0, 0), "+")
        fit = scaling_exponent(seq, 1e-3, 1e-2)
        assert fit.exponent == pytest.approx(4.0, abs=0.1)

    def test_fundamental_corpse_steeper_locally(self):
        fit = scaling_exponent(fundamental_corpse(TargetRotation(PI)), 0.03, 0.1)
        assert fit.exponent >= 5.5

    def test_floor_guard(self):
        seq = build_sequence(TargetRotation(PI), 0.3, WindingNumbers(0, 0, 0), "+")
        with pytest.raises(FloorReachedError):
            scaling_exponent(seq, 1e-5, 1e-4)

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            scaling_exponent(Pulse(PI, 0.0), 0.0, 0.1)
        with pytest.raises(ValueError):
            scaling_exponent(Pulse(PI, 0.0), 0.1, 0.5)
        with pytest.raises(ValueError):
            scaling_exponent(Pulse(PI, 0.0), 1e-3, 1e-2, num_points=5)


class TestFirstOrderDerivativeNorm:
    def test_small_for_built_sequences(self):
        for theta in (0.9, PI, 4.4):
            seq = build_sequence(TargetRotation(theta), 0.1, WindingNumbers(0, 0, 0), "+")
            assert first_order_derivative_norm(seq) < 1e-8

    def test_single_pi_pulse_is_order_one(self):
        val = first_order_derivative_norm(Pulse(PI, 0.0))
        assert val == pytest.approx(1.0, abs=1e-4)

    def test_naive_triple_is_order_one(self):
        assert first_order_derivative_norm([Pulse(PI / 3.0, 0.0)] * 3) > 0.1
