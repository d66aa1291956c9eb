"""Unit tests for the bandwidth search."""

import math

import numpy as np
import pytest

from fingerreq.models.options import SweepOptions
from fingerreq.models.torque import BandwidthResult, BandwidthSweep
from fingerreq.services.bandwidth import (
    bandwidth_from_rise_time,
    bandwidth_sweep,
    bandwidth_to_csv,
    hz_to_rad,
    min_bandwidth,
    pass_fraction,
    rad_to_hz,
    rise_time,
    simulate_first_order,
    sweep_to_csv,
    tolerance_band,
)
from fingerreq.utils.error_handlers import DomainError
from tests.fixtures.data_fixtures import torque_signal


def sine(frequency_hz, duration=10.0, rate=200.0, amplitude=0.5):
    t = np.arange(int(duration * rate) + 1) / rate
    return torque_signal(amplitude * np.sin(2 * math.pi * frequency_hz * t), rate=rate)


@pytest.mark.unit
class TestFirstOrderResponse:
    """Test the discretized first-order plant."""

    def test_step_matches_closed_form(self):
        """Test y[k] = G (1 - exp(-B k dt)) for a unit step."""
        reference = torque_signal(np.ones(200), rate=100.0)
        bandwidth = hz_to_rad(2.0)

        response = simulate_first_order(reference, bandwidth)

        gain = math.sqrt(bandwidth**2 + 1.0) / bandwidth
        k = np.arange(200)
        expected = gain * (1.0 - np.exp(-bandwidth * k * reference.dt))
        np.testing.assert_allclose(response, expected, rtol=0, atol=1e-9)

    def test_starts_from_rest(self):
        """Test that the first output sample is zero."""
        response = simulate_first_order(torque_signal([3.0, 3.0, 3.0]), 10.0)

        assert response[0] == 0.0

    @pytest.mark.parametrize("bandwidth", [0.0, -1.0, float("nan")])
    def test_non_positive_bandwidth(self, bandwidth):
        """Test that invalid bandwidths raise DomainError."""
        with pytest.raises(DomainError):
            simulate_first_order(torque_signal([1.0, 1.0]), bandwidth)

    def test_unit_conversion(self):
        """Test Hz and rad/s conversions."""
        assert hz_to_rad(1.0) == pytest.approx(2 * math.pi)
        assert rad_to_hz(hz_to_rad(3.7)) == pytest.approx(3.7)


@pytest.mark.unit
class TestMinBandwidth:
    """Test the smallest passing grid bandwidth."""

    def test_constant_signal(self):
        """Test that a held torque needs 0.6 Hz on the default grid."""
        reference = torque_signal(np.full(10001, 0.8), rate=100.0)

        result = min_bandwidth(reference)

        assert result.passed
        assert result.bandwidth == pytest.approx(0.6)
        assert result.pass_fraction >= 0.98
        assert result.tolerance_band == pytest.approx(0.04)

    def test_zero_signal(self):
        """Test that a zero trajectory passes at the first grid point."""
        result = min_bandwidth(torque_signal(np.zeros(50)))

        assert result.passed
        assert result.bandwidth == pytest.approx(0.2)
        assert result.pass_fraction == 1.0

    def test_faster_signal_needs_more_bandwidth(self):
        """Test that doubling the sine frequency raises the requirement."""
        slow = min_bandwidth(sine(0.5))
        fast = min_bandwidth(sine(1.0))

        assert slow.passed and fast.passed
        assert fast.bandwidth > slow.bandwidth

    def test_result_is_smallest_passing_point(self):
        """Test that the grid point below the result fails the criterion."""
        reference = sine(1.0)
        options = SweepOptions()

        result = min_bandwidth(reference, options)
        band = tolerance_band(reference, options.band_fraction)
        previous = hz_to_rad(result.bandwidth - options.step_hz)
        below = pass_fraction(reference, previous, band)

        assert below < options.pass_fraction

    def test_no_passing_bandwidth(self):
        """Test that an exact-tracking criterion reports the best fraction."""
        reference = torque_signal(np.ones(101))

        result = min_bandwidth(reference, band_fraction=0.0)

        assert not result.passed
        assert result.bandwidth is None
        assert math.isnan(result.bandwidth_or_nan)
        assert 0.0 <= result.pass_fraction < 0.98

    def test_overrides_replace_sweep_values(self):
        """Test that a looser band lowers the requirement."""
        reference = sine(1.0)

        strict = min_bandwidth(reference)
        loose = min_bandwidth(reference, band_fraction=0.2, pass_fraction=0.9)

        assert loose.bandwidth < strict.bandwidth

    def test_sweep_covers_grid(self):
        """Test the per-point fractions of a coarse sweep."""
        options = SweepOptions(start_hz=0.2, stop_hz=2.0, step_hz=0.2)

        sweep = bandwidth_sweep(torque_signal(np.full(3001, 0.8)), options)

        assert sweep.grid.size == 10
        assert sweep.pass_fractions.shape == (10,)
        assert sweep.pass_fractions[0] < 0.98
        assert sweep.pass_fractions[-1] >= 0.98

    @pytest.mark.parametrize("frequency_hz", [0.5, 1.0, 2.0])
    def test_tighter_band_never_lowers_requirement(self, frequency_hz):
        """Test that shrinking the tolerance band keeps the result non-decreasing."""
        reference = sine(frequency_hz)

        results = [
            min_bandwidth(reference, band_fraction=fraction)
            for fraction in (0.2, 0.1, 0.05)
        ]

        assert all(result.passed for result in results)
        bandwidths = [result.bandwidth for result in results]
        assert bandwidths == sorted(bandwidths)

    @pytest.mark.parametrize("frequency_hz", [0.5, 1.0])
    def test_finer_grid_within_one_coarse_step(self, frequency_hz):
        """Test that a ten times finer grid moves the result by under one step."""
        reference = sine(frequency_hz)
        coarse = SweepOptions(start_hz=0.2, stop_hz=20.0, step_hz=0.2)
        fine = SweepOptions(start_hz=0.2, stop_hz=20.0, step_hz=0.02)

        coarse_result = min_bandwidth(reference, coarse)
        fine_result = min_bandwidth(reference, fine)

        assert coarse_result.passed and fine_result.passed
        assert fine_result.bandwidth <= coarse_result.bandwidth + 1e-9
        assert coarse_result.bandwidth - fine_result.bandwidth < coarse.step_hz + 1e-9


@pytest.mark.unit
class TestRiseTime:
    """Test rise-time measurement and its bandwidth estimate."""

    def test_first_order_step(self):
        """Test the ln(9)/B rise time of an ideal first-order step."""
        bandwidth = hz_to_rad(5.0)
        t = np.arange(20001) / 10000.0
        response = 1.0 - np.exp(-bandwidth * t)

        measured = rise_time(response, sample_rate=10000.0)

        assert measured == pytest.approx(math.log(9.0) / bandwidth, rel=1e-3)
        assert bandwidth_from_rise_time(measured) == pytest.approx(5.0, rel=1e-2)

    def test_trajectory_input(self):
        """Test that trajectories carry their own sample rate."""
        values = np.clip(np.arange(11) / 10.0, 0.0, 1.0)

        assert rise_time(torque_signal(values, rate=10.0)) == pytest.approx(0.8)

    def test_array_needs_sample_rate(self):
        """Test that a plain array without a rate is rejected."""
        with pytest.raises(DomainError):
            rise_time(np.linspace(0.0, 1.0, 10))

    def test_zero_target(self):
        """Test that a zero final value is rejected."""
        with pytest.raises(DomainError):
            rise_time(np.zeros(10), sample_rate=100.0)

    def test_rule_of_thumb(self):
        """Test 0.35 / t_r."""
        assert bandwidth_from_rise_time(0.035) == pytest.approx(10.0)
        with pytest.raises(DomainError):
            bandwidth_from_rise_time(0.0)

    def test_results_are_plain_floats(self):
        """Test that numpy scalars come back as built-in floats."""
        response = np.clip(np.arange(11) / 10.0, 0.0, 1.0)

        measured = rise_time(response, sample_rate=np.float64(10.0))
        estimate = bandwidth_from_rise_time(np.float64(0.035))

        assert type(measured) is float
        assert type(estimate) is float
        assert measured == pytest.approx(0.8)
        assert estimate == pytest.approx(10.0)

@pytest.mark.unit
class TestBandwidthCsv:
    """Test bandwidth table writers."""

    def test_rows_and_seed(self):
        """Test that failed searches leave the bandwidth cell empty."""
        rows = [
            (0, "PIP", BandwidthResult(1.2, 0.99, 0.01, True)),
            (2, "MCP-Z", BandwidthResult(None, 0.5, 0.02, False)),
        ]

        text = bandwidth_to_csv(rows, seed=3)
        lines = text.splitlines()

        assert lines[0] == "# seed=3"
        assert lines[1] == (
            "finger,joint,bandwidth_Hz,pass_fraction,tolerance_band_Nm,passed"
        )
        assert lines[2] == "0,PIP,1.2,0.99,0.01,true"
        assert lines[3] == "2,MCP-Z,,0.5,0.02,false"

    def test_sweep_table(self):
        """Test the sweep CSV layout."""
        options = SweepOptions(start_hz=1.0, stop_hz=2.0, step_hz=1.0)
        sweep = bandwidth_sweep(torque_signal(np.zeros(20)), options)

        lines = sweep_to_csv(sweep).splitlines()

        assert lines[0] == "# tolerance_band_Nm=0.0"
        assert lines[1] == "bandwidth_Hz,pass_fraction"
        assert len(lines) == 4

    def test_numpy_scalars_print_as_numbers(self):
        """Test that numpy scalar fields are written without their type name."""
        result = BandwidthResult(np.float64(1.2), np.float64(0.99), np.float64(0.01))
        sweep = BandwidthSweep(
            np.array([1.0, 2.0]), np.array([0.5, 1.0]), np.float64(0.25)
        )

        rows = bandwidth_to_csv([(0, "PIP", result)]).splitlines()
        table = sweep_to_csv(sweep)

        assert rows[1] == "0,PIP,1.2,0.99,0.01,true"
        assert "np." not in table
        assert table.splitlines()[0] == "# tolerance_band_Nm=0.25"
        assert table.splitlines()[2] == "1.0,0.5"
