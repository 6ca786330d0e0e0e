"""Distribution-observable tests with synthetic and propagated data."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kickedchain import (
    ChainConfig,
    PropagationRecord,
    SingleKick,
    cell_occupancy,
    cyclic_displacements,
    delta_state,
    detect_accelerator_modes,
    distribution_stats,
    evolve,
    fit_localization_length,
)


def two_sided_exponential(n, s0, length):
    d = np.abs(cyclic_displacements(n, s0))
    p = np.exp(-2.0 * d / length)
    return p / p.sum()


class TestDistributionStats:
    def test_delta(self):
        p = np.zeros(64)
        p[17] = 1.0
        assert distribution_stats(p, 17) == (0.0, pytest.approx(1.0))

    def test_uniform_participation(self):
        p = np.full(100, 0.01)
        _, pr = distribution_stats(p, 0)
        assert pr == pytest.approx(100.0)

    def test_exponential_profile_variance(self):
        # second moment of the two-sided exponential is length**2 / 2
        p = two_sided_exponential(4096, 2048, 50.0)
        var, _ = distribution_stats(p, 2048)
        assert var == pytest.approx(50.0**2 / 2, rel=0.05)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            distribution_stats(np.full(10, 0.2), 0)

    @given(shift=st.integers(min_value=0, max_value=255))
    @settings(max_examples=30, deadline=None)
    def test_invariant_under_cyclic_relabeling(self, shift):
        rng = np.random.default_rng(3)
        p = rng.random(256)
        p /= p.sum()
        base = distribution_stats(p, 40)
        moved = distribution_stats(np.roll(p, shift), (40 + shift) % 256)
        assert moved[0] == pytest.approx(base[0], rel=1e-9)
        assert moved[1] == pytest.approx(base[1], rel=1e-9)


class TestLocalizationFit:
    def test_recovers_own_model(self):
        p = two_sided_exponential(4096, 2048, 100.0)
        fit = fit_localization_length(p, 2048, (50.0, 300.0))
        assert fit.length == pytest.approx(100.0, rel=0.01)
        assert fit.exponential

    @pytest.mark.parametrize("length", [10.0, 30.0, 100.0, 300.0, 1000.0])
    def test_self_consistency_sweep(self, length):
        n = 8192
        p = two_sided_exponential(n, n // 2, length)
        window = (length / 2, min(3 * length, n / 2 - 1))
        fit = fit_localization_length(p, n // 2, window)
        assert fit.length == pytest.approx(length, rel=0.01)

    def test_uniform_flagged_non_exponential(self):
        p = np.full(1024, 1.0 / 1024)
        fit = fit_localization_length(p, 512, (10.0, 200.0))
        assert fit.r_squared == pytest.approx(0.0, abs=1e-6)
        assert not fit.exponential

    def test_insufficient_data(self):
        p = np.zeros(256)
        p[128] = 1.0
        with pytest.raises(ValueError, match="insufficient"):
            fit_localization_length(p, 128, (10.0, 20.0))

    def test_rejects_bad_window(self):
        p = two_sided_exponential(256, 128, 20.0)
        with pytest.raises(ValueError):
            fit_localization_length(p, 128, (50.0, 400.0))


def synthetic_spike_record(n=2048, center=1024, speed=94, n_periods=6, spike_mass=0.1):
    """Broad soft-edged remnant plus counter-propagating Gaussian spikes.

    Mimics the geometry of a strongly kicked run: a chaotic remnant a couple
    of ballistic hops wide, and narrow coherent spikes separating from it at
    one hop per period.
    """
    sites = np.arange(n)
    d = cyclic_displacements(n, center)
    remnant = 1.0 / (1.0 + np.exp((np.abs(d) - 200.0) / 30.0))
    snapshots = []
    for t in range(n_periods + 1):
        p = remnant / remnant.sum() * (1 - 2 * spike_mass * min(t, 1))
        if t >= 1:
            for sign in (+1, -1):
                loc = center + sign * speed * t
                bump = np.exp(-0.5 * ((sites - loc) / 1.5) ** 2)
                p = p + spike_mass * bump / bump.sum()
        p /= p.sum()
        snapshots.append((t, p))
    return PropagationRecord(snapshots=snapshots, final_state=np.sqrt(snapshots[-1][1]))


class TestAcceleratorDetector:
    def test_synthetic_tracks(self):
        record = synthetic_spike_record()
        left, right = detect_accelerator_modes(record, b_kick=2 * np.pi / 94, center=1024)
        assert right.periods[-4:] == [3, 4, 5, 6]
        assert left.periods[-4:] == [3, 4, 5, 6]
        assert right.speed == pytest.approx(94.0, abs=1.0)
        assert left.speed == pytest.approx(94.0, abs=1.0)
        for mass in right.masses:
            # window mass = spike mass plus a little remnant background
            assert 0.07 <= mass <= 0.16
        for disp_l, disp_r in zip(left.displacements, right.displacements):
            assert disp_l < 0 < disp_r

    def test_mirrored_run_gives_mirrored_tracks(self):
        record = synthetic_spike_record()
        center = 1024
        mirrored = PropagationRecord(
            snapshots=[
                (t, np.roll(p[::-1], 2 * center + 1)) for t, p in record.snapshots
            ],
            final_state=record.final_state,
        )
        l1, r1 = detect_accelerator_modes(record, b_kick=2 * np.pi / 94, center=center)
        l2, r2 = detect_accelerator_modes(mirrored, b_kick=2 * np.pi / 94, center=center)
        assert r2.displacements == [-d for d in l1.displacements]
        assert l2.displacements == [-d for d in r1.displacements]
        np.testing.assert_allclose(r2.masses, l1.masses, atol=1e-12)
        np.testing.assert_allclose(l2.masses, r1.masses, atol=1e-12)

    def test_localized_run_yields_empty_tracks(self):
        # stochasticity 5 sits below the first transporting-island window
        # (no solution of K sin x = 2*pi), so nothing ballistic exists
        cfg = ChainConfig(n_sites=1024, j1=1.0)
        record = evolve(delta_state(1024, 512), cfg, SingleKick(0.25, 20.0), 60, 10)
        left, right = detect_accelerator_modes(record, 0.25, 512)
        assert left.periods == [] and right.periods == []
        assert left.speed is None and right.speed is None

    def test_requires_three_snapshots(self):
        record = synthetic_spike_record(n_periods=1)
        with pytest.raises(ValueError):
            detect_accelerator_modes(record, b_kick=0.3, center=512)


class TestCellOccupancy:
    def test_delta_at_center(self):
        p = np.zeros(512)
        p[256] = 1.0
        assert cell_occupancy(p, 0.025, 256) == 1.0

    def test_uniform_over_exact_cell(self):
        n, center, b = 2048, 1024, 0.025
        half = np.pi / b
        d = cyclic_displacements(n, center)
        p = np.where(np.abs(d) < half, 1.0, 0.0)
        p /= p.sum()
        assert cell_occupancy(p, b, center) == pytest.approx(1.0)

    def test_wide_cell_warns_and_saturates(self):
        p = np.full(64, 1 / 64)
        with pytest.warns(UserWarning, match="cell"):
            assert cell_occupancy(p, 0.01, 32) == 1.0

    def test_rejects_nonpositive_strength(self):
        with pytest.raises(ValueError):
            cell_occupancy(np.full(64, 1 / 64), 0.0, 32)
