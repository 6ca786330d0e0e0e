"""Observables extracted from site-probability distributions.

Covers the quantities the propagation experiments are judged by: cyclic
variance and participation ratio, exponential localization-length fits,
ballistic spike tracking for accelerator modes, and trapping-cell occupancy
for double-kick schedules.  All site arithmetic is cyclic (ring topology).
"""

from __future__ import annotations

import warnings as _warnings
from dataclasses import dataclass, field

import numpy as np

from .evolution import PropagationRecord

__all__ = [
    "DistributionReport",
    "LocalizationFit",
    "SpikeTrack",
    "cyclic_displacements",
    "distribution_stats",
    "fit_localization_length",
    "detect_accelerator_modes",
    "cell_occupancy",
]

PROBABILITY_TOL = 1e-6
LOG_FLOOR = 1e-300
# Below this r-squared a ln P fit is not considered exponential decay.
EXPONENTIAL_R2_MIN = 0.5


def cyclic_displacements(n_sites: int, s0: int) -> np.ndarray:
    """Minimal signed ring displacement of every site from ``s0``.

    Values lie in [-n_sites//2, (n_sites-1)//2]; for even chains the
    antipodal site is assigned -n_sites//2.
    """
    s = np.arange(n_sites)
    return (s - s0 + n_sites // 2) % n_sites - n_sites // 2


def _check_probability(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    total = p.sum()
    if abs(total - 1.0) > PROBABILITY_TOL:
        raise ValueError(f"probabilities sum to {total!r}, expected 1 within {PROBABILITY_TOL}")
    return p


def distribution_stats(p, s0: int) -> tuple[float, float]:
    """Cyclic variance about ``s0`` and participation ratio of a distribution."""
    p = _check_probability(p)
    d = cyclic_displacements(len(p), s0)
    variance = float(np.sum(d.astype(float) ** 2 * p))
    participation = float(1.0 / np.sum(p**2))
    return variance, participation


@dataclass(frozen=True)
class LocalizationFit:
    """Result of an exponential-profile fit ln P ~ -2|s - s0|/length."""

    length: float
    r_squared: float
    n_points: int

    @property
    def exponential(self) -> bool:
        """Whether the profile decays and the fit explains it."""
        return np.isfinite(self.length) and self.length > 0 and self.r_squared >= EXPONENTIAL_R2_MIN


def _wing_fit(d, lnp):
    slope, intercept = np.polyfit(d, lnp, 1)
    pred = slope * d + intercept
    ss_res = float(np.sum((lnp - pred) ** 2))
    ss_tot = float(np.sum((lnp - lnp.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 0.0
    return slope, r2


def fit_localization_length(p, s0: int, fit_window: tuple[float, float]) -> LocalizationFit:
    """Fit the decay length of an exponentially localized distribution.

    Regresses ln P against |s - s0| on each wing over displacements in
    ``fit_window``; the decay length is -2 / (mean wing slope).  Sites with
    probability at the floating-point floor are dropped; fewer than 10 usable
    points in total is an error.
    """
    p = np.asarray(p, dtype=float)
    n = len(p)
    d_min, d_max = fit_window
    if not 0 <= d_min < d_max or d_max >= n / 2:
        raise ValueError(f"fit window {fit_window} must satisfy 0 <= d_min < d_max < n/2")

    d = cyclic_displacements(n, s0)
    wings = []
    n_points = 0
    for sign in (+1, -1):
        mask = (sign * d >= d_min) & (sign * d <= d_max) & (p > LOG_FLOOR)
        if np.count_nonzero(mask) >= 2:
            wings.append(_wing_fit(np.abs(d[mask]).astype(float), np.log(p[mask])))
        n_points += int(np.count_nonzero(mask))
    if n_points < 10:
        raise ValueError(f"insufficient data: {n_points} usable sites in window, need >= 10")

    slope = float(np.mean([w[0] for w in wings]))
    r2 = float(np.mean([w[1] for w in wings]))
    length = -2.0 / slope if slope < 0 else np.inf
    return LocalizationFit(length=length, r_squared=r2, n_points=n_points)


@dataclass
class SpikeTrack:
    """Positions and masses of one side's outermost qualifying spike per period.

    ``displacements`` are signed cyclic offsets from the kick center;
    ``speed`` is the least-squares growth of |displacement| per period, or
    None with fewer than two detections.
    """

    side: str
    periods: list[int] = field(default_factory=list)
    sites: list[int] = field(default_factory=list)
    displacements: list[int] = field(default_factory=list)
    masses: list[float] = field(default_factory=list)
    speed: float | None = None

    def _fit_speed(self):
        if len(self.periods) >= 2:
            self.speed = float(
                np.polyfit(np.asarray(self.periods, float), np.abs(self.displacements), 1)[0]
            )


def _local_contrast(p, site, w):
    """Peak height relative to the median background in a surrounding ring."""
    n = len(p)
    ring = np.arange(site - 8 * w, site + 8 * w + 1) % n
    peak = np.arange(site - w, site + w + 1) % n
    background = np.median(p[np.setdiff1d(ring, peak)])
    return p[site] / background if background > 0 else np.inf


def _outermost_spike(p, d, side_mask, threshold, w, min_contrast):
    """Outermost qualifying local maximum among sites in ``side_mask``.

    Candidates must clear ``threshold`` and stand out from their local
    background by ``min_contrast``; the latter rejects the site-to-site
    intensity fluctuations of merely localized distributions, which reach
    only order-10x their surroundings while a coherent ballistic spike is
    orders of magnitude above its background.
    """
    is_max = (p > np.roll(p, 1)) & (p > np.roll(p, -1)) & (p >= threshold) & side_mask
    candidates = np.nonzero(is_max)[0]
    for site in sorted(candidates, key=lambda s: abs(d[s]), reverse=True):
        if _local_contrast(p, site, w) >= min_contrast:
            return int(site)
    return None


def detect_accelerator_modes(
    record: PropagationRecord,
    b_kick: float,
    center: int,
    mass_window: int = 10,
    threshold_factor: float = 5.0,
    min_contrast: float = 50.0,
) -> tuple[SpikeTrack, SpikeTrack]:
    """Track counter-propagating probability spikes across snapshots.

    For every snapshot, each side of the kick center is scanned for its
    outermost local maximum that (a) exceeds ``threshold_factor`` times the
    median probability of the central remnant band (sites within one
    ballistic hop 2*pi/b_kick of the center) and (b) stands ``min_contrast``
    above the median background around it.  Qualifying spikes are accumulated
    into a left and a right track with the per-spike mass summed over a
    +-``mass_window`` site window; no qualifying spike is not an error, it
    just leaves the track empty.
    """
    if b_kick <= 0:
        raise ValueError("b_kick must be > 0")
    if len(record.snapshots) < 3:
        raise ValueError("need at least 3 snapshots to track spikes")

    n = len(record.snapshots[0][1])
    d = cyclic_displacements(n, center)
    band_radius = int(min(max(2.0 * np.pi / b_kick, 5), n // 4))
    band = np.abs(d) <= band_radius

    left = SpikeTrack(side="left")
    right = SpikeTrack(side="right")
    for period, p in record.snapshots:
        threshold = threshold_factor * float(np.median(p[band]))
        for track, mask in ((left, d < 0), (right, d > 0)):
            site = _outermost_spike(p, d, mask, threshold, mass_window, min_contrast)
            if site is None:
                continue
            window = (np.arange(site - mass_window, site + mass_window + 1)) % n
            track.periods.append(period)
            track.sites.append(site)
            track.displacements.append(int(d[site]))
            track.masses.append(float(p[window].sum()))
    left._fit_speed()
    right._fit_speed()
    return left, right


def cell_occupancy(p, b_weak: float, center: int) -> float:
    """Probability inside the central trapping cell |s - center| < pi/b_weak.

    The cell is bounded by the first trapping lines where the weak-kick phase
    gradient reaches +-pi.  A cell wider than the chain returns 1 with a
    warning.
    """
    if b_weak <= 0:
        raise ValueError("b_weak must be > 0")
    p = np.asarray(p, dtype=float)
    n = len(p)
    half_width = np.pi / b_weak
    if half_width > n // 2:
        _warnings.warn(
            f"trapping cell half-width {half_width:.1f} exceeds half the chain ({n // 2}); "
            "occupancy saturates at 1",
            stacklevel=2,
        )
        return 1.0
    d = cyclic_displacements(n, center)
    return float(p[np.abs(d) < half_width].sum())


@dataclass
class DistributionReport:
    """Bundle of distribution observables for one propagation run."""

    s0: int
    variance: float
    participation_ratio: float
    loc_length: float | None = None
    loc_fit_r2: float | None = None
    spikes: list[dict] = field(default_factory=list)
    spike_speeds: dict = field(default_factory=dict)
    cell_occupancy: float | None = None
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "s0": self.s0,
            "variance": self.variance,
            "participation_ratio": self.participation_ratio,
            "loc_length": self.loc_length,
            "loc_fit_r2": self.loc_fit_r2,
            "spikes": self.spikes,
            "spike_speeds": self.spike_speeds,
            "cell_occupancy": self.cell_occupancy,
            "warnings": self.warnings,
        }
