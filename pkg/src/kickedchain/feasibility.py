"""Back-of-envelope feasibility of pulsed parabolic fields on real chains.

Given the peak field reached across the chain, the chain length, and the
exchange rate, this estimates the parabolic curvature per site, converts
fields between atomic units and Tesla, and brackets admissible pulse
durations: long enough for the kick action N^2 * b * dt to dominate, short
enough that the instantaneous-kick (split-step) picture holds.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["FeasibilityReport", "feasibility", "AU_TIME_SECONDS", "FIELD_TESLA_PER_AU"]

# Atomic unit of time in seconds.
AU_TIME_SECONDS = 2.418884326585747e-17

# Conversion used for the magnetic field, chosen so that 1e-6 au = 0.47 T
# (about 2x the conventional atomic unit of field; kept as a config constant).
FIELD_TESLA_PER_AU = 0.47 / 1e-6

# Pulse-duration rules, in terms of the kick action A = N^2 * b_kick * dt and
# the exchange-per-pulse product j * dt:
#   hard floor      A >= KICK_ACTION_MIN       (kick must dominate)
#   comfortable     A in [100, 1000]           (strongly kicked regime)
#   hard ceiling    2 * j * dt <= SPLIT_STEP_MAX (kicks ~ instantaneous)
KICK_ACTION_MIN = 10.0
KICK_ACTION_STRONG = (100.0, 1000.0)
SPLIT_STEP_MAX = 0.1


@dataclass(frozen=True)
class FeasibilityReport:
    """Derived field/pulse scales and validity flags.

    Durations are in atomic units of time.  ``feasible`` requires a nonempty
    overlap between the kick-action floor and the split-step ceiling;
    ``strong_kick_window_au`` is the duration range giving kick action in the
    comfortably strong 100-1000 band, reported regardless of feasibility.
    """

    b_range_au: float
    n_sites: int
    j_hz: float
    b_kick_au: float
    b_range_tesla: float
    pulse_min_au: float
    pulse_max_au: float
    strong_kick_window_au: tuple[float, float]
    exchange_action: float
    exchange_action_ok: bool
    feasible: bool

    def to_dict(self) -> dict:
        return {
            "b_range_au": self.b_range_au,
            "n_sites": self.n_sites,
            "j_hz": self.j_hz,
            "b_kick_au": self.b_kick_au,
            "b_range_tesla": self.b_range_tesla,
            "pulse_min_au": self.pulse_min_au,
            "pulse_max_au": self.pulse_max_au,
            "strong_kick_window_au": list(self.strong_kick_window_au),
            "exchange_action": self.exchange_action,
            "exchange_action_ok": self.exchange_action_ok,
            "feasible": self.feasible,
        }


def feasibility(
    b_range_au: float,
    n_sites: int,
    j_hz: float,
    t0_seconds: float = 1e-6,
) -> FeasibilityReport:
    """Estimate pulse-duration bounds for a parabolic field of given range.

    ``b_range_au`` is the field at the chain edge relative to the center (in
    atomic units), so the curvature per site is b = 2*b_range/N^2.  ``j_hz``
    is the exchange rate treated as a plain inverse time.  ``t0_seconds`` is
    the pulse repetition period used for the many-oscillations check
    2*j*T0 >> 1.  An empty duration window is reported as infeasible, not an
    error.
    """
    if b_range_au < 0:
        raise ValueError("b_range_au must be >= 0")
    if n_sites <= 0:
        raise ValueError("n_sites must be > 0")
    if j_hz <= 0:
        raise ValueError("j_hz must be > 0")
    if t0_seconds <= 0:
        raise ValueError("t0_seconds must be > 0")

    b_kick = 2.0 * b_range_au / n_sites**2
    j_au = j_hz * AU_TIME_SECONDS

    if b_kick > 0:
        action_scale = 1.0 / (n_sites**2 * b_kick)
        pulse_min = KICK_ACTION_MIN * action_scale
        strong = (KICK_ACTION_STRONG[0] * action_scale, KICK_ACTION_STRONG[1] * action_scale)
    else:
        pulse_min = float("inf")
        strong = (float("inf"), float("inf"))
    pulse_max = SPLIT_STEP_MAX / (2.0 * j_au)

    exchange_action = 2.0 * j_hz * t0_seconds
    return FeasibilityReport(
        b_range_au=b_range_au,
        n_sites=n_sites,
        j_hz=j_hz,
        b_kick_au=b_kick,
        b_range_tesla=b_range_au * FIELD_TESLA_PER_AU,
        pulse_min_au=pulse_min,
        pulse_max_au=pulse_max,
        strong_kick_window_au=strong,
        exchange_action=exchange_action,
        exchange_action_ok=exchange_action >= 10.0,
        feasible=pulse_min <= pulse_max,
    )
