"""Classical kicked maps: standard, double-kick, rescaled, random, double-well.

All variants share the kick-then-drift structure of area-preserving kicked
maps.  Angles are kept unwrapped internally (transport diagnostics need the
winding); wrap with ``np.mod(x, 2*np.pi)`` for section plots, which
``surface_of_section`` does for you.

The random rescaled variant models the long-drift limit of the double-kicked
map: the angle entering each kick pair is replaced by a fresh uniform draw,
which removes correlations between pairs while keeping the intra-pair
correlation that controls momentum trapping.  The trailing drift is omitted
because the next pair redraws the angle anyway; consequently there is no
drift-length parameter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "StandardMap",
    "DoubleKickMap",
    "RescaledDoubleKickMap",
    "RandomRescaledDoubleKickMap",
    "DoubleWellMap",
    "MapSpec",
    "EnsembleStats",
    "FixedPoint",
    "map_step",
    "iterate_ensemble",
    "surface_of_section",
    "fixed_point_stability",
    "MAX_ENSEMBLE",
]

MAX_ENSEMBLE = 10**6

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class StandardMap:
    """p' = p - k*sin(x); x' = x + p'."""

    k: float


@dataclass(frozen=True)
class DoubleKickMap:
    """Kick pairs separated by a short drift eps inside the pair, tau between pairs.

    One step is the full pair: kick, drift eps, kick, drift tau.
    """

    k: float
    eps: float
    tau: float

    def __post_init__(self):
        if self.eps <= 0 or self.tau <= 0:
            raise ValueError("eps and tau must be > 0")


@dataclass(frozen=True)
class RescaledDoubleKickMap:
    """Double-kick pair in rescaled variables where cells have width 2*pi.

    Momentum and kick strength are rescaled by the intra-pair drift, leaving
    k_eps and the drift ratio tau_eps (intended regime tau_eps >> 1).
    """

    k_eps: float
    tau_eps: float

    def __post_init__(self):
        if self.tau_eps <= 0:
            raise ValueError("tau_eps must be > 0")


@dataclass(frozen=True)
class RandomRescaledDoubleKickMap:
    """Rescaled double-kick pair whose entry angle is redrawn uniformly each pair."""

    k_eps: float


@dataclass(frozen=True)
class DoubleWellMap:
    """Kicked map with a two-harmonic potential -k1*cos(x) - k2*cos(2x).

    p' = p - k1*sin(x) - 2*k2*sin(2x); x' = x + p'.  The factor 2 on k2 is
    the derivative of cos(2x).
    """

    k1: float
    k2: float


MapSpec = (
    StandardMap
    | DoubleKickMap
    | RescaledDoubleKickMap
    | RandomRescaledDoubleKickMap
    | DoubleWellMap
)


def _step(x, p, spec: MapSpec, draws=None):
    """One full map period on scalars or aligned arrays."""
    if isinstance(spec, StandardMap):
        p = p - spec.k * np.sin(x)
        x = x + p
    elif isinstance(spec, DoubleKickMap):
        p = p - spec.k * np.sin(x)
        x = x + p * spec.eps
        p = p - spec.k * np.sin(x)
        x = x + p * spec.tau
    elif isinstance(spec, RescaledDoubleKickMap):
        p = p - spec.k_eps * np.sin(x)
        x = x + p
        p = p - spec.k_eps * np.sin(x)
        x = x + p * spec.tau_eps
    elif isinstance(spec, RandomRescaledDoubleKickMap):
        if draws is None:
            raise ValueError("random map variant requires an rng")
        x = draws
        p = p - spec.k_eps * np.sin(x)
        x = x + p
        p = p - spec.k_eps * np.sin(x)
    elif isinstance(spec, DoubleWellMap):
        p = p - spec.k1 * np.sin(x) - 2.0 * spec.k2 * np.sin(2.0 * x)
        x = x + p
    else:
        raise TypeError(f"unknown map spec {type(spec).__name__}")
    return x, p


def map_step(x: float, p: float, spec: MapSpec, rng: np.random.Generator | None = None):
    """Advance a single phase point by one full period of the map."""
    draws = None
    if isinstance(spec, RandomRescaledDoubleKickMap):
        if rng is None:
            raise ValueError("random map variant requires an rng")
        draws = rng.uniform(0.0, TWO_PI)
    return _step(x, p, spec, draws)


def _trajectory_rngs(seed, n_traj):
    """Independent per-trajectory generators spawned from one master seed."""
    seq = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return [np.random.default_rng(child) for child in seq.spawn(n_traj)]


def _draw_block(rngs, n_steps):
    """(n_steps, n_traj) uniform angle draws, one column per trajectory stream."""
    return np.column_stack([rng.uniform(0.0, TWO_PI, size=n_steps) for rng in rngs])


@dataclass
class EnsembleStats:
    """Ensemble momentum statistics recorded along an iteration.

    ``momenta`` has shape (n_records, n_trajectories) and holds unwrapped
    momenta; ``mean_p`` and ``var_p`` are the per-record ensemble mean and
    variance.
    """

    steps: np.ndarray
    mean_p: np.ndarray
    var_p: np.ndarray
    momenta: np.ndarray


def iterate_ensemble(
    x0,
    p0,
    spec: MapSpec,
    n_steps: int,
    record_every: int = 1,
    seed: int | None = None,
    chunk: int = 4096,
) -> EnsembleStats:
    """Iterate an ensemble of initial conditions, recording momentum statistics.

    Records step 0 and the final step regardless of ``record_every``.  For the
    random map variant each trajectory consumes its own stream derived from
    ``seed``, so results are reproducible and independent of how trajectories
    might be batched.
    """
    x = np.array(x0, dtype=float).ravel()
    p = np.array(p0, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("ensemble must contain at least one trajectory")
    if x.shape != p.shape:
        raise ValueError("x0 and p0 must have the same length")
    if x.size > MAX_ENSEMBLE:
        raise ValueError(f"ensemble size {x.size} exceeds cap {MAX_ENSEMBLE}")
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    if record_every < 1:
        raise ValueError("record_every must be >= 1")

    random_variant = isinstance(spec, RandomRescaledDoubleKickMap)
    rngs = None
    if random_variant:
        if seed is None:
            raise ValueError("random map variant requires a seed")
        rngs = _trajectory_rngs(seed, x.size)

    steps = [0]
    records = [p.copy()]
    done = 0
    while done < n_steps:
        block = min(chunk, n_steps - done)
        draws = _draw_block(rngs, block) if random_variant else None
        for i in range(block):
            x, p = _step(x, p, spec, draws[i] if random_variant else None)
            t = done + i + 1
            if t % record_every == 0 or t == n_steps:
                steps.append(t)
                records.append(p.copy())
        done += block

    momenta = np.vstack(records)
    return EnsembleStats(
        steps=np.array(steps),
        mean_p=momenta.mean(axis=1),
        var_p=momenta.var(axis=1),
        momenta=momenta,
    )


def surface_of_section(
    x0,
    p0,
    spec: MapSpec,
    n_steps: int,
    seed: int | None = None,
) -> np.ndarray:
    """Stroboscopic section points, one per full map period.

    Returns an array of shape (n_trajectories, n_steps, 2) whose last axis is
    (x mod 2*pi, p) recorded after each step.
    """
    x = np.array(x0, dtype=float).ravel()
    p = np.array(p0, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("ensemble must contain at least one trajectory")
    if x.shape != p.shape:
        raise ValueError("x0 and p0 must have the same length")
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")

    random_variant = isinstance(spec, RandomRescaledDoubleKickMap)
    rngs = None
    if random_variant:
        if seed is None:
            raise ValueError("random map variant requires a seed")
        rngs = _trajectory_rngs(seed, x.size)
        draws = _draw_block(rngs, n_steps)

    out = np.empty((x.size, n_steps, 2))
    for t in range(n_steps):
        x, p = _step(x, p, spec, draws[t] if random_variant else None)
        out[:, t, 0] = np.mod(x, TWO_PI)
        out[:, t, 1] = p
    return out


@dataclass(frozen=True)
class FixedPoint:
    """Period-1 fixed point on the p = 0 line with its tangent-map trace.

    The trace of the linearized one-step map is 2 - V''(x*); the point is
    stable for |trace| < 2, marginal when V''(x*) vanishes.
    """

    x: float
    p: float
    trace: float
    stability: str  # "stable" | "unstable" | "marginal"


def _potential_derivatives(spec: MapSpec):
    if isinstance(spec, StandardMap):
        if spec.k == 0:
            raise ValueError("k = 0 has no isolated fixed points")
        return (lambda x: spec.k * np.sin(x), lambda x: spec.k * np.cos(x))
    if isinstance(spec, DoubleWellMap):
        if spec.k1 == 0 and spec.k2 == 0:
            raise ValueError("k1 = k2 = 0 has no isolated fixed points")
        return (
            lambda x: spec.k1 * np.sin(x) + 2.0 * spec.k2 * np.sin(2.0 * x),
            lambda x: spec.k1 * np.cos(x) + 4.0 * spec.k2 * np.cos(2.0 * x),
        )
    raise ValueError(
        f"fixed-point analysis applies to single-drift kicked maps, not {type(spec).__name__}"
    )


def fixed_point_stability(
    spec: MapSpec,
    n_scan: int = 4096,
    xtol: float = 1e-12,
    marginal_tol: float = 1e-9,
) -> list[FixedPoint]:
    """All period-1 fixed points of a single-drift kicked map on p = 0.

    Roots of the kick force V'(x) on [0, 2*pi) are located by a uniform
    bracketing scan refined with Brent's method, then classified by the
    tangent-map trace 2 - V''(x*).
    """
    vp, vpp = _potential_derivatives(spec)
    xs = np.linspace(0.0, TWO_PI, n_scan + 1)
    fs = vp(xs)

    roots = []
    for i in range(n_scan):
        if fs[i] == 0.0:
            roots.append(xs[i])
        elif fs[i] * fs[i + 1] < 0.0:
            roots.append(brentq(vp, xs[i], xs[i + 1], xtol=xtol))

    points = []
    seen = []
    for x in roots:
        x = float(np.mod(x, TWO_PI))
        if any(abs(x - y) < 1e-8 or abs(abs(x - y) - TWO_PI) < 1e-8 for y in seen):
            continue
        seen.append(x)
        curvature = float(vpp(x))
        if abs(curvature) < marginal_tol:
            stability = "marginal"
        elif 0.0 < curvature < 4.0:
            stability = "stable"
        else:
            stability = "unstable"
        points.append(FixedPoint(x=x, p=0.0, trace=2.0 - curvature, stability=stability))
    return sorted(points, key=lambda fp: fp.x)
