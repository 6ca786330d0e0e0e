"""Kicked Heisenberg rings, their rotor images, and the classical maps behind them."""

from .chain import (
    ChainConfig,
    ChainModel,
    RotorImageParams,
    delta_state,
    dispersion,
    magnon_state,
    rotor_image,
    wavenumber_grid,
)
from .diagnostics import (
    DistributionReport,
    LocalizationFit,
    SpikeTrack,
    cell_occupancy,
    cyclic_displacements,
    detect_accelerator_modes,
    distribution_stats,
    fit_localization_length,
)
from .evolution import (
    DoubleKick,
    KickSchedule,
    PropagationRecord,
    RandomDoubleKick,
    SingleKick,
    apply_exchange,
    apply_parabolic_kick,
    apply_random_kick,
    build_floquet,
    evolve,
    qkr_evolve,
)
from .feasibility import FeasibilityReport, feasibility
from .maps import (
    DoubleKickMap,
    DoubleWellMap,
    EnsembleStats,
    FixedPoint,
    MapSpec,
    RandomRescaledDoubleKickMap,
    RescaledDoubleKickMap,
    StandardMap,
    fixed_point_stability,
    iterate_ensemble,
    map_step,
    surface_of_section,
)

__version__ = "0.1.0"

__all__ = [
    "ChainConfig",
    "ChainModel",
    "RotorImageParams",
    "delta_state",
    "dispersion",
    "magnon_state",
    "rotor_image",
    "wavenumber_grid",
    "DoubleKick",
    "KickSchedule",
    "PropagationRecord",
    "RandomDoubleKick",
    "SingleKick",
    "apply_exchange",
    "apply_parabolic_kick",
    "apply_random_kick",
    "build_floquet",
    "evolve",
    "qkr_evolve",
    "DistributionReport",
    "LocalizationFit",
    "SpikeTrack",
    "cell_occupancy",
    "cyclic_displacements",
    "detect_accelerator_modes",
    "distribution_stats",
    "fit_localization_length",
    "DoubleKickMap",
    "DoubleWellMap",
    "EnsembleStats",
    "FixedPoint",
    "MapSpec",
    "RandomRescaledDoubleKickMap",
    "RescaledDoubleKickMap",
    "StandardMap",
    "fixed_point_stability",
    "iterate_ensemble",
    "map_step",
    "surface_of_section",
    "FeasibilityReport",
    "feasibility",
    "__version__",
]
