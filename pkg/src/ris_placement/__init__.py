"""Near-field MIMO link simulation and capacity optimization for a
transmissive reconfigurable panel placed between two antenna arrays.

The package builds exact spherical-wavefront channel matrices at sub-THz
carriers, jointly optimizes the panel's per-element transmission phases and
the transmit covariance by multi-start alternating optimization, and sweeps
the panel position between the terminals to locate the capacity maximum.
"""

__version__ = "0.1.0"

from .channel import (
    SPEED_OF_LIGHT,
    ChannelSet,
    PhysicalParams,
    build_channel_set,
    build_direct_los,
    build_ris_rx,
    build_tx_ris,
    effective_channel,
)
from .config import (
    PRESETS,
    ConfigError,
    dbi_to_linear,
    dbm_to_watt,
    load_config,
    preset_config,
    scenario_from_dict,
)
from .geometry import (
    CartesianPoint,
    PlanarArray,
    RisPanel,
    SphericalPoint,
    array_element_positions,
    fresnel_bounds,
    in_fresnel_zone,
    ris_centroid,
    ris_element_positions,
    spherical_to_cartesian,
)
from .optimizer import (
    AltOptConfig,
    AltOptResult,
    WaterfillResult,
    alternating_optimize,
    capacity_given_covariance,
    optimize_single_phase,
    sweep_all_phases,
    waterfill,
)
from .sweep import (
    BaselineRecord,
    CampaignResult,
    ScenarioConfig,
    SpacingResult,
    SweepRecord,
    evaluate_position,
    position_seed,
    run_campaign,
    run_los_baseline,
    run_position_sweep,
    singular_value_stats,
    sweep_z_values,
)

__all__ = [
    "__version__",
    "SPEED_OF_LIGHT",
    "PhysicalParams",
    "ChannelSet",
    "build_tx_ris",
    "build_ris_rx",
    "build_direct_los",
    "build_channel_set",
    "effective_channel",
    "SphericalPoint",
    "CartesianPoint",
    "PlanarArray",
    "RisPanel",
    "spherical_to_cartesian",
    "array_element_positions",
    "ris_element_positions",
    "ris_centroid",
    "fresnel_bounds",
    "in_fresnel_zone",
    "WaterfillResult",
    "AltOptConfig",
    "AltOptResult",
    "waterfill",
    "capacity_given_covariance",
    "optimize_single_phase",
    "sweep_all_phases",
    "alternating_optimize",
    "ScenarioConfig",
    "SweepRecord",
    "BaselineRecord",
    "SpacingResult",
    "CampaignResult",
    "sweep_z_values",
    "position_seed",
    "evaluate_position",
    "run_position_sweep",
    "run_los_baseline",
    "run_campaign",
    "singular_value_stats",
    "ConfigError",
    "PRESETS",
    "preset_config",
    "load_config",
    "scenario_from_dict",
    "dbm_to_watt",
    "dbi_to_linear",
]
