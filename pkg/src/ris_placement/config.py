"""JSON scenario configs.

Keys carry unit suffixes (_ghz, _dbm, _dbi, _m, _lambda) and every conversion
to SI happens here, once, so the rest of the package sees watts, meters and
linear gains only. ``scenario_from_dict`` builds a ScenarioConfig; presets
supply complete ready-to-run dicts.
"""

import copy
import json
import math

from .channel import PhysicalParams
from .geometry import CartesianPoint, PlanarArray, RisPanel
from .optimizer import AltOptConfig
from .sweep import ScenarioConfig

__all__ = [
    "ConfigError",
    "PRESETS",
    "preset_config",
    "load_config",
    "scenario_from_dict",
    "dbm_to_watt",
    "dbi_to_linear",
]


class ConfigError(Exception):
    """Invalid or unreadable scenario config. ``str()`` names the field."""


def dbm_to_watt(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0) / 1000.0


def dbi_to_linear(dbi: float) -> float:
    return 10.0 ** (dbi / 10.0)


# Scenario from the placement study: 300 GHz link, 4-antenna square
# arrays 0.5258 m apart, a 40x40 half-wavelength panel swept between them.
_PAPER_FULL = {
    "frequency_ghz": 300.0,
    "absorption_per_m": 0.0033,
    "tx_gain_dbi": 20.0,
    "rx_gain_dbi": 20.0,
    "power_dbm": 10.0,
    "noise_dbm": -90.0,
    "tx_rows": 2, "tx_cols": 2, "tx_z_m": -0.2629,
    "rx_rows": 2, "rx_cols": 2, "rx_z_m": 0.2629,
    "ris_rows": 40, "ris_cols": 40,
    "element_width_lambda": 0.5, "element_length_lambda": 0.5,
    "gap_x_lambda": 0.125, "gap_y_lambda": 0.125,
    "sweep_z_min_m": -0.1860, "sweep_z_max_m": 0.1860,
    "sweep_positions": 50,
    "spacing_lambda": [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0],
    "multistart_count": 100,
    "convergence_rel_increase": 1.0e-5,
    "max_iterations": 200,
    "seed": 0,
    "include_los_baseline": True,
}

# Reduced panel and grid for quick runs: same link, 16x16 panel with the
# element pitch widened so the panel aperture (and with it the radiating
# near-field extent) matches the 40x40 panel, 11 positions, the two extreme
# spacings, fewer restarts. Keeping the terminals inside the panel's near
# field at every swept position is what preserves the placement trends.
_PAPER_SMALL = dict(
    _PAPER_FULL,
    ris_rows=16, ris_cols=16,
    element_width_lambda=1.4375, element_length_lambda=1.4375,
    sweep_positions=11,
    spacing_lambda=[2.0, 10.0],
    multistart_count=10,
)

PRESETS = {"paper-full": _PAPER_FULL, "paper-small": _PAPER_SMALL}

_REQUIRED = [
    "frequency_ghz", "absorption_per_m", "tx_gain_dbi", "rx_gain_dbi",
    "power_dbm", "noise_dbm",
    "tx_rows", "tx_cols", "tx_z_m", "rx_rows", "rx_cols", "rx_z_m",
    "ris_rows", "ris_cols",
    "element_width_lambda", "element_length_lambda",
    "gap_x_lambda", "gap_y_lambda",
    "sweep_z_min_m", "sweep_z_max_m", "sweep_positions",
    "spacing_lambda",
]

_OPTIONAL_DEFAULTS = {
    "multistart_count": 100,
    "convergence_rel_increase": 1.0e-5,
    "max_iterations": 200,
    "seed": 0,
    "include_los_baseline": True,
    "sweep_z_positions_m": None,
    "tx_center_xy_m": None,
    "rx_center_xy_m": None,
}


def preset_config(name: str) -> dict:
    try:
        return copy.deepcopy(PRESETS[name])
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ConfigError(f"unknown preset {name!r} (choose from: {known})") from None


def load_config(path: str) -> dict:
    """Read and normalize a JSON config file.

    Raises ConfigError with the parser's line/column on malformed JSON, or
    with the offending field name on schema problems.
    """
    try:
        with open(path) as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"malformed JSON in {path!r}: {exc.msg} (line {exc.lineno}, column {exc.colno})"
        ) from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config root must be a JSON object, got {type(raw).__name__}")
    return normalize_config(raw)


def normalize_config(raw: dict) -> dict:
    """Check required keys, fill defaults, reject unknown keys."""
    known = set(_REQUIRED) | set(_OPTIONAL_DEFAULTS)
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown config field(s): {', '.join(unknown)}")
    missing = sorted(k for k in _REQUIRED if k not in raw)
    if missing:
        raise ConfigError(f"missing config field(s): {', '.join(missing)}")
    merged = dict(_OPTIONAL_DEFAULTS)
    merged.update(raw)
    return merged


def _positive(cfg: dict, key: str) -> float:
    value = cfg[key]
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    if not math.isfinite(value) or value <= 0:
        raise ConfigError(f"{key} must be a positive finite number, got {value}")
    return float(value)


def _count(cfg: dict, key: str) -> int:
    value = cfg[key]
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ConfigError(f"{key} must be a positive integer, got {value!r}")
    return value


def _number(cfg: dict, key: str) -> float:
    value = cfg[key]
    if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
        raise ConfigError(f"{key} must be a finite number, got {value!r}")
    return float(value)


def _xy(cfg: dict, key: str) -> tuple[float, float] | None:
    value = cfg[key]
    if value is None:
        return None
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in value)):
        raise ConfigError(f"{key} must be a two-number [x, y] list, got {value!r}")
    return float(value[0]), float(value[1])


def scenario_from_dict(cfg: dict) -> ScenarioConfig:
    """Build the runnable scenario from a normalized config dict.

    Unless overridden, the antenna arrays are centered over the panel's
    centroid so the link axis passes through the middle of the panel.
    """
    cfg = normalize_config(cfg)
    frequency = _positive(cfg, "frequency_ghz") * 1.0e9
    physical = PhysicalParams.from_frequency(
        frequency=frequency,
        absorption=_number(cfg, "absorption_per_m"),
        tx_gain=dbi_to_linear(_number(cfg, "tx_gain_dbi")),
        rx_gain=dbi_to_linear(_number(cfg, "rx_gain_dbi")),
    )
    lam = physical.wavelength
    try:
        panel = RisPanel(
            nx=_count(cfg, "ris_rows"),
            ny=_count(cfg, "ris_cols"),
            element_width=_positive(cfg, "element_width_lambda") * lam,
            element_length=_positive(cfg, "element_length_lambda") * lam,
            gap_x=_positive(cfg, "gap_x_lambda") * lam,
            gap_y=_positive(cfg, "gap_y_lambda") * lam,
            z=0.0,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    centroid_x = (panel.nx - 1) / 2.0 * panel.pitch_x
    centroid_y = (panel.ny - 1) / 2.0 * panel.pitch_y
    tx_xy = _xy(cfg, "tx_center_xy_m") or (centroid_x, centroid_y)
    rx_xy = _xy(cfg, "rx_center_xy_m") or (centroid_x, centroid_y)
    # Template spacing is a placeholder; the sweep substitutes each studied
    # spacing before building any geometry.
    template_spacing = lam
    try:
        tx = PlanarArray(
            rows=_count(cfg, "tx_rows"), cols=_count(cfg, "tx_cols"),
            spacing=template_spacing,
            center=CartesianPoint(tx_xy[0], tx_xy[1], _number(cfg, "tx_z_m")),
        )
        rx = PlanarArray(
            rows=_count(cfg, "rx_rows"), cols=_count(cfg, "rx_cols"),
            spacing=template_spacing,
            center=CartesianPoint(rx_xy[0], rx_xy[1], _number(cfg, "rx_z_m")),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    spacings = cfg["spacing_lambda"]
    if (not isinstance(spacings, (list, tuple)) or not spacings
            or any(isinstance(s, bool) or not isinstance(s, (int, float)) or s <= 0
                   for s in spacings)):
        raise ConfigError(f"spacing_lambda must be a non-empty list of positive numbers, "
                          f"got {spacings!r}")
    explicit = cfg["sweep_z_positions_m"]
    if explicit is not None:
        if (not isinstance(explicit, (list, tuple)) or not explicit
                or any(isinstance(z, bool) or not isinstance(z, (int, float)) for z in explicit)):
            raise ConfigError("sweep_z_positions_m must be a non-empty list of numbers")
        explicit = tuple(float(z) for z in explicit)
    seed = cfg["seed"]
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise ConfigError(f"seed must be a non-negative integer, got {seed!r}")
    try:
        altopt = AltOptConfig(
            starts=_count(cfg, "multistart_count"),
            threshold=_positive(cfg, "convergence_rel_increase"),
            max_iterations=_count(cfg, "max_iterations"),
            seed=seed,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    include_baseline = cfg["include_los_baseline"]
    if not isinstance(include_baseline, bool):
        raise ConfigError(f"include_los_baseline must be true or false, got {include_baseline!r}")
    try:
        return ScenarioConfig(
            physical=physical,
            tx=tx, rx=rx, panel=panel,
            sweep_z_min=_number(cfg, "sweep_z_min_m"),
            sweep_z_max=_number(cfg, "sweep_z_max_m"),
            sweep_count=_count(cfg, "sweep_positions"),
            spacings_lambda=tuple(float(s) for s in spacings),
            altopt=altopt,
            power=dbm_to_watt(_number(cfg, "power_dbm")),
            noise_power=dbm_to_watt(_number(cfg, "noise_dbm")),
            include_los_baseline=include_baseline,
            explicit_z=explicit,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
