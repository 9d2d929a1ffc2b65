"""Run configuration: INI-style files plus command-line overrides.

A run is described by a flat key-value file with one section per concern
(model, amplitude, grid, stability, map, evolve, schedule).  Flags
override file values; unknown keys are rejected by name so typos cannot
silently fall back to defaults.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .errors import InvalidValue, MissingField, UnknownKey
from .grid import GridSpec, make_grid
from .model import AmplitudeMode, EqualAmplitudes, FixedA1, ModelParams
from .stability import DEFAULT_THRESHOLD

__all__ = ["RunConfig", "parse_config", "MODES"]

MODES = ("solve", "stability", "map", "evolve", "excite")

_KNOWN_KEYS = {
    "model": {"a1", "a2", "v1", "v2", "w1", "w2", "nu1", "nu2"},
    "amplitude": {"mode", "amp1"},
    "grid": {"half_length", "n_points"},
    "stability": {"threshold"},
    "map": {"v_min", "v_max", "v_count", "w_min", "w_max", "w_count"},
    "evolve": {
        "dt",
        "t_end",
        "seed",
        "noise_amplitude",
        "complex_noise",
        "sample_every",
        "snapshot_times",
        "snapshot_every",
    },
    "schedule": {"ramp_end", "hold_end", "a1", "a2", "v1", "v2", "w1", "w2"},
}

_MODEL_REQUIRED = ("a1", "a2", "v1", "v2", "w1", "w2")


@dataclass(frozen=True)
class RunConfig:
    """Validated description of one run, with all defaults materialized."""

    mode: str
    model: ModelParams
    amplitude: AmplitudeMode
    grid: GridSpec
    threshold: float = DEFAULT_THRESHOLD
    dt: float = 1e-3
    t_end: float = 1500.0
    seed: int = 1234
    noise_amplitude: float = 0.05
    complex_noise: bool = True
    sample_every: int = 100
    snapshot_times: tuple[float, ...] = ()
    map_v: Optional[tuple[float, float, int]] = None
    map_w: Optional[tuple[float, float, int]] = None
    schedules: dict[str, tuple[float, float]] = field(default_factory=dict)
    ramp_end: float = 500.0
    hold_end: float = 1500.0
    out_dir: Path = Path("runs/out")


def _float(raw: str, where: str) -> float:
    try:
        return float(raw)
    except ValueError as exc:
        raise InvalidValue(f"{where} must be a number, got {raw!r}") from exc


def _int(raw: str, where: str) -> int:
    try:
        return int(raw)
    except ValueError as exc:
        raise InvalidValue(f"{where} must be an integer, got {raw!r}") from exc


def _bool(raw: str, where: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise InvalidValue(f"{where} must be a boolean, got {raw!r}")


def _parse_ramp(raw: str, where: str) -> tuple[float, float]:
    parts = raw.split("->")
    if len(parts) != 2:
        raise InvalidValue(f"{where} must look like 'initial -> final', got {raw!r}")
    return _float(parts[0].strip(), where), _float(parts[1].strip(), where)


def _load_table(path: Optional[Path], overrides: Sequence[str]) -> dict[str, dict[str, str]]:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # keep keys as written so typos are reported verbatim
    if path is not None:
        if not Path(path).exists():
            raise InvalidValue(f"config file not found: {path}")
        with open(path) as fh:
            parser.read_file(fh)
    table: dict[str, dict[str, str]] = {}
    for section in parser.sections():
        table[section] = dict(parser[section])
    for item in overrides:
        if "=" not in item:
            raise InvalidValue(f"--set expects section.key=value, got {item!r}")
        target, _, raw = item.partition("=")
        if "." not in target:
            raise InvalidValue(f"--set expects section.key=value, got {item!r}")
        section, _, key = target.partition(".")
        table.setdefault(section.strip(), {})[key.strip()] = raw.strip()
    return table


def _check_keys(table: dict[str, dict[str, str]]) -> None:
    for section, entries in table.items():
        if section not in _KNOWN_KEYS:
            raise UnknownKey(f"unknown config section [{section}]")
        for key in entries:
            if key not in _KNOWN_KEYS[section]:
                raise UnknownKey(f"unknown config key {section}.{key}")


def parse_config(
    mode: str,
    path: Optional[Path] = None,
    overrides: Sequence[str] = (),
    out_dir: Optional[Path] = None,
) -> RunConfig:
    """Build a validated RunConfig from a file and/or override flags.

    Raises
    ------
    MissingField, InvalidValue, UnknownKey
        Each naming the offending field.
    """
    if mode not in MODES:
        raise InvalidValue(f"mode must be one of {', '.join(MODES)}; got {mode!r}")
    table = _load_table(path, overrides)
    _check_keys(table)

    model_raw = table.get("model", {})
    for key in _MODEL_REQUIRED:
        if key not in model_raw:
            raise MissingField(f"model.{key} is required")
    model = ModelParams(
        a1=_float(model_raw["a1"], "model.a1"),
        a2=_float(model_raw["a2"], "model.a2"),
        v1=_float(model_raw["v1"], "model.v1"),
        v2=_float(model_raw["v2"], "model.v2"),
        w1=_float(model_raw["w1"], "model.w1"),
        w2=_float(model_raw["w2"], "model.w2"),
        nu1=_float(model_raw.get("nu1", "1"), "model.nu1"),
        nu2=_float(model_raw.get("nu2", "1"), "model.nu2"),
    )
    if model.a1 == 0 or model.a2 == 0:
        raise InvalidValue("model.a1 and model.a2 must be nonzero")

    amp_raw = table.get("amplitude", {})
    amp_mode = amp_raw.get("mode")
    if amp_mode is None:
        amp_mode = "fixed_a1" if "amp1" in amp_raw else "equal"
    if amp_mode == "fixed_a1":
        if "amp1" not in amp_raw:
            raise MissingField("amplitude.amp1 is required for mode fixed_a1")
        amplitude: AmplitudeMode = FixedA1(_float(amp_raw["amp1"], "amplitude.amp1"))
    elif amp_mode == "equal":
        if "amp1" in amp_raw:
            raise InvalidValue("amplitude.amp1 is meaningless for mode equal")
        amplitude = EqualAmplitudes()
    else:
        raise InvalidValue(f"amplitude.mode must be fixed_a1 or equal, got {amp_mode!r}")

    grid_raw = table.get("grid", {})
    n_points = _int(grid_raw.get("n_points", "256"), "grid.n_points")
    if n_points % 2 != 0:
        raise InvalidValue("grid.n_points must be even")
    grid = make_grid(
        _float(grid_raw.get("half_length", "20"), "grid.half_length"),
        n_points,
    )

    stab_raw = table.get("stability", {})
    threshold = _float(stab_raw.get("threshold", str(DEFAULT_THRESHOLD)), "stability.threshold")
    if threshold <= 0:
        raise InvalidValue("stability.threshold must be positive")

    map_v = map_w = None
    if mode == "map":
        map_raw = table.get("map", {})
        for key in _KNOWN_KEYS["map"]:
            if key not in map_raw:
                raise MissingField(f"map.{key} is required for map mode")
        v_count = _int(map_raw["v_count"], "map.v_count")
        w_count = _int(map_raw["w_count"], "map.w_count")
        if v_count < 2 or w_count < 2:
            raise InvalidValue("map.v_count and map.w_count must be at least 2")
        map_v = (_float(map_raw["v_min"], "map.v_min"), _float(map_raw["v_max"], "map.v_max"), v_count)
        map_w = (_float(map_raw["w_min"], "map.w_min"), _float(map_raw["w_max"], "map.w_max"), w_count)

    ev_raw = table.get("evolve", {})
    dt = _float(ev_raw.get("dt", "1e-3"), "evolve.dt")
    if dt <= 0:
        raise InvalidValue("evolve.dt must be positive")
    t_end = _float(ev_raw.get("t_end", "1500"), "evolve.t_end")
    if t_end < 0:
        raise InvalidValue("evolve.t_end must be nonnegative")
    seed = _int(ev_raw.get("seed", "1234"), "evolve.seed")
    default_noise = "0.05" if mode == "evolve" else "0"
    noise_amplitude = _float(ev_raw.get("noise_amplitude", default_noise), "evolve.noise_amplitude")
    if not (0 <= noise_amplitude < 1):
        raise InvalidValue("evolve.noise_amplitude must lie in [0, 1)")
    complex_noise = _bool(ev_raw.get("complex_noise", "true"), "evolve.complex_noise")
    sample_every = _int(ev_raw.get("sample_every", "100"), "evolve.sample_every")
    if sample_every < 1:
        raise InvalidValue("evolve.sample_every must be >= 1")
    snapshot_times: list[float] = []
    if "snapshot_times" in ev_raw:
        for token in ev_raw["snapshot_times"].split(","):
            token = token.strip()
            if token:
                snapshot_times.append(_float(token, "evolve.snapshot_times"))
    if "snapshot_every" in ev_raw:
        every = _float(ev_raw["snapshot_every"], "evolve.snapshot_every")
        if every <= 0:
            raise InvalidValue("evolve.snapshot_every must be positive")
        count = int(t_end / every)
        snapshot_times.extend(i * every for i in range(count + 1))

    sched_raw = dict(table.get("schedule", {}))
    ramp_end = _float(sched_raw.pop("ramp_end", "500"), "schedule.ramp_end")
    hold_end = _float(sched_raw.pop("hold_end", "1500"), "schedule.hold_end")
    if not ramp_end < hold_end:
        raise InvalidValue("schedule.ramp_end must precede schedule.hold_end")
    schedules = {
        name: _parse_ramp(raw, f"schedule.{name}") for name, raw in sched_raw.items()
    }
    if mode == "excite":
        if not schedules:
            raise MissingField("excite mode needs at least one [schedule] ramp")
        if t_end > hold_end:
            raise InvalidValue("evolve.t_end must not exceed schedule.hold_end")
        for name, (initial, _) in schedules.items():
            if getattr(model, name) != initial:
                raise InvalidValue(
                    f"schedule.{name} starts at {initial} but model.{name} is "
                    f"{getattr(model, name)}; the run starts from the model values"
                )

    return RunConfig(
        mode=mode,
        model=model,
        amplitude=amplitude,
        grid=grid,
        threshold=threshold,
        dt=dt,
        t_end=t_end,
        seed=seed,
        noise_amplitude=noise_amplitude,
        complex_noise=complex_noise,
        sample_every=sample_every,
        snapshot_times=tuple(dict.fromkeys(snapshot_times)),
        map_v=map_v,
        map_w=map_w,
        schedules=schedules,
        ramp_end=ramp_end,
        hold_end=hold_end,
        out_dir=Path(out_dir) if out_dir is not None else Path("runs") / mode,
    )
