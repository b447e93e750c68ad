"""Sensor-log parsing, channel summaries, config files and built-in fixtures."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import (
    InsufficientSamples,
    OrderingError,
    ParseError,
    SchemaError,
    UnknownFixture,
    ValidationError,
)
from .model import ExperimentConfig
from .serialize import render_json

#: Channel columns of a sensor log, in file order (after timestamp_s).
CHANNEL_NAMES = ("T_in", "S1", "S2", "S3", "S4", "S7", "T_w")

#: Rated accuracy of the temperature probes, degrees C.
SENSOR_UNCERTAINTY_C = 0.05

FIXTURE_NAMES = ("experiment-a", "experiment-b")

_CONFIG_REQUIRED = ("t_in_c", "t_end_c", "t_w_c", "total_length_m", "target_lengths_m")
_CONFIG_OPTIONAL = ("t_w_uncertainty_c", "seeds", "n_override", "sort_order", "darl_mode")


@dataclass(frozen=True)
class SensorLog:
    """Time-stamped multichannel temperature record."""

    timestamps: np.ndarray                 # seconds, strictly increasing
    channels: dict[str, np.ndarray]        # name -> degrees C
    sensor_uncertainty: float = SENSOR_UNCERTAINTY_C

    def __len__(self) -> int:
        return len(self.timestamps)


@dataclass(frozen=True)
class ChannelSummary:
    mean: float
    std: float        # sample standard deviation (n-1 denominator)
    count: int


def parse_sensor_csv(data: bytes) -> SensorLog:
    """Parse a sensor log from CSV bytes.

    Expects a header row with `timestamp_s` first and then every channel in
    CHANNEL_NAMES. A missing column raises SchemaError; a numeric cell that
    fails to parse raises ParseError naming the offending row; timestamps
    must be strictly increasing or OrderingError is raised.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"sensor log is not valid UTF-8: {exc}") from None
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise SchemaError("sensor log is empty; header row required")
    header = [cell.strip().strip('"') for cell in lines[0].split(",")]
    if not header or header[0] != "timestamp_s":
        raise SchemaError(f"first column must be timestamp_s, got {header[:1]}")
    positions: dict[str, int] = {}
    for name in CHANNEL_NAMES:
        if name not in header:
            raise SchemaError(f"sensor log lacks required column {name}")
        positions[name] = header.index(name)

    width = len(header)
    rows: list[list[float]] = []
    for idx, line in enumerate(lines[1:], start=1):
        cells = [cell.strip() for cell in line.split(",")]
        if len(cells) != width:
            raise ParseError(f"row {idx}: expected {width} cells, got {len(cells)}")
        try:
            values = [float(cell) for cell in cells]
        except ValueError:
            raise ParseError(f"row {idx}: unparseable numeric value") from None
        if any(not math.isfinite(v) for v in values):
            raise ParseError(f"row {idx}: non-finite value")
        rows.append(values)

    table = np.asarray(rows, dtype=np.float64).reshape(len(rows), width)
    timestamps = table[:, 0]
    if len(timestamps) > 1 and not np.all(np.diff(timestamps) > 0.0):
        raise OrderingError("timestamps must be strictly increasing")
    channels = {name: table[:, positions[name]].copy() for name in CHANNEL_NAMES}
    for arr in channels.values():
        arr.setflags(write=False)
    timestamps = timestamps.copy()
    timestamps.setflags(write=False)
    return SensorLog(timestamps=timestamps, channels=channels)


def summarize_channel(log: SensorLog, channel: str) -> ChannelSummary:
    """Mean and sample (n-1) standard deviation of one channel.

    A single-observation channel has no dispersion estimate; its std is
    reported as 0.
    """
    if channel not in log.channels:
        known = ", ".join(CHANNEL_NAMES)
        raise SchemaError(f"unknown channel {channel!r} (expected one of {known})")
    values = log.channels[channel]
    n = len(values)
    if n == 0:
        raise InsufficientSamples(f"channel {channel} is empty")
    mean = float(np.mean(values))
    std = float(np.std(values, ddof=1)) if n > 1 else 0.0
    return ChannelSummary(mean=mean, std=std, count=n)


def _config_from_mapping(doc: dict) -> ExperimentConfig:
    if not isinstance(doc, dict):
        raise SchemaError(f"config document must be an object, got {type(doc).__name__}")
    for key in _CONFIG_REQUIRED:
        if key not in doc:
            raise SchemaError(f"config lacks required key {key}")
    for key in doc:
        if key not in _CONFIG_REQUIRED and key not in _CONFIG_OPTIONAL:
            raise SchemaError(f"config has unknown key {key}")
    kwargs = dict(doc)
    kwargs["target_lengths_m"] = tuple(kwargs["target_lengths_m"])
    if "seeds" in kwargs:
        kwargs["seeds"] = tuple(kwargs["seeds"])
    if kwargs.get("n_override", None) is None:
        kwargs.pop("n_override", None)
    try:
        config = ExperimentConfig(**kwargs)
    except TypeError as exc:
        raise SchemaError(f"malformed config: {exc}") from None
    config.validate()
    return config


def load_config(data: bytes) -> ExperimentConfig:
    """Parse and validate an experiment config from JSON bytes."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"config is not valid JSON: {exc}") from None
    return _config_from_mapping(doc)


def config_to_mapping(config: ExperimentConfig) -> dict:
    """Flat schema-keyed mapping for serialization; inverse of load_config."""
    return {
        "t_in_c": config.t_in_c,
        "t_end_c": config.t_end_c,
        "t_w_c": config.t_w_c,
        "t_w_uncertainty_c": config.t_w_uncertainty_c,
        "total_length_m": config.total_length_m,
        "target_lengths_m": list(config.target_lengths_m),
        "seeds": list(config.seeds),
        "n_override": config.n_override,
        "sort_order": config.sort_order,
        "darl_mode": config.darl_mode,
    }


def dump_config(config: ExperimentConfig) -> bytes:
    """Serialize a config to JSON bytes; load_config(dump_config(c)) == c."""
    return (render_json(config_to_mapping(config)) + "\n").encode("utf-8")


@dataclass(frozen=True)
class ReportedRow:
    """One published comparison row: seed, |ΔT| and relative error at a length."""

    target_length_m: float
    seed: int
    delta_t_c: float
    relative_error_pct: float


@dataclass(frozen=True)
class Fixture:
    """A built-in experiment: config, reference observations, published results."""

    name: str
    config: ExperimentConfig
    reference: tuple[tuple[float, float], ...]    # (length m, t_obs degrees C)
    reported_rows: tuple[ReportedRow, ...]
    reported_rmse_c: float


def load_fixture(name: str) -> Fixture:
    """Load a packaged fixture by name; UnknownFixture for anything else."""
    if name not in FIXTURE_NAMES:
        known = ", ".join(FIXTURE_NAMES)
        raise UnknownFixture(f"unknown fixture {name!r} (built-ins: {known})")
    data = resources.files("darl").joinpath(f"fixtures/v1/{name}.json").read_bytes()
    doc = json.loads(data.decode("utf-8"))
    config = _config_from_mapping(doc["config"])
    reference = tuple((float(x), float(t)) for x, t in doc["reference"])
    rows = tuple(
        ReportedRow(
            target_length_m=float(r["target_length_m"]),
            seed=int(r["seed"]),
            delta_t_c=float(r["delta_t_c"]),
            relative_error_pct=float(r["relative_error_pct"]),
        )
        for r in doc["reported"]["rows"]
    )
    return Fixture(
        name=name,
        config=config,
        reference=reference,
        reported_rows=rows,
        reported_rmse_c=float(doc["reported"]["rmse_c"]),
    )


def builtin_fixtures(name: str) -> tuple[ExperimentConfig, list[tuple[float, float]]]:
    """Config and reference observations of a built-in fixture."""
    fixture = load_fixture(name)
    return fixture.config, list(fixture.reference)


def load_series_csv(data: bytes) -> np.ndarray:
    """Parse a single-column series CSV with an Ordered_Value header."""
    text = data.decode("utf-8")
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise SchemaError("series file is empty; Ordered_Value header required")
    if lines[0].strip('"') != "Ordered_Value":
        raise SchemaError(f"series header must be Ordered_Value, got {lines[0]!r}")
    values = []
    for idx, line in enumerate(lines[1:], start=1):
        try:
            values.append(float(line))
        except ValueError:
            raise ParseError(f"row {idx}: unparseable numeric value") from None
    if not values:
        raise InsufficientSamples("series file has no values")
    return np.asarray(values, dtype=np.float64)


def load_reference_csv(data: bytes) -> list[tuple[float, float]]:
    """Parse reference observations from CSV with columns length_m,t_obs_c."""
    text = data.decode("utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise SchemaError("reference file is empty; header row required")
    header = [cell.strip().strip('"') for cell in lines[0].split(",")]
    if header != ["length_m", "t_obs_c"]:
        raise SchemaError(f"reference header must be length_m,t_obs_c, got {header}")
    out: list[tuple[float, float]] = []
    for idx, line in enumerate(lines[1:], start=1):
        cells = line.split(",")
        if len(cells) != 2:
            raise ParseError(f"row {idx}: expected 2 cells, got {len(cells)}")
        try:
            out.append((float(cells[0]), float(cells[1])))
        except ValueError:
            raise ParseError(f"row {idx}: unparseable numeric value") from None
    if not out:
        raise ValidationError("reference file has no observation rows")
    return out
