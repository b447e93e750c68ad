"""DARL model core: synthetic series, temperature predictor, experiment runs.

A run draws one sorted bounded series per seed over the full exchanger
length, fits a single regression line per (seed, configuration), evaluates
the fitted temperature at each target length, and feeds it through the
temperature predictor.

The predictor is evaluated exactly as published:

    T = [((t_max - t_min) / (t_phi - t_w)) * (1 / r_squared)] * t_w + t_phi

For realistic boundary temperatures this expression leaves the physical
bracket [min(t_min, t_w), t_max] by a wide margin, so every prediction
carries an out-of-range flag instead of being clamped or corrected.
Alternative readings of the formula can be registered in
:data:`DARL_MODES` and compared side by side; one such reading (dividing
the temperature span by t_phi * r_squared instead) ships as the
non-default mode ``span-over-phi-r2``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DegenerateVariance,
    InsufficientSamples,
    InvalidCoefficient,
    MissingReference,
    Singularity,
    ValidationError,
)
from .prng import KNOWN_FERMAT_PRIMES, SORT_ORDERS, UniformSeries, uniform_series
from .regression import fit_ols, predict_at
from .stats import relative_error, rmse

log = logging.getLogger(__name__)

AS_PRINTED = "as-printed"
SPAN_OVER_PHI_R2 = "span-over-phi-r2"


def _as_printed(t_max: float, t_min: float, t_w: float, t_phi: float, r_squared: float) -> float:
    den = t_phi - t_w
    if den == 0.0:
        raise Singularity("t_phi equals t_w; the predictor denominator vanishes")
    return ((t_max - t_min) / den) * (1.0 / r_squared) * t_w + t_phi


def _span_over_phi_r2(t_max: float, t_min: float, t_w: float, t_phi: float, r_squared: float) -> float:
    den = t_phi * r_squared
    if den == 0.0:
        raise Singularity("t_phi * r_squared vanishes; the variant denominator is zero")
    return ((t_max - t_min) / den) * t_w + t_phi


#: Registered predictor readings, name -> f(t_max, t_min, t_w, t_phi, r2).
DARL_MODES: dict[str, Callable[[float, float, float, float, float], float]] = {
    AS_PRINTED: _as_printed,
    SPAN_OVER_PHI_R2: _span_over_phi_r2,
}


def register_darl_mode(name: str, fn: Callable[[float, float, float, float, float], float]) -> None:
    """Register an alternative predictor reading under ``name``."""
    if name in DARL_MODES:
        raise ValidationError(f"predictor mode {name!r} is already registered")
    DARL_MODES[name] = fn


def darl_temperature(
    t_max: float,
    t_min: float,
    t_w: float,
    t_phi: float,
    r_squared: float,
    mode: str = AS_PRINTED,
) -> tuple[float, bool]:
    """Simulated air temperature and its out-of-physical-range flag.

    The flag is set when the result falls outside [min(t_min, t_w), t_max].
    Raises InvalidCoefficient for r_squared <= 0 and Singularity when the
    selected mode's denominator is exactly zero.
    """
    if r_squared <= 0.0:
        raise InvalidCoefficient(f"r_squared must be positive, got {r_squared}")
    try:
        fn = DARL_MODES[mode]
    except KeyError:
        known = ", ".join(sorted(DARL_MODES))
        raise ValidationError(f"unknown predictor mode {mode!r} (registered: {known})") from None
    t_sim = fn(float(t_max), float(t_min), float(t_w), float(t_phi), float(r_squared))
    out_of_range = not (min(t_min, t_w) <= t_sim <= t_max)
    return t_sim, out_of_range


@dataclass(frozen=True)
class ExperimentConfig:
    """Boundary temperatures, geometry and run controls for one experiment.

    Field names carry their unit suffix and match the JSON config schema
    one to one.
    """

    t_in_c: float                       # inlet air temperature (= t_max)
    t_end_c: float                      # terminal sensor temperature (= t_min)
    t_w_c: float                        # groundwater temperature
    total_length_m: float
    target_lengths_m: tuple[float, ...]
    seeds: tuple[int, ...] = KNOWN_FERMAT_PRIMES
    t_w_uncertainty_c: float = 0.0
    n_override: int | None = None
    sort_order: str = "descending"
    darl_mode: str = AS_PRINTED

    def __post_init__(self):
        object.__setattr__(self, "target_lengths_m", tuple(float(v) for v in self.target_lengths_m))
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))

    def validate(self) -> None:
        """Enforce the semantic invariants; raises ValidationError."""
        if not self.total_length_m > 0.0:
            raise ValidationError(f"total_length_m must be positive, got {self.total_length_m}")
        if not self.t_in_c > self.t_end_c:
            raise ValidationError(
                f"t_in_c ({self.t_in_c}) must exceed t_end_c ({self.t_end_c}): "
                "the exchanger cools the air"
            )
        for x in self.target_lengths_m:
            if not 0.0 < x < self.total_length_m:
                raise ValidationError(
                    f"target length {x} m outside (0, {self.total_length_m})"
                )
        if not self.seeds:
            raise ValidationError("seed list must be nonempty")
        for s in self.seeds:
            if s not in KNOWN_FERMAT_PRIMES:
                raise ValidationError(
                    f"seed {s} is not a known Fermat prime {KNOWN_FERMAT_PRIMES}"
                )
        if len(set(self.seeds)) != len(self.seeds):
            raise ValidationError("seed list contains duplicates")
        if self.t_w_uncertainty_c < 0.0:
            raise ValidationError("t_w_uncertainty_c must be nonnegative")
        if self.n_override is not None and self.n_override < 2:
            raise ValidationError(f"n_override must be at least 2, got {self.n_override}")
        if self.sort_order not in SORT_ORDERS:
            raise ValidationError(f"sort_order must be one of {SORT_ORDERS}")
        if self.darl_mode not in DARL_MODES:
            raise ValidationError(f"darl_mode {self.darl_mode!r} is not registered")

    def sample_count(self) -> int:
        """Series length: the override if given, else one value per centimetre."""
        if self.n_override is not None:
            return int(self.n_override)
        return int(round(100.0 * self.total_length_m))


@dataclass(frozen=True)
class PredictionRecord:
    seed: int
    target_length_m: float
    t_phi_c: float        # regression prediction at the target length
    r_squared: float
    t_sim_c: float        # predictor output
    out_of_range: bool


@dataclass(frozen=True)
class ComparisonRecord:
    seed: int
    target_length_m: float
    t_sim_c: float
    t_obs_c: float
    delta_t_c: float           # |t_sim - t_obs|
    relative_error_pct: float


def build_series(config: ExperimentConfig, seed: int) -> tuple[np.ndarray, UniformSeries]:
    """Length grid and the synthetic series paired with it, index for index.

    The grid spans [0, total_length] with x_i = i*L/(n-1); the series is a
    sorted bounded uniform sample between t_end and t_in.
    """
    n = config.sample_count()
    grid = np.arange(n, dtype=np.float64) * config.total_length_m / (n - 1)
    series = uniform_series(seed, n, config.t_end_c, config.t_in_c, config.sort_order)
    return grid, series


def run_configuration(config: ExperimentConfig) -> list[PredictionRecord]:
    """All predictions for a configuration, ordered by (seed, target length).

    One series and one fit per seed over the full length, evaluated at every
    target. A seed whose fit degenerates is skipped with a logged diagnostic;
    the output is a pure function of the configuration.
    """
    config.validate()
    records: list[PredictionRecord] = []
    for seed in sorted(config.seeds):
        grid, series = build_series(config, seed)
        try:
            fit = fit_ols(zip(grid.tolist(), series.values.tolist()))
        except DegenerateVariance as exc:
            log.warning("seed %d skipped: %s", seed, exc)
            continue
        for x in sorted(config.target_lengths_m):
            t_phi = predict_at(fit, x)
            t_sim, flagged = darl_temperature(
                config.t_in_c, config.t_end_c, config.t_w_c,
                t_phi, fit.r_squared, mode=config.darl_mode,
            )
            records.append(PredictionRecord(
                seed=seed, target_length_m=x, t_phi_c=t_phi,
                r_squared=fit.r_squared, t_sim_c=t_sim, out_of_range=flagged,
            ))
    return records


def compare_with_reference(
    records: Sequence[PredictionRecord],
    reference: Iterable[tuple[float, float]],
) -> tuple[list[ComparisonRecord], dict[int, float]]:
    """Per-record comparison rows plus RMSE over the matched pairs, per seed.

    Raises MissingReference when a record's target length has no reference
    observation.
    """
    lookup = {float(length): float(t_obs) for length, t_obs in reference}
    comparisons: list[ComparisonRecord] = []
    for rec in records:
        if rec.target_length_m not in lookup:
            raise MissingReference(
                f"no reference observation at {rec.target_length_m} m"
            )
        t_obs = lookup[rec.target_length_m]
        comparisons.append(ComparisonRecord(
            seed=rec.seed,
            target_length_m=rec.target_length_m,
            t_sim_c=rec.t_sim_c,
            t_obs_c=t_obs,
            delta_t_c=abs(rec.t_sim_c - t_obs),
            relative_error_pct=relative_error(t_obs, rec.t_sim_c),
        ))
    rmse_by_seed: dict[int, float] = {}
    for seed in sorted({c.seed for c in comparisons}):
        pairs = [c for c in comparisons if c.seed == seed]
        rmse_by_seed[seed] = rmse([c.t_obs_c for c in pairs], [c.t_sim_c for c in pairs])
    return comparisons, rmse_by_seed


def select_best_seed(comparisons: Iterable[ComparisonRecord]) -> int:
    """Seed with the lowest mean relative error; ties go to the smaller seed."""
    by_seed: dict[int, list[float]] = {}
    for c in comparisons:
        by_seed.setdefault(c.seed, []).append(c.relative_error_pct)
    if not by_seed:
        raise InsufficientSamples("no comparison records to rank")
    return min(by_seed, key=lambda s: (float(np.mean(by_seed[s])), s))
