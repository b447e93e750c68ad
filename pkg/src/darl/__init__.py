"""darl: deterministic random-length temperature model for buried heat exchangers.

Seeded synthetic temperature series, ordinary least squares over pipe
length, a closed-form air temperature predictor, and the validation
statistics used to judge it (Shapiro-Wilk, RMSE, relative error,
quartiles), with built-in experiment fixtures and a CLI.
"""

from .errors import (
    DarlError,
    DegenerateAbscissa,
    DegenerateVariance,
    DivisionByZero,
    InsufficientSamples,
    InvalidBounds,
    InvalidCoefficient,
    MissingReference,
    NumericalDegeneracy,
    OrderingError,
    ParseError,
    SchemaError,
    ShapeMismatch,
    Singularity,
    UnknownFixture,
    UnsupportedSampleSize,
    ValidationError,
)
from .ingest import (
    CHANNEL_NAMES,
    FIXTURE_NAMES,
    ChannelSummary,
    Fixture,
    SensorLog,
    builtin_fixtures,
    dump_config,
    load_config,
    load_fixture,
    parse_sensor_csv,
    summarize_channel,
)
from .model import (
    AS_PRINTED,
    DARL_MODES,
    SPAN_OVER_PHI_R2,
    ComparisonRecord,
    ExperimentConfig,
    PredictionRecord,
    build_series,
    compare_with_reference,
    darl_temperature,
    register_darl_mode,
    run_configuration,
    select_best_seed,
)
from .prng import (
    KNOWN_FERMAT_PRIMES,
    SORT_ORDERS,
    FermatSeedSet,
    MersenneTwister,
    UniformSeries,
    seed_generator,
    uniform_series,
)
from .regression import LinearFit, SamplePoint, fit_ols, predict_at
from .stats import (
    NormalityResult,
    QuartileSummary,
    quartile_summary,
    relative_error,
    rmse,
    shapiro_wilk,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "DarlError", "NumericalDegeneracy", "DegenerateAbscissa", "DegenerateVariance",
    "Singularity", "InvalidCoefficient", "DivisionByZero", "InsufficientSamples",
    "InvalidBounds", "UnsupportedSampleSize", "ShapeMismatch", "MissingReference",
    "SchemaError", "OrderingError", "ValidationError", "ParseError", "UnknownFixture",
    # prng
    "KNOWN_FERMAT_PRIMES", "SORT_ORDERS", "MersenneTwister", "FermatSeedSet",
    "UniformSeries", "seed_generator", "uniform_series",
    # regression
    "SamplePoint", "LinearFit", "fit_ols", "predict_at",
    # stats
    "NormalityResult", "QuartileSummary", "shapiro_wilk", "rmse",
    "relative_error", "quartile_summary",
    # model
    "AS_PRINTED", "SPAN_OVER_PHI_R2", "DARL_MODES", "register_darl_mode",
    "darl_temperature", "ExperimentConfig", "PredictionRecord", "ComparisonRecord",
    "build_series", "run_configuration", "compare_with_reference", "select_best_seed",
    # ingest
    "CHANNEL_NAMES", "FIXTURE_NAMES", "SensorLog", "ChannelSummary",
    "parse_sensor_csv", "summarize_channel", "load_config", "dump_config",
    "Fixture", "load_fixture", "builtin_fixtures",
]
