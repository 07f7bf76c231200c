"""Permutation entropy and statistical complexity on the complexity-entropy plane."""

from .errors import (
    EmbeddingError,
    EmptyInputError,
    FormatError,
    IngestError,
    InsufficientDataError,
    InvalidDistributionError,
    InvalidInputError,
    OrderingError,
    OrdinalPlaneError,
    SchemaError,
)
from .ingest import EventAnnotation, ParsedPrices, parse_events_csv, parse_price_csv, price_csv
from .ordinal import (
    OrdinalConfig,
    OrdinalDistribution,
    Pattern,
    TimeSeries,
    lehmer_index,
    lehmer_unrank,
    ordinal_distribution,
    pattern_of,
)
from .quantifiers import (
    ComplexityEnvelope,
    QuantifierPoint,
    complexity_envelope,
    disequilibrium,
    jensen_shannon_divergence,
    normalized_entropy,
    quantify,
    shannon_entropy,
    statistical_complexity,
)
from .surrogates import BaselineBand, FbmSpec, baseline_band, generate_fbm, shuffle
from .windows import WindowPlan, WindowResult, analyze_windows, group_windows, plan_windows

__version__ = "0.1.0"
