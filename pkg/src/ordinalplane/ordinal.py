"""
Bandt-Pompe symbolization.

Each delay vector ``(x_s, x_{s+tau}, ..., x_{s+(D-1)tau})`` is mapped to the
permutation that sorts it (ties broken by position), and permutations are
identified by their Lehmer rank so that counting is a flat ``bincount`` over
``D!`` bins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import date
from typing import Sequence, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import InsufficientDataError, InvalidInputError

__all__ = [
    "TimeSeries",
    "OrdinalConfig",
    "Pattern",
    "OrdinalDistribution",
    "pattern_of",
    "lehmer_index",
    "lehmer_unrank",
    "ordinal_symbols",
    "ordinal_distribution",
    "MAX_DIMENSION",
]

MAX_DIMENSION = 7


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Ordered finite observations, optionally labelled by strictly increasing dates."""

    values: NDArray[np.float64]
    dates: tuple[date, ...] | None = None

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True).reshape(-1)
        if values.size < 1:
            raise InvalidInputError("time series must contain at least one value")
        if not np.all(np.isfinite(values)):
            raise InvalidInputError("time series values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if self.dates is not None:
            dates = tuple(self.dates)
            if len(dates) != values.size:
                raise InvalidInputError(
                    f"dates has length {len(dates)}, values has length {values.size}"
                )
            for a, b in zip(dates, dates[1:]):
                if not a < b:
                    raise InvalidInputError(f"dates not strictly increasing at {b}")
            object.__setattr__(self, "dates", dates)

    def __len__(self) -> int:
        return int(self.values.size)

    def slice(self, start: int, stop: int) -> "TimeSeries":
        dates = None if self.dates is None else self.dates[start:stop]
        return TimeSeries(self.values[start:stop], dates)


SeriesLike = Union[TimeSeries, ArrayLike]


def _as_values(series: SeriesLike) -> NDArray[np.float64]:
    if isinstance(series, TimeSeries):
        return series.values
    values = np.asarray(series, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("time series values must be finite")
    return values


@dataclass(frozen=True)
class OrdinalConfig:
    """Embedding dimension ``D`` and delay ``tau``."""

    dimension: int = 4
    delay: int = 1

    def __post_init__(self):
        if not 2 <= self.dimension <= MAX_DIMENSION:
            raise InvalidInputError(
                f"dimension must be in [2, {MAX_DIMENSION}], got {self.dimension}"
            )
        if self.delay < 1:
            raise InvalidInputError(f"delay must be >= 1, got {self.delay}")

    @property
    def n_patterns(self) -> int:
        return math.factorial(self.dimension)

    @property
    def span(self) -> int:
        """Number of consecutive samples covered by one delay vector."""
        return (self.dimension - 1) * self.delay + 1

    def n_vectors(self, length: int) -> int:
        return max(0, length - (self.dimension - 1) * self.delay)


@dataclass(frozen=True)
class Pattern:
    permutation: tuple[int, ...]
    index: int

    @property
    def dimension(self) -> int:
        return len(self.permutation)


def _check_permutation(permutation: Sequence[int]) -> tuple[int, ...]:
    perm = tuple(int(r) for r in permutation)
    if sorted(perm) != list(range(len(perm))):
        raise InvalidInputError(f"{perm} is not a permutation of 0..{len(perm) - 1}")
    return perm


def lehmer_index(permutation: Sequence[int]) -> int:
    """Rank of ``permutation`` in the factorial number system (identity -> 0)."""
    perm = _check_permutation(permutation)
    d = len(perm)
    rank = 0
    for i, r in enumerate(perm):
        smaller_after = sum(1 for s in perm[i + 1 :] if s < r)
        rank += smaller_after * math.factorial(d - 1 - i)
    return rank


def lehmer_unrank(index: int, dimension: int) -> tuple[int, ...]:
    """Inverse of :func:`lehmer_index`."""
    if dimension < 1:
        raise InvalidInputError(f"dimension must be >= 1, got {dimension}")
    if not 0 <= index < math.factorial(dimension):
        raise InvalidInputError(
            f"index {index} out of range [0, {math.factorial(dimension) - 1}]"
        )
    remaining = list(range(dimension))
    perm = []
    for i in range(dimension):
        f = math.factorial(dimension - 1 - i)
        digit, index = divmod(index, f)
        perm.append(remaining.pop(digit))
    return tuple(perm)


def pattern_of(window: Sequence[float]) -> Pattern:
    """
    Ordinal pattern of a single vector.

    Returns the offsets ``(r_0, ..., r_{D-1})`` with
    ``window[r_0] <= window[r_1] <= ...``; equal values keep their original
    order, so a constant vector maps to the identity.
    """
    values = np.asarray(window, dtype=np.float64).reshape(-1)
    if not 2 <= values.size <= MAX_DIMENSION:
        raise InvalidInputError(
            f"window length must be in [2, {MAX_DIMENSION}], got {values.size}"
        )
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("window contains non-finite values")
    order = np.argsort(values, kind="stable")
    perm = tuple(int(r) for r in order)
    return Pattern(perm, lehmer_index(perm))


def _embed(values: NDArray[np.float64], config: OrdinalConfig) -> NDArray[np.float64]:
    windows = np.lib.stride_tricks.sliding_window_view(values, config.span)
    return windows[:, :: config.delay]


def _rank_rows(perms: NDArray[np.intp]) -> NDArray[np.int64]:
    n, d = perms.shape
    ranks = np.zeros(n, dtype=np.int64)
    for i in range(d - 1):
        smaller_after = (perms[:, i + 1 :] < perms[:, i : i + 1]).sum(axis=1)
        ranks += smaller_after * math.factorial(d - 1 - i)
    return ranks


def ordinal_symbols(
    series: SeriesLike, config: OrdinalConfig
) -> tuple[NDArray[np.int64], NDArray[np.bool_]]:
    """
    Pattern index of every delay vector, and whether that vector contains a tie.

    Both arrays have length ``len(series) - (D-1)*tau`` and are ordered by
    the vector's start position.
    """
    values = _as_values(series)
    if values.size < config.span:
        raise InsufficientDataError(
            f"series of length {values.size} is too short for D={config.dimension}, "
            f"tau={config.delay}; need at least {config.span}",
            required=config.span,
        )
    vectors = _embed(values, config)
    perms = np.argsort(vectors, axis=1, kind="stable")
    ordered = np.take_along_axis(vectors, perms, axis=1)
    ties = (np.diff(ordered, axis=1) == 0).any(axis=1)
    return _rank_rows(perms), ties


@dataclass(frozen=True, eq=False)
class OrdinalDistribution:
    config: OrdinalConfig
    counts: NDArray[np.int64]
    total: int
    probabilities: NDArray[np.float64]
    tie_count: int = 0
    warnings: tuple[str, ...] = field(default=())

    @property
    def low_sample(self) -> bool:
        """Fewer than ten vectors per possible pattern."""
        return self.total < 10 * self.config.n_patterns

    @property
    def tie_rate(self) -> float:
        return self.tie_count / self.total if self.total else 0.0

    @classmethod
    def from_symbols(
        cls,
        symbols: NDArray[np.int64],
        ties: NDArray[np.bool_],
        config: OrdinalConfig,
    ) -> "OrdinalDistribution":
        m = config.n_patterns
        counts = np.bincount(symbols, minlength=m).astype(np.int64)
        total = int(symbols.size)
        probabilities = counts / total
        warnings = []
        if total < m:
            warnings.append(
                f"severely undersampled: {total} vectors for {m} patterns"
            )
        elif total < 10 * m:
            warnings.append(f"low sample: {total} vectors for {m} patterns (< 10*D!)")
        for arr in (counts, probabilities):
            arr.setflags(write=False)
        return cls(config, counts, total, probabilities, int(ties.sum()), tuple(warnings))


def ordinal_distribution(
    series: SeriesLike, config: OrdinalConfig = OrdinalConfig()
) -> OrdinalDistribution:
    """
    Relative frequency of each of the ``D!`` ordinal patterns in ``series``.

    Parameters
    ----------
    series : TimeSeries or array_like
        Observations, at least ``(D-1)*tau + 1`` of them.
    config : OrdinalConfig
        Embedding dimension and delay.

    Returns
    -------
    OrdinalDistribution
        ``counts[k]`` is the number of overlapping delay vectors whose pattern
        has Lehmer index ``k``.

    Raises
    ------
    InsufficientDataError
        If the series is shorter than one delay vector.
    """
    symbols, ties = ordinal_symbols(series, config)
    return OrdinalDistribution.from_symbols(symbols, ties, config)
