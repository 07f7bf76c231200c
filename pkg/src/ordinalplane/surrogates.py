"""
Reference processes for the complexity-entropy plane.

Fractional Brownian motion is synthesized exactly by circulant embedding of
the fractional Gaussian noise covariance (Davies & Harte, 1987). The shuffle
surrogate keeps the value distribution and destroys temporal order.

Randomness comes from numpy's PCG64 ``Generator``. Realization ``i`` of a
Monte Carlo run uses ``SeedSequence(seed, spawn_key=(i,))``, so realizations
are independent of evaluation order and thread count.
"""

from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from ._tables import read_table
from .errors import EmbeddingError, InvalidInputError
from .ordinal import OrdinalConfig, SeriesLike, TimeSeries
from .windows import WindowPlan, analyze_windows, plan_windows

__all__ = [
    "FbmSpec",
    "BaselineBand",
    "fgn_autocovariance",
    "generate_fgn",
    "generate_fbm",
    "shuffle",
    "realization_rng",
    "baseline_band",
    "baseline_to_csv",
    "read_baseline_csv",
    "BASELINE_HEADER",
]

BASELINE_HEADER = ("hurst", "realizations", "mean_h", "std_h", "mean_c", "std_c")

EIGEN_TOL = 1e-10


@dataclass(frozen=True)
class FbmSpec:
    hurst: float
    length: int
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.hurst < 1.0:
            raise InvalidInputError(f"hurst must be in (0, 1), got {self.hurst}")
        if self.length < 2:
            raise InvalidInputError(f"length must be >= 2, got {self.length}")
        if not 0 <= self.seed < 2**64:
            raise InvalidInputError("seed must be an unsigned 64-bit integer")


def fgn_autocovariance(k, hurst: float):
    """``0.5 (|k+1|^2H - 2|k|^2H + |k-1|^2H)`` for unit-variance fGn."""
    k = np.abs(np.asarray(k, dtype=np.float64))
    two_h = 2.0 * hurst
    return 0.5 * (np.abs(k + 1) ** two_h - 2.0 * k**two_h + np.abs(k - 1) ** two_h)


def generate_fgn(n: int, hurst: float, rng: np.random.Generator) -> NDArray[np.float64]:
    """``n`` samples of unit-variance fractional Gaussian noise."""
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    if n == 1:
        return rng.standard_normal(1)
    # First row of the 2n x 2n circulant: gamma(0..n) followed by gamma(n-1..1).
    gamma = fgn_autocovariance(np.arange(n + 1), hurst)
    row = np.concatenate([gamma, gamma[-2:0:-1]])
    eigenvalues = np.fft.fft(row).real
    if eigenvalues.min() < -EIGEN_TOL * eigenvalues.max():
        raise EmbeddingError(
            f"negative circulant eigenvalue {eigenvalues.min():.3e} (H={hurst}, n={n})"
        )
    size = row.size
    scale = np.sqrt(np.clip(eigenvalues, 0.0, None) / size)
    z = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return np.fft.fft(scale * z).real[:n]


def generate_fbm(spec: FbmSpec) -> TimeSeries:
    """Fractional Brownian motion path of ``spec.length`` points starting at 0."""
    rng = np.random.default_rng(spec.seed)
    increments = generate_fgn(spec.length - 1, spec.hurst, rng)
    return TimeSeries(np.concatenate([[0.0], np.cumsum(increments)]))


def shuffle(series: SeriesLike, seed: int = 0) -> TimeSeries:
    """Uniformly random permutation of the values; dates stay in place."""
    if isinstance(series, TimeSeries):
        values, dates = series.values, series.dates
    else:
        values, dates = np.asarray(series, dtype=np.float64).reshape(-1), None
    rng = np.random.default_rng(seed)
    return TimeSeries(rng.permutation(values), dates)


def realization_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


@dataclass(frozen=True)
class BaselineBand:
    hurst: float
    realizations: int
    mean_h: float
    std_h: float
    mean_c: float
    std_c: float


def _realization_points(
    hurst: float, length: int, plan: WindowPlan, config: OrdinalConfig, seed: int, index: int
) -> NDArray[np.float64]:
    rng = realization_rng(seed, index)
    path = np.concatenate([[0.0], np.cumsum(generate_fgn(length - 1, hurst, rng))])
    results = analyze_windows(path, plan, config)
    return np.array([(r.point.h, r.point.c) for r in results])


def baseline_band(
    hurst: float,
    realizations: int = 100,
    length: int = 8568,
    plan: WindowPlan | None = None,
    config: OrdinalConfig = OrdinalConfig(),
    seed: int = 0,
    workers: int = 1,
) -> BaselineBand:
    """
    Mean and standard deviation of (H, C) for fBm with the given Hurst exponent.

    Statistics pool every window of every realization. The default plan is
    300-point windows advanced by 20.
    """
    FbmSpec(hurst, length, seed)
    if realizations < 1:
        raise InvalidInputError(f"realizations must be >= 1, got {realizations}")
    if plan is None:
        plan = plan_windows(length, 300, 20)
    if plan.series_length != length:
        raise InvalidInputError(
            f"plan series length {plan.series_length} != fBm length {length}"
        )

    def run(i: int) -> NDArray[np.float64]:
        return _realization_points(hurst, length, plan, config, seed, i)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            # map() yields in submission order, so pooling is order-stable.
            chunks = list(pool.map(run, range(realizations)))
    else:
        chunks = [run(i) for i in range(realizations)]
    points = np.concatenate(chunks)
    mean = points.mean(axis=0)
    std = points.std(axis=0)
    return BaselineBand(
        float(hurst), realizations, float(mean[0]), float(std[0]), float(mean[1]), float(std[1])
    )


def baseline_to_csv(bands: Sequence[BaselineBand]) -> str:
    buf = io.StringIO()
    buf.write(",".join(BASELINE_HEADER) + "\n")
    for b in bands:
        buf.write(
            f"{b.hurst!r},{b.realizations},{b.mean_h:.17g},{b.std_h:.17g},"
            f"{b.mean_c:.17g},{b.std_c:.17g}\n"
        )
    return buf.getvalue()


def read_baseline_csv(text: str) -> list[BaselineBand]:
    converters = {name: float for name in BASELINE_HEADER}
    converters["realizations"] = int
    return [BaselineBand(**row) for row in read_table(text, converters, "baseline")]
