"""
Information quantifiers on ordinal-pattern distributions.

All logarithms are natural. Sums go through :func:`math.fsum`, which makes
the scalar quantifiers independent of the order of the probability vector.
Zero probabilities are skipped (``0 ln 0 = 0``), never regularized.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ._tables import read_table
from .errors import InvalidDistributionError, InvalidInputError
from .ordinal import OrdinalDistribution

__all__ = [
    "QuantifierPoint",
    "ComplexityEnvelope",
    "shannon_entropy",
    "normalized_entropy",
    "jensen_shannon_divergence",
    "disequilibrium",
    "disequilibrium_normalizer",
    "statistical_complexity",
    "quantify",
    "complexity_envelope",
    "read_envelope_csv",
]

NORMALIZATION_TOL = 1e-9

DistributionLike = Union[OrdinalDistribution, ArrayLike]


def _probabilities(p: DistributionLike) -> NDArray[np.float64]:
    if isinstance(p, OrdinalDistribution):
        return p.probabilities
    arr = np.asarray(p, dtype=np.float64).reshape(-1)
    if arr.size < 1:
        raise InvalidDistributionError("empty probability vector")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0) or np.any(arr > 1):
        raise InvalidDistributionError("probabilities must lie in [0, 1]")
    if abs(math.fsum(arr) - 1.0) > NORMALIZATION_TOL:
        raise InvalidDistributionError(
            f"probabilities sum to {math.fsum(arr)!r}, expected 1"
        )
    return arr


def _entropy(p: NDArray[np.float64]) -> float:
    nz = p[p > 0]
    return 0.0 - math.fsum(nz * np.log(nz))  # 0.0 - x keeps the delta case at +0.0


def shannon_entropy(p: DistributionLike) -> float:
    """``-sum p_i ln p_i`` in nats."""
    return _entropy(_probabilities(p))


def normalized_entropy(p: DistributionLike) -> float:
    """Shannon entropy divided by ``ln M``; in ``[0, 1]``."""
    arr = _probabilities(p)
    if arr.size == 1:
        return 0.0
    return min(1.0, _entropy(arr) / math.log(arr.size))


def _js(p: NDArray[np.float64], q: NDArray[np.float64]) -> float:
    # (S_p + S_q) is commutative, so JS(p, q) == JS(q, p) bit for bit.
    value = _entropy((p + q) / 2) - (_entropy(p) + _entropy(q)) / 2
    return max(0.0, value)


def jensen_shannon_divergence(p: DistributionLike, q: DistributionLike) -> float:
    """Jensen-Shannon divergence in nats; symmetric, in ``[0, ln 2]``."""
    a, b = _probabilities(p), _probabilities(q)
    if a.size != b.size:
        raise InvalidDistributionError(
            f"length mismatch: {a.size} vs {b.size}"
        )
    return _js(a, b)


@lru_cache(maxsize=None)
def _max_js(m: int) -> float:
    delta = np.zeros(m)
    delta[0] = 1.0
    return _js(delta, np.full(m, 1.0 / m))


def disequilibrium_normalizer(m: int) -> float:
    """``Q_0 = 1 / JS(delta, uniform)`` for ``m`` states."""
    if m < 2:
        raise InvalidInputError(f"need at least 2 states, got {m}")
    return 1.0 / _max_js(m)


def _diseq(p: NDArray[np.float64]) -> float:
    m = p.size
    if m < 2:
        return 0.0
    # Divide rather than multiply by Q_0 so that the delta case is exactly 1.
    return min(1.0, _js(p, np.full(m, 1.0 / m)) / _max_js(m))


def disequilibrium(p: DistributionLike) -> float:
    """Normalized Jensen-Shannon divergence from the uniform distribution."""
    return _diseq(_probabilities(p))


def statistical_complexity(p: DistributionLike) -> float:
    """Disequilibrium times normalized entropy."""
    arr = _probabilities(p)
    return _diseq(arr) * normalized_entropy(arr)


@dataclass(frozen=True)
class QuantifierPoint:
    entropy_raw: float
    entropy_normalized: float
    complexity: float

    @property
    def h(self) -> float:
        return self.entropy_normalized

    @property
    def c(self) -> float:
        return self.complexity

    def distance_to_random(self) -> float:
        """Euclidean distance to the ``(H, C) = (1, 0)`` corner."""
        return math.hypot(1.0 - self.entropy_normalized, self.complexity)


def quantify(p: DistributionLike) -> QuantifierPoint:
    """Raw entropy, normalized entropy and complexity of one distribution."""
    arr = _probabilities(p)
    s = _entropy(arr)
    h = min(1.0, s / math.log(arr.size)) if arr.size > 1 else 0.0
    return QuantifierPoint(s, h, _diseq(arr) * h)


# ---------------------------------------------------------------------------
# Envelope of the complexity-entropy plane
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ComplexityEnvelope:
    """
    Lower and upper complexity bounds sampled on an increasing ``h`` grid.

    ``curves`` optionally holds the dense family samples ``(h_lo, c_lo, h_hi,
    c_hi)`` the grid was resampled from. The upper bound has corners at the
    uniform distributions on ``k`` states that a uniform grid straddles, so
    :meth:`bounds_at` interpolates on the dense samples when available.
    """

    m: int
    h: NDArray[np.float64]
    c_min: NDArray[np.float64]
    c_max: NDArray[np.float64]
    curves: tuple[NDArray[np.float64], ...] | None = field(default=None, repr=False)

    @property
    def samples(self) -> list[tuple[float, float, float]]:
        return list(zip(self.h.tolist(), self.c_min.tolist(), self.c_max.tolist()))

    def bounds_at(self, h: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Linearly interpolated ``(c_min, c_max)`` at entropy ``h``."""
        h = np.asarray(h, dtype=np.float64)
        if self.curves is None:
            return np.interp(h, self.h, self.c_min), np.interp(h, self.h, self.c_max)
        h_lo, c_lo, h_hi, c_hi = self.curves
        return np.interp(h, h_lo, c_lo), np.interp(h, h_hi, c_hi)

    def contains(self, h: ArrayLike, c: ArrayLike, tol: float = 1e-9) -> NDArray[np.bool_]:
        lo, hi = self.bounds_at(h)
        c = np.asarray(c, dtype=np.float64)
        return (c >= lo - tol) & (c <= hi + tol)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("h,c_min,c_max\n")
        for h, lo, hi in zip(self.h, self.c_min, self.c_max):
            buf.write(f"{h:.17g},{lo:.17g},{hi:.17g}\n")
        return buf.getvalue()


def _plogp(v: NDArray[np.float64]) -> NDArray[np.float64]:
    out = np.zeros_like(v)
    pos = v > 0
    out[pos] = v[pos] * np.log(v[pos])
    return out


def _family_points(
    values: list[NDArray[np.float64]], mults: list[int], m: int
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """(H, C) for distributions given as distinct values with multiplicities.

    ``values[j]`` is an array over the sweep parameter; ``mults[j]`` states
    how many of the ``m`` components take that value.
    """
    uniform = 1.0 / m
    s_p = -sum(k * _plogp(v) for v, k in zip(values, mults) if k)
    s_mid = -sum(k * _plogp((v + uniform) / 2) for v, k in zip(values, mults) if k)
    s_e = math.log(m)
    js = np.maximum(0.0, s_mid - (s_p + s_e) / 2)
    h = np.clip(s_p / s_e, 0.0, 1.0)
    return h, np.minimum(1.0, js / _max_js(m)) * h


def _uniform_point(k: int, m: int) -> tuple[float, float]:
    """(H, C) of the uniform distribution on ``k`` of ``m`` states."""
    if k == m:
        return 1.0, 0.0
    h, c = _family_points([np.array([1.0 / k]), np.array([0.0])], [k, m - k], m)
    return float(h[0]), float(c[0])


def _sweep(a: float, b: float, n: int) -> NDArray[np.float64]:
    # Cosine spacing concentrates samples at both ends, where H(p) is steep.
    t = np.linspace(0.0, 1.0, n)
    return a + (b - a) * (1.0 - np.cos(np.pi * t)) / 2.0


def complexity_envelope(
    m: int, samples_per_family: int = 20_000, grid_size: int = 1000
) -> ComplexityEnvelope:
    """
    Minimum and maximum statistical complexity attainable at each entropy.

    The lower curve is traced by ``{p, (1-p)/(m-1), ...}`` for
    ``p in [1/m, 1]``. The upper curve is the union of the families with
    ``n`` zero components, one component ``p in [0, 1/(m-n)]`` and the rest
    equal, for ``n = 0 .. m-2``; consecutive families meet at the uniform
    distributions on ``k`` states. Each family is resampled onto a uniform
    ``h`` grid by linear interpolation and the pointwise maximum is kept.

    The upper families are concave in ``h``, so chords undershoot them; at
    the default density the gap stays near 1e-10 for ``m = 24``.
    """
    if m < 2:
        raise InvalidInputError(f"need at least 2 states, got {m}")
    if samples_per_family < 100:
        raise InvalidInputError(
            f"samples_per_family must be >= 100, got {samples_per_family}"
        )
    if grid_size < 2:
        raise InvalidInputError(f"grid_size must be >= 2, got {grid_size}")
    grid = np.linspace(0.0, 1.0, grid_size)

    p = _sweep(1.0 / m, 1.0, samples_per_family)
    h, c = _family_points([p, (1.0 - p) / (m - 1)], [1, m - 1], m)
    h[0], c[0] = _uniform_point(m, m)
    h[-1], c[-1] = 0.0, 0.0
    order = np.argsort(h, kind="stable")
    lower_h, lower_c = h[order], c[order]
    c_min = np.interp(grid, lower_h, lower_c)

    c_max = np.full(grid_size, -np.inf)
    upper_h, upper_c = [], []
    # n = m-2 covers the lowest entropies; families only touch at their ends.
    for n in range(m - 2, -1, -1):
        rest = m - n - 1
        p = _sweep(0.0, 1.0 / (m - n), samples_per_family)
        h, c = _family_points(
            [np.zeros_like(p), p, (1.0 - p) / rest], [n, 1, rest], m
        )
        h[0], c[0] = _uniform_point(rest, m)
        h[-1], c[-1] = _uniform_point(rest + 1, m)
        order = np.argsort(h, kind="stable")
        h, c = h[order], c[order]
        inside = (grid >= h[0]) & (grid <= h[-1])
        c_max[inside] = np.maximum(c_max[inside], np.interp(grid[inside], h, c))
        start = 1 if upper_h else 0
        upper_h.append(h[start:])
        upper_c.append(c[start:])

    # For m == 2 both curves are the same family; remove rounding crossings.
    c_min = np.minimum(c_min, c_max)
    c_min[0] = c_max[0] = 0.0
    c_min[-1] = c_max[-1] = 0.0
    curves = (lower_h, lower_c, np.concatenate(upper_h), np.concatenate(upper_c))
    return ComplexityEnvelope(m, grid, c_min, c_max, curves)


def read_envelope_csv(text: str) -> ComplexityEnvelope:
    """Parse the ``h,c_min,c_max`` export; ``m`` is not stored and is set to 0."""
    rows = read_table(text, {"h": float, "c_min": float, "c_max": float}, "envelope")
    h, lo, hi = (np.array([r[k] for r in rows]) for k in ("h", "c_min", "c_max"))
    return ComplexityEnvelope(0, h, lo, hi)
