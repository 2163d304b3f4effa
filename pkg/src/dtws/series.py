"""Whole-series preprocessing and the sliding-window shapelet-space matrix."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import EmptyTrainingSetError, SeriesTooShortError
from .shapelets import BetaRule, FlatnessParams, INFINITE_BETA, ShapeletSet

__all__ = [
    "TimeSeries",
    "SSRMatrix",
    "moving_average",
    "znormalize",
    "ssr_matrix",
    "estimate_beta",
    "resolve_flatness",
]


@dataclass(frozen=True)
class TimeSeries:
    """A finite real-valued series; time_origin is the index of the first sample."""

    id: str
    values: np.ndarray
    time_origin: int = 1

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError(f"series {self.id!r} must be a non-empty vector")
        if not np.all(np.isfinite(vals)):
            raise ValueError(f"series {self.id!r} contains non-finite values")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class SSRMatrix:
    """d x (T-w+1) matrix whose column t is the shapelet-space vector of the
    window starting at sample t."""

    columns: np.ndarray
    window: int
    source_id: str

    @property
    def n_columns(self) -> int:
        return self.columns.shape[1]


def moving_average(series: TimeSeries, window: int) -> TimeSeries:
    """Centered moving average with the window clipped at the series bounds.

    Length is preserved; window=1 returns the series unchanged. For even
    windows the extra sample sits on the right of the center.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    if window == 1:
        return series
    x = series.values
    T = x.size
    left = (window - 1) // 2
    right = window // 2
    csum = np.concatenate([[0.0], np.cumsum(x)])
    lo = np.maximum(0, np.arange(T) - left)
    hi = np.minimum(T, np.arange(T) + right + 1)
    out = (csum[hi] - csum[lo]) / (hi - lo)
    return replace(series, values=out)


def znormalize(series: TimeSeries) -> TimeSeries:
    """Zero mean, unit population variance; a constant series maps to zeros."""
    x = series.values
    std = x.std()
    centered = x - x.mean()
    out = np.zeros_like(x) if std == 0 else centered / std
    return replace(series, values=out)


def window_slopes(values: np.ndarray, w: int) -> np.ndarray:
    """Mean absolute slope of every length-w window, as a vector of T-w+1 values."""
    d = np.abs(np.diff(values))
    csum = np.concatenate([[0.0], np.cumsum(d)])
    return (csum[w - 1:] - csum[: values.size - w + 1]) / (w - 1)


def _phi_of_slopes(m: np.ndarray, params: FlatnessParams) -> np.ndarray:
    if params.is_infinite:
        return (m <= params.m0).astype(float)
    return np.where(m <= params.m0, 1.0, np.exp(-params.beta * np.maximum(m - params.m0, 0.0)))


def ssr_matrix(series: TimeSeries, shapelet_set: ShapeletSet, params: FlatnessParams) -> SSRMatrix:
    """Slide a w-length window over the series and transform each window.

    Column t equals ``ssr_vector(values[t:t+w])``; the flat dimension is row 0.
    """
    x = series.values
    w = shapelet_set.w
    if x.size < w:
        raise SeriesTooShortError(f"series {series.id!r} has {x.size} samples, window is {w}")
    windows = np.lib.stride_tricks.sliding_window_view(x, w)  # (T-w+1, w)
    phi = _phi_of_slopes(window_slopes(x, w), params)
    centered = windows - windows.mean(axis=1, keepdims=True)
    norms = np.linalg.norm(centered, axis=1)
    corr = np.zeros((shapelet_set.d - 1, windows.shape[0]))
    ok = norms > 1e-12
    if ok.any():
        corr[:, ok] = shapelet_set.unit_rows @ (centered[ok].T / norms[ok])
        np.clip(corr, -1.0, 1.0, out=corr)
    cols = np.empty((shapelet_set.d, windows.shape[0]))
    cols[0] = 2.0 * phi - 1.0
    cols[1:] = (1.0 - phi) * corr
    return SSRMatrix(columns=cols, window=w, source_id=series.id)


def estimate_beta(train, shapelet_set: ShapeletSet, p_floor: float = 0.1) -> FlatnessParams:
    """Flatness decay rate from data: the median over series of the maximum
    windowed mean-absolute-slope gets flatness p_floor. A slope-free training
    set yields the infinite-beta params (flat everywhere)."""
    train = list(train)
    if not train:
        raise EmptyTrainingSetError("no training series")
    w = shapelet_set.w
    maxima = []
    for s in train:
        if len(s) < w:
            raise SeriesTooShortError(f"series {s.id!r} has {len(s)} samples, window is {w}")
        maxima.append(window_slopes(s.values, w).max())
    theta = float(np.median(maxima))
    if theta == 0.0:
        return FlatnessParams(m0=0.0, beta=INFINITE_BETA)
    return FlatnessParams(m0=0.0, beta=-np.log(p_floor) / theta)


def resolve_flatness(flatness, series, shapelet_set: ShapeletSet) -> FlatnessParams:
    """Turn a FlatnessParams or BetaRule into concrete parameters, estimating
    from the given series when a rule is supplied."""
    if isinstance(flatness, FlatnessParams):
        return flatness
    if isinstance(flatness, BetaRule):
        est = estimate_beta(series, shapelet_set, p_floor=flatness.p_floor)
        return est if flatness.m0 == 0.0 else FlatnessParams(m0=flatness.m0, beta=est.beta)
    raise TypeError(f"expected FlatnessParams or BetaRule, got {type(flatness).__name__}")
