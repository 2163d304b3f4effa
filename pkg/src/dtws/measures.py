"""Distance measures between whole series and all-pairs distance matrices.

The headline measure transforms both series into their shapelet-space
matrices and warps over the columns with a squared-Euclidean column cost
(``dtw_plus_s``). Variants swap in a cosine column cost or drop the flat
row; baselines warp the raw or z-normalized scalars or skip warping
entirely.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import dtw as _dtw
from .errors import DTWSError, LengthMismatchError
from .series import TimeSeries, moving_average, resolve_flatness, ssr_matrix, znormalize
from .shapelets import BetaRule, FlatnessParams, ShapeletSet

MEASURE_KINDS = (
    "dtw_plus_s",
    "dtw_plus_s_cosine",
    "dtw_plus_s_corr_only",
    "dtw_raw",
    "dtw_znorm",
    "euclid_znorm",
    "ssr_euclid",
)

_SSR_KINDS = ("dtw_plus_s", "dtw_plus_s_cosine", "dtw_plus_s_corr_only", "ssr_euclid")
_EQUAL_LENGTH_KINDS = ("euclid_znorm", "ssr_euclid")


@dataclass(frozen=True)
class MeasureConfig:
    """Everything needed to compare two series.

    tau is ``None`` for an unconstrained alignment, an int for a band in
    columns, or a float in [0, 1) for a fraction of the raw series length
    (converted per pair as floor(tau * max(T_a, T_b)), never narrower than
    the length difference). smoothing_window=1 means no smoothing.
    """

    kind: str = "dtw_plus_s"
    tau: float | int | None = None
    shapelet_set: ShapeletSet | None = None
    flatness: FlatnessParams | BetaRule = field(default_factory=BetaRule)
    smoothing_window: int = 1
    scalar_cost: str = "squared_euclidean"

    def __post_init__(self):
        if self.kind not in MEASURE_KINDS:
            raise ValueError(f"unknown measure kind {self.kind!r}; expected one of {MEASURE_KINDS}")
        if self.smoothing_window < 1:
            raise ValueError("smoothing_window must be >= 1")
        if self.kind in _SSR_KINDS and self.shapelet_set is None:
            raise ValueError(f"measure {self.kind!r} needs a shapelet set")
        if isinstance(self.tau, float) and not 0.0 <= self.tau < 1.0:
            raise ValueError("fractional tau must lie in [0, 1)")

    @property
    def uses_ssr(self) -> bool:
        return self.kind in _SSR_KINDS


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric all-pairs distances with the series ids they index."""

    values: np.ndarray
    ids: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.ids)


def resolve_tau(tau, len_a: int, len_b: int, n_cols_a: int, n_cols_b: int):
    """Concrete band width in columns for one pair, or None if unbounded.

    A float tau is a fraction of the longer raw series length, floored and
    widened to stay feasible; an int tau is used as-is (and may be
    infeasible, which the alignment will report).
    """
    if tau is None:
        return None
    if isinstance(tau, float):
        cols = math.floor(tau * max(len_a, len_b))
        return max(cols, abs(n_cols_a - n_cols_b))
    return int(tau)


def _concrete_flatness(cfg: MeasureConfig, series) -> FlatnessParams:
    if not cfg.uses_ssr:
        return FlatnessParams()
    if isinstance(cfg.flatness, FlatnessParams):
        return cfg.flatness
    smoothed = [moving_average(s, cfg.smoothing_window) for s in series]
    return resolve_flatness(cfg.flatness, smoothed, cfg.shapelet_set)


def concrete_config(cfg: MeasureConfig, series) -> MeasureConfig:
    """Pin any data-driven flatness rule to parameters estimated on the
    given series, so repeated comparisons share one estimate."""
    if not cfg.uses_ssr or isinstance(cfg.flatness, FlatnessParams):
        return cfg
    return replace(cfg, flatness=_concrete_flatness(cfg, series))


def prepare(series: TimeSeries, cfg: MeasureConfig, flatness: FlatnessParams | None = None):
    """Per-series representation reused across pairwise comparisons.

    Returns (raw_length, item_array) where item_array holds one item per row:
    SSR columns for the shapelet kinds, scalars otherwise.
    """
    s = moving_average(series, cfg.smoothing_window)
    if cfg.uses_ssr:
        if flatness is None:
            flatness = resolve_flatness(cfg.flatness, [s], cfg.shapelet_set)
        mat = ssr_matrix(s, cfg.shapelet_set, flatness).columns
        if cfg.kind == "dtw_plus_s_corr_only":
            mat = mat[1:]
        return len(series), mat.T.copy()
    if cfg.kind in ("dtw_znorm", "euclid_znorm"):
        s = znormalize(s)
    return len(series), s.values


def pair_distance(prep_a, prep_b, cfg: MeasureConfig) -> float:
    """Distance between two prepared representations."""
    (la, items_a), (lb, items_b) = prep_a, prep_b
    if cfg.kind in _EQUAL_LENGTH_KINDS:
        if len(items_a) != len(items_b):
            raise LengthMismatchError(
                f"{cfg.kind} requires equal lengths, got {la} and {lb}"
            )
        diff = np.asarray(items_a, dtype=float) - np.asarray(items_b, dtype=float)
        return float((diff * diff).sum())
    if cfg.kind == "dtw_plus_s_cosine":
        cost = "cosine_distance"
    elif cfg.kind in ("dtw_raw", "dtw_znorm"):
        cost = cfg.scalar_cost
    else:
        cost = "squared_euclidean"
    tau = resolve_tau(cfg.tau, la, lb, len(items_a), len(items_b))
    costs = _dtw.local_cost_matrix(items_a, items_b, cost)
    return _dtw.accumulate(costs, tau)


def dtw_plus_s(a: TimeSeries, b: TimeSeries, cfg: MeasureConfig) -> _dtw.AlignmentResult:
    """Full shapelet-space alignment of two series, with the warping path.

    Both series are smoothed (when configured), transformed to their SSR
    matrices, and aligned column-against-column.
    """
    if not cfg.uses_ssr or cfg.kind == "ssr_euclid":
        raise ValueError(f"dtw_plus_s needs an alignment-based SSR kind, got {cfg.kind!r}")
    flatness = _concrete_flatness(cfg, [a, b])
    _, items_a = prepare(a, cfg, flatness)
    _, items_b = prepare(b, cfg, flatness)
    cost = "cosine_distance" if cfg.kind == "dtw_plus_s_cosine" else "squared_euclidean"
    tau = resolve_tau(cfg.tau, len(a), len(b), len(items_a), len(items_b))
    return _dtw.dtw(items_a, items_b, cost=cost, tau=tau)


def distance(a: TimeSeries, b: TimeSeries, cfg: MeasureConfig) -> float:
    """Distance between two series under the configured measure kind."""
    flatness = _concrete_flatness(cfg, [a, b]) if cfg.uses_ssr else None
    return pair_distance(prepare(a, cfg, flatness), prepare(b, cfg, flatness), cfg)


def distance_matrix(series, cfg: MeasureConfig, workers: int = 1) -> DistanceMatrix:
    """All-pairs distances; symmetric with a zero diagonal.

    Representations (smoothing, z-normalization, SSR) are computed once per
    series; any data-driven flatness rule is resolved on the whole input
    collection. Errors on a pair are re-raised tagged with the two ids.
    """
    series = list(series)
    if len(series) < 2:
        raise ValueError("need at least 2 series")
    flatness = _concrete_flatness(cfg, series) if cfg.uses_ssr else None
    preps = [prepare(s, cfg, flatness) for s in series]
    n = len(series)
    ids = tuple(s.id for s in series)
    out = np.zeros((n, n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]

    def compute(pair):
        i, j = pair
        try:
            return i, j, pair_distance(preps[i], preps[j], cfg)
        except DTWSError as exc:
            raise type(exc)(f"pair ({ids[i]!r}, {ids[j]!r}): {exc}") from exc

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(compute, pairs))
    else:
        results = [compute(p) for p in pairs]
    for i, j, d in results:
        out[i, j] = out[j, i] = d
    return DistanceMatrix(values=out, ids=ids)
