"""Trajectory ensembles that average event timing as well as scale.

The pointwise mean dilutes features that the inputs place at different
times: two equal peaks six steps apart average into one low, wide mound.
The alignment ensemble instead treats each alignment step against a base
series as a latent event, averages (time, value) per event across series,
and interpolates the averaged points back onto the integer time grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import groupby

import numpy as np

from .errors import BadBaseIndexError, LengthMismatchError
from .measures import MeasureConfig, concrete_config, dtw_plus_s
from .series import TimeSeries

ANCHORS = ("start", "center")


@dataclass(frozen=True)
class EnsemblePoint:
    """Averaged event: mean time (fractional index units), mean value, and
    the base alignment step it came from."""

    t_bar: float
    a_bar: float
    alignment_id: int


@dataclass(frozen=True)
class EnsembleResult:
    points: tuple[EnsemblePoint, ...]
    interpolated: TimeSeries
    base_id: str

    @property
    def peak(self) -> float:
        return float(self.interpolated.values.max())


def mean_ensemble(series) -> TimeSeries:
    """Pointwise arithmetic mean of equal-length series."""
    series = list(series)
    lengths = {len(s) for s in series}
    if len(lengths) != 1:
        raise LengthMismatchError(f"mean ensemble needs equal lengths, got {sorted(lengths)}")
    stacked = np.vstack([s.values for s in series])
    return TimeSeries(id="mean_ensemble", values=stacked.mean(axis=0),
                      time_origin=series[0].time_origin)


def _anchor_offset(anchor: str, w: int) -> float:
    if anchor == "start":
        return 0.0
    if anchor == "center":
        return (w - 1) / 2.0
    raise ValueError(f"unknown anchor {anchor!r}; expected one of {ANCHORS}")


def dtw_s_ensemble(series, base_index: int, cfg: MeasureConfig,
                   anchor: str = "start") -> EnsembleResult:
    """Alignment ensemble against one base series.

    Every other series is aligned to the base in shapelet space. For each
    base column c, a series' aligned columns are mapped to times (column
    start plus the anchor offset) and averaged, and its values at those
    times (linearly interpolated) are averaged, giving one (time, value)
    contribution per series per event; the base contributes its own column
    time and value. Event means are interpolated onto the base's integer
    grid, extending flat beyond the first and last event.
    """
    series = list(series)
    if len(series) < 2:
        raise ValueError("need at least 2 series")
    if not 0 <= base_index < len(series):
        raise BadBaseIndexError(f"base index {base_index} outside 0..{len(series) - 1}")
    base = series[base_index]
    cfg = concrete_config(cfg, series)  # one flatness estimate for every alignment
    w = cfg.shapelet_set.w
    offset = _anchor_offset(anchor, w)

    n_events = len(base) - w + 1
    n = len(series)
    t_contrib = np.zeros((n, n_events))
    a_contrib = np.zeros((n, n_events))

    for idx, s in enumerate(series):
        if idx == base_index:
            aligned = {c: [c] for c in range(n_events)}
        else:
            result = dtw_plus_s(base, s, cfg)
            aligned = {}
            for c, j in result.path:
                aligned.setdefault(c - 1, []).append(j - 1)
        grid_s = s.time_origin + np.arange(len(s), dtype=float)
        for c in range(n_events):
            times = np.array(aligned[c], dtype=float) + s.time_origin + offset
            t_contrib[idx, c] = times.mean()
            a_contrib[idx, c] = np.interp(times, grid_s, s.values).mean()

    # exactly-rounded sums keep the result independent of the input order
    t_bar = np.array([math.fsum(t_contrib[:, c]) / n for c in range(n_events)])
    a_bar = np.array([math.fsum(a_contrib[:, c]) / n for c in range(n_events)])
    points = tuple(
        EnsemblePoint(t_bar=float(t), a_bar=float(a), alignment_id=c)
        for c, (t, a) in enumerate(zip(t_bar, a_bar))
    )
    ordered = sorted(points, key=lambda p: (p.t_bar, p.alignment_id))

    # collapse duplicate times before interpolating
    xs, ys = [], []
    for t, group in groupby(ordered, key=lambda p: p.t_bar):
        xs.append(t)
        ys.append(float(np.mean([p.a_bar for p in group])))
    grid = base.time_origin + np.arange(len(base), dtype=float)
    interpolated = np.interp(grid, xs, ys)
    return EnsembleResult(
        points=tuple(ordered),
        interpolated=TimeSeries(id=f"ensemble_base_{base.id}", values=interpolated,
                                time_origin=base.time_origin),
        base_id=base.id,
    )


def ensemble_all_bases(series, cfg: MeasureConfig, anchor: str = "start") -> list[EnsembleResult]:
    """One alignment ensemble per choice of base, in input order."""
    series = list(series)
    return [dtw_s_ensemble(series, b, cfg, anchor=anchor) for b in range(len(series))]
