"""1-NN classification, labeled-dataset loading, and leave-one-out selection
of the warping window and smoothing window."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace

import numpy as np

from .errors import EmptyFileError, EmptyTrainingSetError, ParseError
from .measures import MeasureConfig, pair_distance, prepare
from .series import TimeSeries, moving_average, resolve_flatness
from .shapelets import BetaRule, FlatnessParams


@dataclass(frozen=True)
class LabeledDataset:
    """Class-labeled series; labels are opaque text compared verbatim."""

    instances: tuple[tuple[str, TimeSeries], ...]
    name: str = ""

    def __len__(self):
        return len(self.instances)

    @property
    def labels(self) -> list[str]:
        return [lab for lab, _ in self.instances]

    @property
    def series(self) -> list[TimeSeries]:
        return [s for _, s in self.instances]


@dataclass(frozen=True)
class HyperGrid:
    """Candidate warping fractions and smoothing fractions of the series length."""

    tau_fractions: tuple[float, ...] = (0.0, 0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07)
    smooth_fractions: tuple[float, ...] = (0.0, 0.1, 0.2, 0.4)

    def __post_init__(self):
        if not self.tau_fractions or not self.smooth_fractions:
            raise ValueError("grid axes must be non-empty")
        if any(f < 0 for f in self.tau_fractions + self.smooth_fractions):
            raise ValueError("grid fractions must be >= 0")


@dataclass(frozen=True)
class LoocvResult:
    config: MeasureConfig
    grid_errors: tuple[dict, ...]  # one {"tau_fraction", "smooth_fraction", "loo_error"} per cell


def smooth_window_from_fraction(fraction: float, length: int) -> int:
    """Nearest-integer window for a fraction of the series length, at least 1."""
    return max(1, int(math.floor(fraction * length + 0.5)))


def load_ucr(path) -> LabeledDataset:
    """Parse a labeled time-series file: one instance per row, class label in
    the first field, comma- or tab-delimited (auto-detected). NaN cells and
    non-numeric values are rejected with their position."""
    with open(path) as fh:
        raw_lines = fh.read().splitlines()
    lines = [(i + 1, ln) for i, ln in enumerate(raw_lines) if ln.strip()]
    if not lines:
        raise EmptyFileError(f"{path}: no instances")
    delim = "\t" if "\t" in lines[0][1] else ","
    instances = []
    for row, ln in lines:
        fields = ln.split(delim)
        if len(fields) < 2:
            raise ParseError("instance needs a label and at least one value", row=row)
        label = fields[0].strip()
        values = np.empty(len(fields) - 1)
        for col, tok in enumerate(fields[1:], start=2):
            try:
                v = float(tok)
            except ValueError:
                raise ParseError(f"bad number {tok!r}", row=row, column=col) from None
            if not math.isfinite(v):
                raise ParseError(f"non-finite value {tok!r}", row=row, column=col)
            values[col - 2] = v
        instances.append((label, TimeSeries(id=f"r{row}", values=values)))
    name = os.path.splitext(os.path.basename(str(path)))[0]
    return LabeledDataset(instances=tuple(instances), name=name)


def _resolved_flatness(cfg: MeasureConfig, train_series) -> FlatnessParams | None:
    """Estimate data-driven flatness on the (smoothed) training series only."""
    if not cfg.uses_ssr:
        return None
    smoothed = [moving_average(s, cfg.smoothing_window) for s in train_series]
    return resolve_flatness(cfg.flatness, smoothed, cfg.shapelet_set)


def one_nn(train: LabeledDataset, test: LabeledDataset, cfg: MeasureConfig):
    """Label each test instance by its nearest training instance.

    Ties go to the lowest training index. Returns (predictions, error) with
    error the misclassified fraction. Any data-driven flatness rule is
    resolved on the training series alone.
    """
    if len(train) == 0:
        raise EmptyTrainingSetError("empty training set")
    flatness = _resolved_flatness(cfg, train.series)
    train_prep = [prepare(s, cfg, flatness) for s in train.series]
    test_prep = [prepare(s, cfg, flatness) for s in test.series]
    train_labels = train.labels
    predictions = []
    wrong = 0
    for (true_label, _), tp in zip(test.instances, test_prep):
        best = math.inf
        best_idx = 0
        for j, trp in enumerate(train_prep):
            d = pair_distance(tp, trp, cfg)
            if d < best:
                best, best_idx = d, j
        pred = train_labels[best_idx]
        predictions.append(pred)
        wrong += pred != true_label
    return predictions, wrong / max(1, len(test))


def loocv_select(train: LabeledDataset, grid: HyperGrid, base_cfg: MeasureConfig) -> LoocvResult:
    """Leave-one-out 1-NN error over the (smoothing x warping) grid.

    Returns the config with the lowest error; ties prefer less smoothing,
    then a narrower warping window. Series representations are built once
    per smoothing level and pairwise cost work is shared across the warping
    candidates.
    """
    n = len(train)
    if n < 2:
        raise EmptyTrainingSetError("leave-one-out needs at least 2 instances")
    t_ref = max(len(s) for s in train.series)
    labels = train.labels
    cells = []
    for sf in sorted(grid.smooth_fractions):
        window = smooth_window_from_fraction(sf, t_ref)
        cfg_s = replace(base_cfg, smoothing_window=window)
        flatness = _resolved_flatness(cfg_s, train.series)
        preps = [prepare(s, cfg_s, flatness) for s in train.series]
        for tf in sorted(grid.tau_fractions):
            cfg_cell = replace(cfg_s, tau=float(tf))
            wrong = 0
            dists = np.zeros((n, n))
            for i in range(n):
                for j in range(i + 1, n):
                    dists[i, j] = dists[j, i] = pair_distance(preps[i], preps[j], cfg_cell)
            for i in range(n):
                order = [j for j in range(n) if j != i]
                best_j = min(order, key=lambda j: (dists[i, j], j))
                wrong += labels[best_j] != labels[i]
            cells.append(
                {"smooth_fraction": sf, "tau_fraction": tf, "smoothing_window": window,
                 "loo_error": wrong / n}
            )
    best = min(cells, key=lambda c: (c["loo_error"], c["smooth_fraction"], c["tau_fraction"]))
    chosen = replace(
        base_cfg,
        smoothing_window=best["smoothing_window"],
        tau=float(best["tau_fraction"]),
    )
    return LoocvResult(config=chosen, grid_errors=tuple(cells))
