"""Deterministic synthetic series generators.

These back the `synth` CLI subcommand and the test suite: trend archetypes
with timing and scale jitter, offset two-peak pairs, and spike-vs-monotone
classification sets. Everything is a pure function of its seed.
"""

from __future__ import annotations

import numpy as np

from .classify import LabeledDataset
from .series import TimeSeries

ARCHETYPE_NAMES = ("rise", "peak", "double_peak", "late_surge")


def _gauss(t, mu, sigma):
    return np.exp(-0.5 * ((t - mu) / sigma) ** 2)


def archetype_values(name: str, T: int, shift: float) -> np.ndarray:
    """One noiseless trend archetype on 0..T-1, time-shifted by `shift`."""
    t = np.arange(T, dtype=float)
    if name == "rise":
        return 1.0 / (1.0 + np.exp(-(t - (T / 2 + shift)) / 4.0))
    if name == "peak":
        return _gauss(t, T / 2 + shift, 4.0)
    if name == "double_peak":
        return _gauss(t, 0.3 * T + shift, 3.5) + 0.9 * _gauss(t, 0.7 * T + shift, 3.5)
    if name == "late_surge":
        return np.exp((t - (T + shift)) / 6.0)
    raise ValueError(f"unknown archetype {name!r}; expected one of {ARCHETYPE_NAMES}")


def archetype_set(T: int = 60, per_class: int = 10, max_shift: int = 5,
                  scale_range=(0.5, 2.0), seed: int = 0, base_scale: float = 100.0,
                  archetypes=ARCHETYPE_NAMES):
    """Series drawn from trend archetypes with random shifts and scale jitter.

    Returns (series, truth) where truth[i] is the archetype index of series i.
    """
    rng = np.random.default_rng(seed)
    series, truth = [], []
    for k, name in enumerate(archetypes):
        for idx in range(per_class):
            shift = float(rng.integers(-max_shift, max_shift + 1))
            scale = float(rng.uniform(*scale_range))
            values = base_scale * scale * archetype_values(name, T, shift)
            series.append(TimeSeries(id=f"{name}_{idx}", values=values))
            truth.append(k)
    return series, np.array(truth)


def two_peak_pair(T: int = 70, first_peak: float = 20.0, second_peak: float = 45.0,
                  heights=(100.0, 120.0), offset: int = 6, sigma: float = 3.0):
    """Two series with the same two peaks, the second shifted in time.

    The pointwise mean of such a pair flattens both peaks; an alignment
    ensemble should restore their heights at the midpoint timings.
    """
    t = np.arange(T, dtype=float)
    h1, h2 = heights

    def curve(shift):
        return h1 * _gauss(t, first_peak + shift, sigma) + h2 * _gauss(t, second_peak + shift, sigma)

    return [TimeSeries(id="lead", values=curve(0.0)),
            TimeSeries(id="lagged", values=curve(float(offset)))]


def spike_dataset(per_class: int = 12, T: int = 40, seed: int = 3, noise: float = 0.0,
                  spike_sigma: float = 2.0, spike_amp: float = 0.35, name: str = "spike"):
    """Binary set: rising ramps, one class carrying a mid-series spike.

    Scales vary fivefold within both classes so that raw-scale comparisons
    are dominated by amplitude rather than by the spike.
    """
    rng = np.random.default_rng(seed)
    t = np.arange(T, dtype=float)
    instances = []
    for cls in (0, 1):
        for idx in range(per_class):
            alpha = rng.uniform(0.5, 2.0) * 100.0
            values = alpha * (t / T)
            if cls == 0:
                values = values + spike_amp * alpha * _gauss(t, T / 2, spike_sigma)
            if noise:
                values = values + noise * alpha * rng.standard_normal(T)
            instances.append((str(cls), TimeSeries(id=f"c{cls}_{idx}", values=values)))
    return LabeledDataset(instances=tuple(instances), name=name)


def shifted_prototype_dataset(per_class: int = 10, T: int = 60, seed: int = 9,
                              max_shift: int = 4, name: str = "shifted"):
    """Binary set whose classes differ only in which of two bumps dominates;
    every instance is randomly time-shifted."""
    rng = np.random.default_rng(seed)
    t = np.arange(T, dtype=float)

    def proto(cls, shift):
        a, b = (1.0, 0.6) if cls == 0 else (0.6, 1.0)
        return 100.0 * (a * _gauss(t, 20 + shift, 4.0) + b * _gauss(t, 42 + shift, 4.0))

    instances = []
    for cls in (0, 1):
        for idx in range(per_class):
            shift = float(rng.integers(-max_shift, max_shift + 1))
            instances.append((str(cls), TimeSeries(id=f"c{cls}_{idx}", values=proto(cls, shift))))
    return LabeledDataset(instances=tuple(instances), name=name)
