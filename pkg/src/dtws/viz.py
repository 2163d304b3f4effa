"""Matplotlib figure rendering for the CLI report paths.

Figures are written next to the delimited outputs when requested. The Agg
backend is forced so rendering works headless, and PNG metadata is pinned
so repeated runs produce identical bytes.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_PNG_META = {"Software": "dtws"}


def _save(fig, path):
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)


def distance_heatmap(dist, path):
    """Heatmap of an all-pairs distance matrix."""
    fig, ax = plt.subplots(figsize=(6, 5))
    im = ax.imshow(dist.values, cmap="viridis", interpolation="nearest")
    ax.set_xlabel("series")
    ax.set_ylabel("series")
    ax.set_title("pairwise distances")
    fig.colorbar(im, ax=ax, shrink=0.85)
    fig.tight_layout()
    _save(fig, path)


def cluster_panels(series, labels, path):
    """One panel per cluster, every member trajectory drawn."""
    labels = np.asarray(labels)
    ks = sorted(set(labels.tolist()))
    ncols = min(3, len(ks))
    nrows = (len(ks) + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(4 * ncols, 2.8 * nrows),
                             squeeze=False, sharex=True)
    for ax in axes.ravel():
        ax.set_visible(False)
    for pos, k in enumerate(ks):
        ax = axes[pos // ncols][pos % ncols]
        ax.set_visible(True)
        for s, lab in zip(series, labels):
            if lab == k:
                ax.plot(np.arange(len(s)) + s.time_origin, s.values, lw=1.0, alpha=0.7)
        ax.set_title(f"cluster {k} ({int((labels == k).sum())} series)", fontsize=10)
    fig.tight_layout()
    _save(fig, path)


def ensemble_overlay(series, results, mean_series, path):
    """Input trajectories in grey, the pointwise mean dashed, and each
    alignment ensemble in color."""
    fig, ax = plt.subplots(figsize=(7, 4))
    for s in series:
        ax.plot(np.arange(len(s)) + s.time_origin, s.values, color="0.7", lw=0.8)
    ax.plot(np.arange(len(mean_series)) + mean_series.time_origin, mean_series.values,
            "k--", lw=1.5, label="pointwise mean")
    for r in results:
        t = np.arange(len(r.interpolated)) + r.interpolated.time_origin
        ax.plot(t, r.interpolated.values, lw=1.5, label=f"base {r.base_id}")
    if len(results) <= 6:
        ax.legend(fontsize=8)
    ax.set_xlabel("time")
    ax.set_ylabel("value")
    fig.tight_layout()
    _save(fig, path)


def ssr_image(ssr, path):
    """Shapelet-space matrix as an image, one row per shapelet dimension."""
    fig, ax = plt.subplots(figsize=(7, 2.6))
    im = ax.imshow(ssr.columns, aspect="auto", cmap="RdYlBu_r", vmin=-1, vmax=1,
                   interpolation="nearest")
    ax.set_xlabel("window start")
    ax.set_ylabel("dimension")
    ax.set_title(f"shapelet-space representation: {ssr.source_id}")
    fig.colorbar(im, ax=ax, shrink=0.9)
    fig.tight_layout()
    _save(fig, path)
