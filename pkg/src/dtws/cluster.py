"""Agglomerative clustering on a precomputed distance matrix and
silhouette-based selection of the cluster count."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadKError, SingleClusterError
from .measures import DistanceMatrix

LINKAGES = ("average", "complete", "single")


@dataclass(frozen=True)
class ClusterResult:
    labels: np.ndarray  # 1..k per series
    k: int
    mean_silhouette: float
    linkage: str


def _merge_levels(D: np.ndarray, linkage: str) -> list[list[list[int]]]:
    """Greedy merge trail: partitions[i] holds the n-i clusters present after
    i merges, each cluster a sorted member list. Ties break on the smallest
    (i, j) active-position pair, so the trail is deterministic."""
    n = D.shape[0]
    work = D.astype(float).copy()
    sizes = [1] * n
    members = [[i] for i in range(n)]
    active = list(range(n))
    levels = [[list(m) for m in members]]
    while len(active) > 1:
        best = float("inf")
        bi = bj = -1
        for ai in range(len(active)):
            a = active[ai]
            wrow = work[a]
            for aj in range(ai + 1, len(active)):
                d = wrow[active[aj]]
                if d < best:
                    best, bi, bj = d, ai, aj
        a, b = active[bi], active[bj]
        # Lance-Williams update of cluster-to-cluster distances, merged into a
        for c in active:
            if c == a or c == b:
                continue
            if linkage == "average":
                d = (sizes[a] * work[a, c] + sizes[b] * work[b, c]) / (sizes[a] + sizes[b])
            elif linkage == "complete":
                d = max(work[a, c], work[b, c])
            else:
                d = min(work[a, c], work[b, c])
            work[a, c] = work[c, a] = d
        sizes[a] += sizes[b]
        members[a] = sorted(members[a] + members[b])
        del active[bj]
        levels.append([list(members[c]) for c in active])
    return levels


def _labels_from_partition(partition, n: int) -> np.ndarray:
    labels = np.zeros(n, dtype=int)
    for idx, cluster in enumerate(sorted(partition, key=min), start=1):
        labels[cluster] = idx
    return labels


def agglomerate(D: DistanceMatrix, k: int, linkage: str = "average") -> ClusterResult:
    """Merge greedily from singletons down to exactly k clusters.

    Labels are 1..k, numbered by each cluster's smallest member index. The
    mean silhouette is attached when it is defined (2 <= k <= n), else 0.
    """
    if linkage not in LINKAGES:
        raise ValueError(f"unknown linkage {linkage!r}; expected one of {LINKAGES}")
    n = D.n
    if not 1 <= k <= n:
        raise BadKError(f"k={k} outside 1..{n}")
    levels = _merge_levels(D.values, linkage)
    labels = _labels_from_partition(levels[n - k], n)
    sil = silhouette(D, labels) if k >= 2 else 0.0
    return ClusterResult(labels=labels, k=k, mean_silhouette=sil, linkage=linkage)


def silhouette(D: DistanceMatrix, labels) -> float:
    """Mean of (b - a) / max(a, b) over all points.

    a is the mean distance to the point's own cluster (self excluded) and b
    the smallest mean distance to any other cluster. Singletons contribute 0,
    as does a point with a = b = 0.
    """
    labels = np.asarray(labels)
    values = D.values
    n = len(labels)
    uniq = np.unique(labels)
    if uniq.size < 2:
        raise SingleClusterError("silhouette needs at least 2 clusters")
    masks = {c: labels == c for c in uniq}
    total = 0.0
    for i in range(n):
        own = masks[labels[i]]
        own_size = own.sum()
        if own_size == 1:
            continue
        a = values[i, own].sum() / (own_size - 1)
        b = min(values[i, masks[c]].mean() for c in uniq if c != labels[i])
        denom = max(a, b)
        if denom > 0:
            total += (b - a) / denom
    return total / n


def select_k(D: DistanceMatrix, k_max: int | None = None, k_min: int = 2,
             linkage: str = "average") -> ClusterResult:
    """Clustering whose k in [k_min, k_max] maximizes the mean silhouette;
    ties go to the smallest k."""
    n = D.n
    if k_max is None:
        k_max = min(10, n - 1)
    if not 2 <= k_min <= k_max <= n - 1:
        raise BadKError(f"bad k range {k_min}..{k_max} for n={n}")
    levels = _merge_levels(D.values, linkage)
    best = None
    for k in range(k_min, k_max + 1):
        labels = _labels_from_partition(levels[n - k], n)
        sil = silhouette(D, labels)
        if best is None or sil > best.mean_silhouette:
            best = ClusterResult(labels=labels, k=k, mean_silhouette=sil, linkage=linkage)
    return best
