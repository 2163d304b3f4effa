"""Dynamic time warping over arbitrary item sequences.

Items may be scalars (1-D input arrays) or fixed-size vectors (2-D input
arrays, one item per row). The local cost between items is selected by name:

- ``squared_euclidean``: ||u - v||^2 (squared difference for scalars)
- ``cosine_distance``: 1 - cos(u, v); a zero vector against a non-zero one
  costs 1, two zero vectors cost 0
- ``absolute_scalar``: |u - v| for scalar items

A Sakoe-Chiba style band ``tau`` restricts alignment to |i - j| <= tau.
The band must be at least |n - m| wide or no path can connect the corners.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptySequenceError,
    InfeasibleWindowError,
    SequenceTooLongError,
)

COST_KINDS = ("squared_euclidean", "cosine_distance", "absolute_scalar")

_BRUTE_FORCE_MAX = 10


@dataclass(frozen=True)
class AlignmentResult:
    """Total alignment cost and the warping path as 1-based index pairs."""

    distance: float
    path: tuple[tuple[int, int], ...]


def local_cost_matrix(a, b, cost: str = "squared_euclidean") -> np.ndarray:
    """Pairwise item costs, shape (len(a), len(b))."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim == 1:
        a = a[:, None]
    if b.ndim == 1:
        b = b[:, None]
    if a.shape[0] == 0 or b.shape[0] == 0:
        raise EmptySequenceError("cannot align an empty sequence")
    if a.shape[1] != b.shape[1]:
        raise ValueError(f"item dimensions differ: {a.shape[1]} vs {b.shape[1]}")
    if cost == "squared_euclidean":
        diff = a[:, None, :] - b[None, :, :]
        return np.einsum("ijk,ijk->ij", diff, diff)
    if cost == "cosine_distance":
        na = np.linalg.norm(a, axis=1)
        nb = np.linalg.norm(b, axis=1)
        dots = a @ b.T
        denom = np.outer(na, nb)
        with np.errstate(invalid="ignore", divide="ignore"):
            cosine = np.where(denom > 0, dots / np.where(denom > 0, denom, 1.0), 0.0)
        out = 1.0 - np.clip(cosine, -1.0, 1.0)
        both_zero = np.outer(na == 0, nb == 0)
        out[both_zero] = 0.0
        return out
    if cost == "absolute_scalar":
        if a.shape[1] != 1:
            raise ValueError("absolute_scalar cost requires scalar items")
        return np.abs(a[:, 0][:, None] - b[:, 0][None, :])
    raise ValueError(f"unknown cost kind {cost!r}; expected one of {COST_KINDS}")


def _check_window(tau, n: int, m: int):
    if tau is None:
        return None
    tau = int(tau)
    if tau < abs(n - m):
        raise InfeasibleWindowError(
            f"window {tau} cannot connect sequences of lengths {n} and {m}"
        )
    return tau


def accumulate(costs: np.ndarray, tau=None) -> float:
    """Banded DP over a precomputed cost matrix; returns the optimal total
    cost only (no path). Used on hot paths where the alignment is not needed."""
    n, m = costs.shape
    tau = _check_window(tau, n, m)
    INF = float("inf")
    rows = costs.tolist()
    prev = [INF] * m
    for i in range(n):
        lo = 0 if tau is None else max(0, i - tau)
        hi = m - 1 if tau is None else min(m - 1, i + tau)
        cur = [INF] * m
        crow = rows[i]
        if i == 0:
            for j in range(lo, hi + 1):
                if j == 0:
                    cur[0] = crow[0]
                else:
                    cur[j] = cur[j - 1] + crow[j]
        else:
            for j in range(lo, hi + 1):
                best = prev[j]  # vertical
                if j > 0:
                    if prev[j - 1] < best:
                        best = prev[j - 1]  # diagonal
                    if cur[j - 1] < best:
                        best = cur[j - 1]  # horizontal
                cur[j] = crow[j] + best
        prev = cur
    return prev[m - 1]


def dtw(a, b, cost: str = "squared_euclidean", tau=None) -> AlignmentResult:
    """Optimal monotone alignment of two item sequences.

    Parameters
    ----------
    a, b : array-like
        Scalar sequences (1-D) or vector-item sequences (2-D, items as rows).
    cost : str
        One of ``COST_KINDS``.
    tau : int or None
        Band half-width; ``None`` leaves the alignment unconstrained.

    Returns
    -------
    AlignmentResult
        Minimal total cost over all paths that start at (1, 1), end at
        (n, m), advance each index by at most one per step, and stay within
        the band. The reported path is deterministic: the backtrace prefers
        the diagonal step, then the vertical, then the horizontal.

    Raises
    ------
    EmptySequenceError
        If either sequence has no items.
    InfeasibleWindowError
        If ``tau < |n - m|``.
    """
    costs = local_cost_matrix(a, b, cost)
    n, m = costs.shape
    tau = _check_window(tau, n, m)
    INF = float("inf")
    rows = costs.tolist()
    D = [[INF] * m for _ in range(n)]
    for i in range(n):
        lo = 0 if tau is None else max(0, i - tau)
        hi = m - 1 if tau is None else min(m - 1, i + tau)
        cur = D[i]
        crow = rows[i]
        prev = D[i - 1] if i else None
        for j in range(lo, hi + 1):
            if i == 0 and j == 0:
                cur[0] = crow[0]
                continue
            best = INF
            if prev is not None:
                best = prev[j]
                if j > 0 and prev[j - 1] < best:
                    best = prev[j - 1]
            if j > 0 and cur[j - 1] < best:
                best = cur[j - 1]
            cur[j] = crow[j] + best

    # backtrace, 0-based internally
    i, j = n - 1, m - 1
    path = [(i, j)]
    while i > 0 or j > 0:
        if i > 0 and j > 0:
            diag, vert, horiz = D[i - 1][j - 1], D[i - 1][j], D[i][j - 1]
            if diag <= vert and diag <= horiz:
                i, j = i - 1, j - 1
            elif vert <= horiz:
                i -= 1
            else:
                j -= 1
        elif i > 0:
            i -= 1
        else:
            j -= 1
        path.append((i, j))
    path.reverse()
    return AlignmentResult(
        distance=float(D[n - 1][m - 1]),
        path=tuple((pi + 1, pj + 1) for pi, pj in path),
    )


def brute_force_dtw(a, b, cost: str = "squared_euclidean", tau=None) -> float:
    """Exhaustive minimum over every feasible monotone path.

    Test oracle for :func:`dtw`; guarded to sequences of at most
    10 items because the path count grows exponentially.
    """
    costs = local_cost_matrix(a, b, cost)
    n, m = costs.shape
    if n > _BRUTE_FORCE_MAX or m > _BRUTE_FORCE_MAX:
        raise SequenceTooLongError(f"brute force limited to {_BRUTE_FORCE_MAX} items per side")
    tau = _check_window(tau, n, m)
    rows = costs.tolist()

    best = [float("inf")]

    def walk(i, j, acc):
        if i == n - 1 and j == m - 1:
            if acc < best[0]:
                best[0] = acc
            return
        if acc >= best[0]:
            return
        if i + 1 < n and j + 1 < m and (tau is None or abs(i - j) <= tau):
            walk(i + 1, j + 1, acc + rows[i + 1][j + 1])
        if i + 1 < n and (tau is None or abs(i + 1 - j) <= tau):
            walk(i + 1, j, acc + rows[i + 1][j])
        if j + 1 < m and (tau is None or abs(i - (j + 1)) <= tau):
            walk(i, j + 1, acc + rows[i][j + 1])

    walk(0, 0, rows[0][0])
    return best[0]
