"""Shapelet definitions, set validation, and the shapelet-space transform.

A shapelet is a short reference shape (e.g. an increase or a peak). A window
of a time-series is described by its similarity to each shapelet: windows
that are nearly constant score high on the flat shapelet and near zero
everywhere else, while sloped windows score by Pearson correlation damped
with the window's flatness. The resulting d-vector keeps two windows close
exactly when both are nearly flat or one is approximately a positive affine
transform of the other, provided the non-flat shapelets (after centering)
span a (w-1)-dimensional space.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .errors import (
    ConstantVectorError,
    DuplicateFlatError,
    InsufficientRankError,
    LengthMismatchError,
    NoFlatShapeletError,
)

INFINITE_BETA = math.inf

# tolerance for "successive differences are all zero" and rank decisions
_FLAT_TOL = 1e-12
_RANK_TOL = 1e-9


@dataclass(frozen=True)
class Shapelet:
    """A named reference shape of length w >= 2."""

    name: str
    values: np.ndarray
    is_flat: bool = False

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 2:
            raise ValueError(f"shapelet {self.name!r} must be a vector of length >= 2")
        if not np.all(np.isfinite(vals)):
            raise ValueError(f"shapelet {self.name!r} has non-finite values")
        object.__setattr__(self, "values", vals)
        actually_flat = bool(np.all(np.abs(np.diff(vals)) <= _FLAT_TOL))
        if self.is_flat != actually_flat:
            kind = "flat" if actually_flat else "non-flat"
            raise ValueError(f"shapelet {self.name!r} is {kind} but declared is_flat={self.is_flat}")

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class FlatnessParams:
    """Slope threshold m0 and decay rate beta of the flatness score.

    beta may be ``INFINITE_BETA``, in which case flatness is 1 for slopes
    up to m0 and 0 beyond (the limit of the exponential form).
    """

    m0: float = 0.0
    beta: float = math.log(10.0)

    def __post_init__(self):
        if self.m0 < 0:
            raise ValueError("m0 must be >= 0")
        if self.beta < 0:
            raise ValueError("beta must be >= 0")

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.beta)


@dataclass(frozen=True)
class BetaRule:
    """Deferred flatness: estimate beta from data so that a window with the
    median of the per-series maximum mean-absolute-slope scores p_floor."""

    p_floor: float = 0.1
    m0: float = 0.0

    def __post_init__(self):
        if not 0 < self.p_floor < 1:
            raise ValueError("p_floor must be in (0, 1)")


@dataclass(frozen=True)
class ShapeletSet:
    """Validated shapelet collection: exactly one flat member, stored first,
    followed by the non-flat members in input order.

    c_matrix stacks the first w-1 independent centered non-flat shapelets
    with a final all-ones row; a finite inverse norm certifies that the set
    distinguishes all non-flat shapes up to positive affine transforms.
    """

    shapelets: tuple[Shapelet, ...]
    w: int
    c_matrix: np.ndarray
    c_inv_norm: float
    c_inv_norm_frobenius: float
    unit_rows: np.ndarray = field(repr=False)  # centered-normalized non-flat shapes, d-1 x w

    @property
    def d(self) -> int:
        return len(self.shapelets)

    @property
    def names(self) -> list[str]:
        return [s.name for s in self.shapelets]


def center_normalize(x) -> np.ndarray:
    """Subtract the mean and scale to unit Euclidean norm."""
    x = np.asarray(x, dtype=float)
    centered = x - x.mean()
    norm = np.linalg.norm(centered)
    if norm <= _FLAT_TOL:
        raise ConstantVectorError("cannot center-normalize a constant vector")
    return centered / norm


def mean_abs_slope(x) -> float:
    """Average absolute successive difference of a vector of length >= 2."""
    x = np.asarray(x, dtype=float)
    if x.size < 2:
        raise ValueError("need at least 2 samples")
    return float(np.abs(np.diff(x)).mean())


def flatness(m: float, params: FlatnessParams) -> float:
    """Score in (0, 1] that decays exponentially once the slope m exceeds m0."""
    if m < 0:
        raise ValueError("mean absolute slope must be >= 0")
    if m <= params.m0:
        return 1.0
    if params.is_infinite:
        return 0.0
    return math.exp(-params.beta * (m - params.m0))


def pearson(x, s) -> float:
    """Pearson correlation; 0 when either argument has zero variance."""
    x = np.asarray(x, dtype=float)
    s = np.asarray(s, dtype=float)
    if x.size != s.size:
        raise LengthMismatchError(f"length {x.size} vs {s.size}")
    cx = x - x.mean()
    cs = s - s.mean()
    nx = np.linalg.norm(cx)
    ns = np.linalg.norm(cs)
    if nx <= _FLAT_TOL or ns <= _FLAT_TOL:
        return 0.0
    return float(np.clip(cx @ cs / (nx * ns), -1.0, 1.0))


def ssr_vector(x, shapelet_set: ShapeletSet, params: FlatnessParams) -> np.ndarray:
    """Shapelet-space coordinates of one window, flat dimension first.

    The flat coordinate is 2*phi - 1; every other coordinate is
    (1 - phi) * corr(x, shapelet), where phi is the flatness of x.
    """
    x = np.asarray(x, dtype=float)
    if x.size != shapelet_set.w:
        raise LengthMismatchError(f"window length {x.size} != shapelet length {shapelet_set.w}")
    phi = flatness(mean_abs_slope(x), params)
    out = np.empty(shapelet_set.d)
    out[0] = 2.0 * phi - 1.0
    centered = x - x.mean()
    norm = np.linalg.norm(centered)
    if norm <= _FLAT_TOL:
        out[1:] = 0.0
    else:
        corr = shapelet_set.unit_rows @ (centered / norm)
        out[1:] = (1.0 - phi) * np.clip(corr, -1.0, 1.0)
    return out


def validate_shapelet_set(shapelets) -> ShapeletSet:
    """Check a shapelet list and assemble the derived matrices.

    Requires exactly one flat member and at least w-1 linearly independent
    non-flat members (independence judged after centering). When more than
    w-1 independent members exist, the first w-1 in input order build the
    certificate matrix; all members still contribute coordinates.
    """
    shapelets = [s if isinstance(s, Shapelet) else Shapelet(**s) for s in shapelets]
    if not shapelets:
        raise NoFlatShapeletError("empty shapelet list")
    w = len(shapelets[0])
    for s in shapelets:
        if len(s) != w:
            raise LengthMismatchError(f"shapelet {s.name!r} has length {len(s)}, expected {w}")

    flats = [s for s in shapelets if s.is_flat]
    if not flats:
        raise NoFlatShapeletError("a shapelet set needs exactly one flat shapelet")
    if len(flats) > 1:
        raise DuplicateFlatError(f"{len(flats)} flat shapelets given, expected one")
    non_flat = [s for s in shapelets if not s.is_flat]

    # greedy selection of the first w-1 independent members, input order
    basis: list[np.ndarray] = []
    chosen: list[Shapelet] = []
    for s in non_flat:
        u = center_normalize(s.values)
        r = u - sum((u @ b) * b for b in basis) if basis else u
        rn = np.linalg.norm(r)
        if rn > _RANK_TOL:
            basis.append(r / rn)
            chosen.append(s)
        if len(chosen) == w - 1:
            break
    if len(chosen) < w - 1:
        raise InsufficientRankError(
            f"only {len(chosen)} independent non-flat shapelets; need {w - 1} for window length {w}"
        )

    centered_rows = np.vstack([s.values - s.values.mean() for s in chosen])
    c_matrix = np.vstack([centered_rows, np.ones(w)])
    c_inv = np.linalg.inv(c_matrix)
    spectral = float(np.linalg.norm(c_inv, 2))
    frobenius = float(np.linalg.norm(c_inv, "fro"))
    if not (math.isfinite(spectral) and math.isfinite(frobenius)):
        raise InsufficientRankError("certificate matrix is numerically singular")

    ordered = (flats[0], *non_flat)
    unit_rows = np.vstack([center_normalize(s.values) for s in non_flat])
    return ShapeletSet(
        shapelets=ordered,
        w=w,
        c_matrix=c_matrix,
        c_inv_norm=spectral,
        c_inv_norm_frobenius=frobenius,
        unit_rows=unit_rows,
    )


def default_shapelet_set() -> tuple[ShapeletSet, BetaRule]:
    """The bundled four-shapelet set (increase, surge, peak, flat) and its
    data-driven flatness rule."""
    with resources.files("dtws").joinpath("data/default_shapelets.json").open() as fh:
        return parse_shapelet_json(json.load(fh))


def load_shapelet_json(path) -> tuple[ShapeletSet, FlatnessParams | BetaRule]:
    """Load a shapelet set plus flatness settings from a JSON file.

    Schema::

        {
          "shapelets": [{"name": str, "values": [float, ...], "is_flat": bool}, ...],
          "m0": float,
          "beta": float | "inf"          # or instead of beta:
          "beta_rule": {"p_floor": float}
        }
    """
    with open(path) as fh:
        return parse_shapelet_json(json.load(fh))


def parse_shapelet_json(doc) -> tuple[ShapeletSet, FlatnessParams | BetaRule]:
    shapelets = [
        Shapelet(name=item["name"], values=item["values"], is_flat=bool(item.get("is_flat", False)))
        for item in doc["shapelets"]
    ]
    sset = validate_shapelet_set(shapelets)
    m0 = float(doc.get("m0", 0.0))
    if "beta_rule" in doc:
        flat = BetaRule(p_floor=float(doc["beta_rule"].get("p_floor", 0.1)), m0=m0)
    elif "beta" in doc:
        raw = doc["beta"]
        beta = INFINITE_BETA if raw in ("inf", "infinite") else float(raw)
        flat = FlatnessParams(m0=m0, beta=beta)
    else:
        flat = BetaRule(m0=m0)
    return sset, flat
