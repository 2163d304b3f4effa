"""Delimited-file loaders and writers.

All numeric output is rendered with 9 significant digits so repeated runs
produce byte-identical files. Every writer here has a matching loader.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import EmptyFileError, ParseError
from .measures import DistanceMatrix
from .series import TimeSeries


def fmt(x: float) -> str:
    return f"{float(x):.9g}"


def _detect_delim(line: str) -> str:
    return "\t" if "\t" in line else ","


def _parse_float(tok: str, row: int, col: int) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise ParseError(f"bad number {tok!r}", row=row, column=col) from None
    if not math.isfinite(v):
        raise ParseError(f"non-finite value {tok!r}", row=row, column=col)
    return v


def load_series_csv(path, with_ids: bool = False) -> list[TimeSeries]:
    """One series per row; with_ids reads the first column as the series id.
    Rows may differ in length. NaN and non-numeric cells are rejected."""
    with open(path) as fh:
        raw = fh.read().splitlines()
    rows = [(i + 1, ln) for i, ln in enumerate(raw) if ln.strip()]
    if not rows:
        raise EmptyFileError(f"{path}: no series")
    delim = _detect_delim(rows[0][1])
    out = []
    for n, (row, ln) in enumerate(rows):
        fields = ln.split(delim)
        if with_ids:
            sid, fields = fields[0].strip(), fields[1:]
        else:
            sid = f"s{n}"
        if not fields:
            raise ParseError("row has no values", row=row)
        values = [_parse_float(tok, row, col) for col, tok in enumerate(fields, start=2 if with_ids else 1)]
        out.append(TimeSeries(id=sid, values=np.array(values)))
    return out


def write_series_csv(path, series, with_ids: bool = True):
    with open(path, "w") as fh:
        for s in series:
            row = ",".join(fmt(v) for v in s.values)
            fh.write((f"{s.id}," if with_ids else "") + row + "\n")


def load_matrix_csv(path) -> np.ndarray:
    """Plain numeric matrix, no headers."""
    with open(path) as fh:
        raw = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not raw:
        raise EmptyFileError(f"{path}: empty matrix")
    delim = _detect_delim(raw[0])
    data = [
        [_parse_float(tok, r + 1, c + 1) for c, tok in enumerate(ln.split(delim))]
        for r, ln in enumerate(raw)
    ]
    widths = {len(r) for r in data}
    if len(widths) != 1:
        raise ParseError(f"ragged matrix rows (widths {sorted(widths)})")
    return np.array(data)


def write_matrix_csv(path, matrix):
    with open(path, "w") as fh:
        for row in np.asarray(matrix, dtype=float):
            fh.write(",".join(fmt(v) for v in row) + "\n")


def load_distance_csv(path) -> DistanceMatrix:
    """Matrix with an id header row and an id first column."""
    with open(path) as fh:
        raw = [ln for ln in fh.read().splitlines() if ln.strip()]
    if len(raw) < 2:
        raise EmptyFileError(f"{path}: no distance rows")
    delim = _detect_delim(raw[0])
    header = [t.strip() for t in raw[0].split(delim)][1:]
    n = len(header)
    values = np.zeros((n, n))
    for r, ln in enumerate(raw[1:]):
        fields = ln.split(delim)
        if len(fields) != n + 1:
            raise ParseError(f"expected {n + 1} fields, got {len(fields)}", row=r + 2)
        for c, tok in enumerate(fields[1:]):
            values[r, c] = _parse_float(tok, r + 2, c + 2)
    return DistanceMatrix(values=values, ids=tuple(header))


def load_clustered_series_csv(path):
    """Rows of id, cluster label, values - the `cluster` subcommand's series
    output. Returns (series, labels)."""
    with open(path) as fh:
        raw = [(i + 1, ln) for i, ln in enumerate(fh.read().splitlines()) if ln.strip()]
    if not raw:
        raise EmptyFileError(f"{path}: no series")
    series, labels = [], []
    for row, ln in raw:
        fields = ln.split(",")
        if len(fields) < 3:
            raise ParseError("expected id, cluster, values", row=row)
        sid = fields[0].strip()
        try:
            label = int(fields[1])
        except ValueError:
            raise ParseError(f"bad cluster label {fields[1]!r}", row=row, column=2) from None
        values = [_parse_float(tok, row, col) for col, tok in enumerate(fields[2:], start=3)]
        series.append(TimeSeries(id=sid, values=np.array(values)))
        labels.append(label)
    return series, labels


def write_distance_csv(path, dist: DistanceMatrix):
    with open(path, "w") as fh:
        fh.write("id," + ",".join(dist.ids) + "\n")
        for sid, row in zip(dist.ids, dist.values):
            fh.write(sid + "," + ",".join(fmt(v) for v in row) + "\n")


def write_json(path, payload):
    """Deterministic JSON: sorted keys, floats rounded to 9 significant digits."""

    def walk(obj):
        if isinstance(obj, dict):
            return {k: walk(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [walk(v) for v in obj]
        if isinstance(obj, (np.floating, float)):
            return float(fmt(obj))
        if isinstance(obj, (np.integer, int)):
            return int(obj)
        return obj

    with open(path, "w") as fh:
        json.dump(walk(payload), fh, sort_keys=True, indent=2)
        fh.write("\n")
