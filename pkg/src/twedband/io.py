"""File formats: series CSV, distance-matrix CSV, plain sequences.

A series file is a CSV with header ``t,v0[,v1,...]``: one timestamp
column followed by one column per value dimension. Floats are written
with shortest round-trip precision so files re-parse to bit-identical
series.
"""

from __future__ import annotations

import csv
import io as _stdio
from pathlib import Path

import numpy as np

from .core import InvalidInputError, TimeSeries


class SeriesFormatError(InvalidInputError):
    """The file does not have the expected shape (header, columns)."""


class SeriesValidationError(InvalidInputError):
    """The file parsed but its contents violate a series invariant."""


def _expected_header(d: int) -> list[str]:
    return ["t"] + [f"v{k}" for k in range(d)]


def parse_series_csv(text: str, name: str = "<string>") -> TimeSeries:
    """Parse series CSV text; data rows are numbered from 1 in errors."""
    reader = csv.reader(_stdio.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise SeriesFormatError(f"{name}: empty file, expected header 't,v0[,v1,...]'")
    header = [h.strip() for h in header]
    if len(header) < 2 or header != _expected_header(len(header) - 1):
        raise SeriesFormatError(
            f"{name}: expected header 't,v0[,v1,...]', got {','.join(header)!r}"
        )
    d = len(header) - 1

    times: list[float] = []
    values: list[list[float]] = []
    for row_number, row in enumerate(reader, start=1):
        if not row:
            continue
        if len(row) != d + 1:
            raise SeriesFormatError(
                f"{name}: row {row_number} has {len(row)} columns, expected {d + 1}"
            )
        try:
            parsed = [float(cell) for cell in row]
        except ValueError:
            raise SeriesFormatError(f"{name}: row {row_number} has a non-numeric cell")
        times.append(parsed[0])
        values.append(parsed[1:])

    if not values:
        raise SeriesFormatError(f"{name}: no data rows")
    for k in range(1, len(times)):
        if times[k] <= times[k - 1]:
            raise SeriesValidationError(
                f"{name}: timestamp not strictly increasing at row {k + 1}"
            )
    return TimeSeries(np.array(values), np.array(times))


def read_series_file(path) -> TimeSeries:
    path = Path(path)
    return parse_series_csv(path.read_text(), name=path.name)


def write_series_csv(series: TimeSeries, path) -> None:
    """Write a series with full (round-trip) precision."""
    path = Path(path)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(_expected_header(series.d))
        for t, row in zip(series.timestamps, series.values):
            writer.writerow([repr(float(t))] + [repr(float(v)) for v in row])


def load_series_dir(path) -> tuple[list[str], list[TimeSeries]]:
    """Read every .csv in a directory, sorted lexicographically by name."""
    path = Path(path)
    if not path.is_dir():
        raise InvalidInputError(f"not a directory: {path}")
    files = sorted(p for p in path.iterdir() if p.suffix == ".csv")
    if not files:
        raise InvalidInputError(f"no .csv series files in {path}")
    names = [p.name for p in files]
    series = [read_series_file(p) for p in files]
    return names, series


def write_matrix_csv(path, row_names, col_names, entries: np.ndarray) -> None:
    """Write a labelled distance matrix with full precision."""
    path = Path(path)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow([""] + list(col_names))
        for name, row in zip(row_names, entries):
            writer.writerow([name] + [repr(float(v)) for v in row])


def read_sequence_file(path) -> str:
    """First line of a text file; an empty file is the empty sequence."""
    with Path(path).open() as handle:
        line = handle.readline()
    return line.rstrip("\r\n")
