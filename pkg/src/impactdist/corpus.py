"""Loading positive-valued samples from CSV and Table-1 style descriptives."""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "Dataset",
    "Descriptives",
    "DataError",
    "MissingColumnError",
    "EmptyDatasetError",
    "InvalidRowError",
    "load_csv",
    "describe",
    "sample_gini",
]

log = logging.getLogger(__name__)


class DataError(ValueError):
    """Input data cannot be turned into a valid Dataset."""


class MissingColumnError(DataError):
    pass


class EmptyDatasetError(DataError):
    pass


class InvalidRowError(DataError):
    def __init__(self, rows: list[tuple[int, str]]):
        self.rows = rows
        detail = "; ".join(f"row {r}: {msg}" for r, msg in rows[:10])
        more = f" (+{len(rows) - 10} more)" if len(rows) > 10 else ""
        super().__init__(f"invalid values: {detail}{more}")


@dataclass(frozen=True, eq=False)
class Dataset:
    """A strictly positive sample. ``n_zero_removed`` counts dropped values <= 0."""

    values: np.ndarray
    field_name: str = ""
    n_original: int = 0
    n_zero_removed: int = 0
    source: str | None = None

    def __post_init__(self):
        values = np.array(self.values, dtype=float).ravel()
        if values.size == 0:
            raise EmptyDatasetError("dataset has no positive values")
        if not np.all(np.isfinite(values)) or not np.all(values > 0):
            raise DataError("dataset values must be finite and strictly positive")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if self.n_original == 0:
            object.__setattr__(self, "n_original", values.size + self.n_zero_removed)
        if values.size != self.n_original - self.n_zero_removed:
            raise DataError("len(values) must equal n_original - n_zero_removed")

    @classmethod
    def from_raw(cls, raw, field_name: str = "", source: str | None = None) -> Dataset:
        """Build from raw values, dropping zeros and negatives."""
        raw = np.asarray(raw, dtype=float).ravel()
        if not np.all(np.isfinite(raw)):
            raise DataError("raw values contain NaN or infinity")
        keep = raw > 0
        n_negative = int(np.sum(raw < 0))
        if n_negative:
            log.warning("removed %d negative value(s) from %s", n_negative, field_name or "dataset")
        return cls(raw[keep], field_name, int(raw.size), int(raw.size - keep.sum()), source)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class Descriptives:
    n: int
    mean: float
    median: float
    std_dev: float
    gini: float

    def to_dict(self) -> dict:
        return {"n": self.n, "mean": self.mean, "median": self.median, "std_dev": self.std_dev, "gini": self.gini}


def _parse_float(text: str) -> float | None:
    try:
        value = float(text)
    except ValueError:
        return None
    return value


def load_csv(path, column: str | None = None) -> Dataset:
    """Read one numeric column from a UTF-8 CSV file.

    A header row is assumed when the first row has any non-numeric cell.
    Without ``column`` the first numeric column is used. Zero and negative
    values are dropped and counted; blank or non-numeric cells in the chosen
    column raise :class:`InvalidRowError` listing the offending rows.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such file: {path}")
    with path.open(newline="", encoding="utf-8-sig") as fh:
        rows = [row for row in csv.reader(fh)]
    filled = [i for i, row in enumerate(rows) if any(cell.strip() for cell in row)]
    if not filled:
        raise EmptyDatasetError(f"{path} contains no rows")
    # trailing empty lines are tolerated, interior ones are reported below
    rows_numbered = [(i + 1, row) for i, row in enumerate(rows[: filled[-1] + 1])]

    first = rows_numbered[0][1]
    has_header = any(_parse_float(cell) is None for cell in first)
    header = [cell.strip() for cell in first] if has_header else None
    body = rows_numbered[1:] if has_header else rows_numbered

    if column is not None:
        if header is None or column not in header:
            raise MissingColumnError(f"column {column!r} not found in {path}")
        idx = header.index(column)
    else:
        idx = None
        for j in range(max(len(r) for _, r in body) if body else 0):
            cells = [r[j] for _, r in body if j < len(r) and r[j].strip()]
            if cells and all(_parse_float(c) is not None for c in cells):
                idx = j
                break
        if idx is None:
            raise MissingColumnError(f"no numeric column found in {path}")
    name = column or (header[idx] if header else f"column {idx + 1}")

    values, bad = [], []
    for lineno, row in body:
        cell = row[idx].strip() if idx < len(row) else ""
        value = _parse_float(cell) if cell else None
        if value is None or math.isnan(value):
            bad.append((lineno, f"blank or non-numeric value {cell!r}"))
        elif not math.isfinite(value):
            bad.append((lineno, f"non-finite value {cell!r}"))
        else:
            values.append(value)
    if bad:
        raise InvalidRowError(bad)
    if not values or not any(v > 0 for v in values):
        raise EmptyDatasetError(f"no positive values in column {name!r} of {path}")
    return Dataset.from_raw(values, field_name=name, source=str(path))


def sample_gini(values) -> float:
    """Gini mean-difference index sum_ij |x_i - x_j| / (2 n^2 mean), via sorting."""
    x = np.sort(np.asarray(values, dtype=float))
    n = x.size
    total = x.sum()
    if total == 0:
        return 0.0
    weights = 2.0 * np.arange(1, n + 1) - n - 1
    return float(np.dot(weights, x) / (n * total))


def describe(data) -> Descriptives:
    # sorted so every statistic is independent of row order
    x = np.sort(np.asarray(getattr(data, "values", data), dtype=float))
    if x.size < 2:
        raise DataError("describe needs at least two observations")
    return Descriptives(
        n=int(x.size),
        mean=float(np.mean(x)),
        median=float(np.median(x)),
        std_dev=float(np.std(x, ddof=1)),
        gini=max(0.0, sample_gini(x)),
    )
