"""The CSV contract shared with the landscape toolkit.

The trainer talks to the analysis side only through files: it reads a design
CSV whose header is the 23 canonical parameter names and appends rows to an
evaluated CSV with accuracy, cpu_time, and dataset columns.  The formats are
re-declared here on purpose; there is no code dependency between the two
packages.
"""

from __future__ import annotations

import csv
import io

import numpy as np

CANONICAL_NAMES = (
    "filters_0", "filters_1", "filters_2",
    "k_0", "k_1", "k_2", "k_3", "k_4", "k_5",
    "s_0", "s_1", "s_2",
    "dense_size_0", "dense_size_1",
    "dropout_0", "dropout_1", "dropout_2", "dropout_3",
    "dropout_4", "dropout_5", "dropout_6",
    "lr", "l2",
)

EVALUATED_HEADER = list(CANONICAL_NAMES) + ["accuracy", "cpu_time", "dataset"]


class SchemaError(ValueError):
    pass


def read_design_csv(text: str) -> np.ndarray:
    """Design CSV -> (n, 23) float matrix; the header must match exactly."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != list(CANONICAL_NAMES):
        raise SchemaError("design CSV header must be the 23 canonical parameter names")
    try:
        X = np.array([[float(v) for v in r] for r in rows[1:] if r], dtype=float)
    except ValueError as e:
        raise SchemaError(f"non-numeric design entry: {e}") from e
    if X.ndim != 2 or X.shape[1] != len(CANONICAL_NAMES):
        raise SchemaError("design CSV has a ragged or empty body")
    return X


def evaluated_header_line() -> str:
    return ",".join(EVALUATED_HEADER) + "\n"


def evaluated_row_line(values: np.ndarray, accuracy: float, cpu_time: float, dataset: str) -> str:
    fields = [repr(float(v)) for v in values]
    fields += [repr(float(accuracy)), repr(float(cpu_time)), dataset]
    return ",".join(fields) + "\n"
