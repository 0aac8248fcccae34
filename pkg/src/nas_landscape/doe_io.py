"""CSV/JSON readers and writers for the pipeline's documented file schemas."""

from __future__ import annotations

import csv
import io

import numpy as np

from .design_space import CANONICAL_NAMES, EvaluatedDoe
from .ela_features import FEATURE_NAMES, LandscapeFeatures
from .errors import SchemaError


def _fmt(x: float) -> str:
    return repr(float(x))


def write_design_csv(X: np.ndarray, names=CANONICAL_NAMES) -> str:
    """Design matrix -> CSV text with one header row and full precision."""
    X = np.asarray(X, dtype=float)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(names)
    for row in X:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def read_design_csv(text: str, names=CANONICAL_NAMES) -> np.ndarray:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != list(names):
        raise SchemaError(f"expected header {list(names)}, got {rows[0] if rows else 'empty file'}")
    try:
        return np.array([[float(v) for v in r] for r in rows[1:] if r], dtype=float)
    except ValueError as e:
        raise SchemaError(f"non-numeric design entry: {e}") from e


def write_evaluated_csv(doe: EvaluatedDoe, names=CANONICAL_NAMES) -> str:
    """EvaluatedDoe -> CSV with parameter columns, accuracy, optional extras."""
    header = list(names) + ["accuracy"]
    if doe.cpu_time is not None:
        header.append("cpu_time")
    if doe.dataset_label:
        header.append("dataset")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for i in range(doe.n):
        row = [_fmt(v) for v in doe.X[i]] + [_fmt(doe.accuracy[i])]
        if doe.cpu_time is not None:
            row.append(_fmt(doe.cpu_time[i]))
        if doe.dataset_label:
            row.append(doe.dataset_label)
        w.writerow(row)
    return buf.getvalue()


def read_evaluated_csv(text: str, names=CANONICAL_NAMES) -> EvaluatedDoe:
    """Parse the EvaluatedDoe schema; raises SchemaError with row/column context."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty file") from None
    names = list(names)
    if header[: len(names)] != names:
        raise SchemaError(
            f"first {len(names)} columns must be the canonical parameter names; got {header[:len(names)]}"
        )
    extras = header[len(names):]
    if not extras or extras[0] != "accuracy":
        raise SchemaError("missing required 'accuracy' column after the parameters")
    has_cpu = "cpu_time" in extras
    has_dataset = "dataset" in extras
    allowed = ["accuracy"] + (["cpu_time"] if has_cpu else []) + (["dataset"] if has_dataset else [])
    if extras != allowed:
        raise SchemaError(f"unexpected trailing columns {extras}; allowed order {allowed}")

    X_rows, acc, cpu, dataset = [], [], [], ""
    for i, row in enumerate(reader):
        if not row:
            continue
        if len(row) != len(header):
            raise SchemaError(f"row {i}: expected {len(header)} fields, got {len(row)}")
        try:
            X_rows.append([float(v) for v in row[: len(names)]])
            acc.append(float(row[len(names)]))
            if has_cpu:
                cpu.append(float(row[len(names) + 1]))
        except ValueError as e:
            raise SchemaError(f"row {i}: non-numeric value ({e})") from e
        if has_dataset:
            dataset = row[-1]
    if not X_rows:
        raise SchemaError("no data rows")
    return EvaluatedDoe(
        X=np.array(X_rows),
        accuracy=np.array(acc),
        cpu_time=np.array(cpu) if has_cpu else None,
        dataset_label=dataset,
    )


def write_feature_csv(rows: list[tuple[str, int, LandscapeFeatures]]) -> str:
    """(dataset, replicate, features) rows -> CSV keyed by the 20 feature names."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["dataset", "replicate"] + list(FEATURE_NAMES))
    for dataset, replicate, feats in rows:
        w.writerow([dataset, replicate] + [_fmt(feats[k]) for k in FEATURE_NAMES])
    return buf.getvalue()


def read_feature_csv(text: str) -> tuple[np.ndarray, list[str], list[int]]:
    """Feature CSV -> (matrix, dataset labels, replicate ids)."""
    rows = list(csv.reader(io.StringIO(text)))
    expected = ["dataset", "replicate"] + list(FEATURE_NAMES)
    if not rows or rows[0] != expected:
        raise SchemaError("feature CSV header does not match the 20-feature schema")
    labels, reps, mat = [], [], []
    for i, r in enumerate(rows[1:]):
        if not r:
            continue
        if len(r) != len(expected):
            raise SchemaError(f"row {i}: expected {len(expected)} fields, got {len(r)}")
        labels.append(r[0])
        try:
            reps.append(int(r[1]))
            mat.append([float(v) for v in r[2:]])
        except ValueError as e:
            raise SchemaError(f"row {i}: {e}") from e
    if not mat:
        raise SchemaError("no feature rows")
    return np.array(mat), labels, reps
