"""The 23-parameter CNN architecture design space: bounds, rescaling, range reduction.

All parameter ranges are half-open ``(lo, hi]``: the lower bound is excluded,
the upper bound included.  Integer parameters therefore take values in
``{floor(lo)+1, ..., floor(hi)}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSample, InsufficientData, OutOfBounds, SchemaError

CANONICAL_NAMES = (
    "filters_0", "filters_1", "filters_2",
    "k_0", "k_1", "k_2", "k_3", "k_4", "k_5",
    "s_0", "s_1", "s_2",
    "dense_size_0", "dense_size_1",
    "dropout_0", "dropout_1", "dropout_2", "dropout_3",
    "dropout_4", "dropout_5", "dropout_6",
    "lr", "l2",
)

N_PARAMS = len(CANONICAL_NAMES)  # 23


@dataclass(frozen=True)
class ParameterSpec:
    """One named hyper-parameter with a half-open range (lo, hi]."""

    name: str
    kind: str  # "integer" | "real"
    lo: float
    hi: float

    def __post_init__(self):
        if self.kind not in ("integer", "real"):
            raise ValueError(f"unknown kind {self.kind!r} for {self.name}")
        if not self.lo < self.hi:
            raise ValueError(f"{self.name}: lo must be < hi, got ({self.lo}, {self.hi}]")
        if self.kind == "integer" and self.int_hi - self.int_lo < 1:
            raise ValueError(
                f"{self.name}: integer range ({self.lo}, {self.hi}] holds fewer than 2 values"
            )

    @property
    def int_lo(self) -> int:
        """Smallest representable integer (lo is exclusive)."""
        return int(np.floor(self.lo)) + 1

    @property
    def int_hi(self) -> int:
        """Largest representable integer (hi is inclusive)."""
        return int(np.floor(self.hi))

    def contains(self, x: float) -> bool:
        if not self.lo < x <= self.hi:
            return False
        if self.kind == "integer" and x != np.floor(x):
            return False
        return True

    def round_into(self, x: float) -> float:
        """Round a continuous sample to the nearest representable value."""
        if self.kind == "real":
            return float(x)
        return float(min(max(int(np.floor(x + 0.5)), self.int_lo), self.int_hi))


@dataclass(frozen=True)
class DesignSpace:
    """Ordered collection of the 23 canonical parameters."""

    parameters: tuple[ParameterSpec, ...]

    def __post_init__(self):
        names = [p.name for p in self.parameters]
        if len(set(names)) != len(names):
            raise ValueError("parameter names must be unique")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.parameters)

    @property
    def dim(self) -> int:
        return len(self.parameters)

    @property
    def lo(self) -> np.ndarray:
        return np.array([p.lo for p in self.parameters])

    @property
    def hi(self) -> np.ndarray:
        return np.array([p.hi for p in self.parameters])

    def validate_matrix(self, X: np.ndarray) -> None:
        """Raise OutOfBounds for the first entry violating its parameter range."""
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.dim:
            raise SchemaError(f"expected an (n, {self.dim}) matrix, got shape {X.shape}")
        for j, p in enumerate(self.parameters):
            col = X[:, j]
            bad = ~((col > p.lo) & (col <= p.hi))
            if p.kind == "integer":
                bad |= col != np.floor(col)
            if bad.any():
                i = int(np.argmax(bad))
                raise OutOfBounds(i, j, float(col[i]), p.name, p.lo, p.hi)

    def to_json(self) -> str:
        doc = {"parameters": [
            {"name": p.name, "kind": p.kind, "lo": p.lo, "hi": p.hi}
            for p in self.parameters
        ]}
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "DesignSpace":
        try:
            doc = json.loads(text)
            params = tuple(
                ParameterSpec(d["name"], d["kind"], float(d["lo"]), float(d["hi"]))
                for d in doc["parameters"]
            )
        except (KeyError, TypeError, json.JSONDecodeError) as e:
            raise SchemaError(f"invalid design-space document: {e}") from e
        return cls(params)


@dataclass
class EvaluatedDoe:
    """A design matrix with per-row accuracy (and optional CPU-time) responses."""

    X: np.ndarray
    accuracy: np.ndarray
    cpu_time: np.ndarray | None = None
    dataset_label: str = ""

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=float)
        self.accuracy = np.asarray(self.accuracy, dtype=float)
        if self.accuracy.shape != (self.X.shape[0],):
            raise SchemaError("accuracy length must equal the number of design rows")
        if np.any((self.accuracy < 0) | (self.accuracy > 1)):
            raise SchemaError("accuracy values must lie in [0, 1]")
        if self.cpu_time is not None:
            self.cpu_time = np.asarray(self.cpu_time, dtype=float)
            if self.cpu_time.shape != (self.X.shape[0],):
                raise SchemaError("cpu_time length must equal the number of design rows")
            if np.any(self.cpu_time < 0):
                raise SchemaError("cpu_time values must be non-negative")

    @property
    def n(self) -> int:
        return self.X.shape[0]


def _mk(names, kind, lo, hi):
    return [ParameterSpec(n, kind, lo, hi) for n in names]


_INITIAL = tuple(
    _mk(CANONICAL_NAMES[0:3], "integer", 10, 600)
    + _mk(CANONICAL_NAMES[3:9], "integer", 1, 8)
    + _mk(CANONICAL_NAMES[9:12], "integer", 1, 5)
    + _mk(CANONICAL_NAMES[12:14], "integer", 0, 2000)
    + _mk(CANONICAL_NAMES[14:21], "real", 1e-5, 9e-1)
    + _mk(["lr"], "real", 1e-5, 1e-2)
    + _mk(["l2"], "real", 1e-5, 1e-2)
)

_REDUCED = tuple(
    _mk(CANONICAL_NAMES[0:3], "integer", 250, 400)
    + _mk(CANONICAL_NAMES[3:9], "integer", 3, 7)
    + _mk(CANONICAL_NAMES[9:12], "integer", 2, 5)
    + _mk(CANONICAL_NAMES[12:14], "integer", 500, 1500)
    + _mk(CANONICAL_NAMES[14:21], "real", 1e-1, 4e-1)
    + _mk(["lr"], "real", 4e-3, 9e-3)
    + _mk(["l2"], "real", 5e-4, 3e-3)
)


def builtin_space(which: str = "initial") -> DesignSpace:
    """The 23-parameter architecture space, initial or reduced variant."""
    if which == "initial":
        return DesignSpace(_INITIAL)
    if which == "reduced":
        return DesignSpace(_REDUCED)
    raise ValueError(f"unknown builtin space {which!r}; expected 'initial' or 'reduced'")


def rescale_to_box(
    X: np.ndarray,
    space: DesignSpace,
    target_lo: float = -5.0,
    target_hi: float = 5.0,
) -> np.ndarray:
    """Affinely map every column from (lo, hi] onto [target_lo, target_hi]."""
    X = np.asarray(X, dtype=float)
    space.validate_matrix(X)
    lo, hi = space.lo, space.hi
    return target_lo + (X - lo) * (target_hi - target_lo) / (hi - lo)


def unscale_from_box(
    Z: np.ndarray,
    space: DesignSpace,
    target_lo: float = -5.0,
    target_hi: float = 5.0,
) -> np.ndarray:
    """Inverse of :func:`rescale_to_box` (no integer re-rounding)."""
    Z = np.asarray(Z, dtype=float)
    lo, hi = space.lo, space.hi
    return lo + (Z - target_lo) * (hi - lo) / (target_hi - target_lo)


def top_k_rows(accuracy: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k highest-accuracy rows; ties broken by lower row index."""
    accuracy = np.asarray(accuracy, dtype=float)
    if accuracy.size < k:
        raise InsufficientData(f"need at least {k} rows, got {accuracy.size}")
    return np.argsort(-accuracy, kind="stable")[:k]


def reduce_range(doe: EvaluatedDoe, space: DesignSpace, k: int = 50) -> DesignSpace:
    """Narrow every parameter to the empirical min/max over the top-k rows.

    Real parameters get the observed [min, max] directly (the observed minimum
    sits on the exclusive boundary of the resulting half-open range).  Integer
    parameters get lo = min - 1 so the observed minimum stays representable.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    idx = top_k_rows(doe.accuracy, k)
    top = doe.X[idx]
    params = []
    for j, p in enumerate(space.parameters):
        vmin, vmax = float(top[:, j].min()), float(top[:, j].max())
        if p.kind == "integer":
            lo, hi = vmin - 1.0, vmax
            if hi - lo < 2:  # fewer than two representable integers
                raise DegenerateSample(
                    f"{p.name}: top-{k} rows hold a single integer value {vmin}"
                )
        else:
            lo, hi = vmin, vmax
            if not lo < hi:
                raise DegenerateSample(f"{p.name}: top-{k} rows are constant at {vmin}")
        params.append(ParameterSpec(p.name, p.kind, lo, hi))
    return DesignSpace(tuple(params))
