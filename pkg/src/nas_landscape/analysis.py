"""Correlation, top-k density, and nearest-neighbour distance analyses."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid
from scipy.spatial.distance import cdist

from .design_space import DesignSpace, EvaluatedDoe, top_k_rows
from .errors import DegenerateSample, InsufficientData


@dataclass
class CorrelationReport:
    """Pearson r of every parameter against accuracy and (optionally) cpu_time."""

    parameter_names: list[str]
    accuracy: np.ndarray  # NaN marks an undefined entry
    cpu_time: np.ndarray | None

    def to_csv(self) -> str:
        lines = ["parameter,accuracy,cpu_time"]
        for i, name in enumerate(self.parameter_names):
            acc = "" if np.isnan(self.accuracy[i]) else repr(float(self.accuracy[i]))
            if self.cpu_time is None or np.isnan(self.cpu_time[i]):
                cpu = ""
            else:
                cpu = repr(float(self.cpu_time[i]))
            lines.append(f"{name},{acc},{cpu}")
        return "\n".join(lines) + "\n"


@dataclass
class DensityCurve:
    grid: np.ndarray
    density: np.ndarray
    bandwidth: float
    median: float

    def integral(self) -> float:
        return float(trapezoid(self.density, self.grid))


@dataclass
class PointMass:
    """Degenerate density: every top-k value identical."""

    value: float

    @property
    def median(self) -> float:
        return self.value


def _pearson_or_nan(u: np.ndarray, v: np.ndarray) -> float:
    if np.std(u) == 0.0 or np.std(v) == 0.0:
        return float("nan")
    return float(np.corrcoef(u, v)[0, 1])


def pearson_correlations(doe: EvaluatedDoe, space: DesignSpace) -> CorrelationReport:
    """Per-parameter Pearson r against accuracy and cpu_time."""
    if doe.n < 3:
        raise InsufficientData("need at least 3 rows for correlations")
    acc = np.array([_pearson_or_nan(doe.X[:, j], doe.accuracy) for j in range(doe.X.shape[1])])
    cpu = None
    if doe.cpu_time is not None:
        cpu = np.array(
            [_pearson_or_nan(doe.X[:, j], doe.cpu_time) for j in range(doe.X.shape[1])]
        )
    return CorrelationReport(list(space.names), acc, cpu)


def silverman_bandwidth(values: np.ndarray) -> float:
    values = np.asarray(values, dtype=float)
    sd = float(np.std(values, ddof=1))
    iqr = float(np.subtract(*np.percentile(values, [75, 25])))
    spread = min(sd, iqr / 1.34) if iqr > 0 else sd
    return 0.9 * spread * values.size ** (-0.2)


def gaussian_kde_curve(values: np.ndarray, grid_size: int = 256) -> DensityCurve:
    """Gaussian-kernel density with Silverman bandwidth on a padded grid."""
    values = np.asarray(values, dtype=float)
    h = silverman_bandwidth(values)
    if h <= 0:
        raise DegenerateSample("values have no spread; density is a point mass")
    grid = np.linspace(values.min() - 3 * h, values.max() + 3 * h, grid_size)
    z = (grid[:, None] - values[None, :]) / h
    density = np.exp(-0.5 * z**2).sum(axis=1) / (values.size * h * np.sqrt(2 * np.pi))
    return DensityCurve(grid, density, h, float(np.median(values)))


def top_k_densities(
    doe: EvaluatedDoe, space: DesignSpace, k: int = 50
) -> dict[str, DensityCurve | PointMass]:
    """Per-parameter KDE (or point mass) over the top-k rows by accuracy."""
    if k < 3:
        raise ValueError("k must be at least 3")
    idx = top_k_rows(doe.accuracy, k)
    top = doe.X[idx]
    out: dict[str, DensityCurve | PointMass] = {}
    for j, name in enumerate(space.names):
        col = top[:, j]
        if np.unique(col).size == 1:
            out[name] = PointMass(float(col[0]))
        else:
            out[name] = gaussian_kde_curve(col)
    return out


def knn_distance_stats(
    vectors: np.ndarray,
    labels: list[str],
    k: int = 20,
    query_labels: list[str] | None = None,
) -> dict[str, dict[str, dict[str, float]]]:
    """Per-label statistics of distances to the k nearest foreign rows.

    For query label L: a foreign row's distance to L is its minimum distance
    to any L-labeled row.  The k foreign rows closest to L give the first
    statistic; each such neighbour's mean distance to its own k nearest
    foreign (non-L) rows gives the second.
    """
    V = np.asarray(vectors, dtype=float)
    labels = list(labels)
    if V.shape[0] != len(labels):
        raise ValueError("labels length must match the number of rows")
    out: dict[str, dict[str, dict[str, float]]] = {}
    queries = list(dict.fromkeys(labels)) if query_labels is None else list(query_labels)
    for L in queries:
        own = np.array([lab == L for lab in labels])
        foreign = ~own
        n_foreign = int(foreign.sum())
        if n_foreign < k + 1:
            raise InsufficientData(
                f"label {L!r}: need at least {k + 1} foreign rows, got {n_foreign}"
            )
        F = V[foreign]
        d_to_set = cdist(F, V[own]).min(axis=1)
        nearest = np.argsort(d_to_set, kind="stable")[:k]
        first = d_to_set[nearest]

        DF = cdist(F[nearest], F)
        # a neighbour is itself part of the foreign set: drop the self distance
        self_cols = nearest
        DF[np.arange(k), self_cols] = np.inf
        own_knn = np.sort(DF, axis=1)[:, :k]
        second = own_knn.mean(axis=1)

        out[L] = {
            "foreign_knn": {"mean": float(first.mean()), "sd": float(np.std(first, ddof=1))},
            "neighbour_self_knn": {
                "mean": float(second.mean()),
                "sd": float(np.std(second, ddof=1)),
            },
        }
    return out
