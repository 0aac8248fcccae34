"""The 20 landscape features: dispersion, y-distribution, information content,
meta-models, and nearest-better clustering.

All features treat lower y as better; accuracy-style responses must be passed
through :func:`orient_for_minimization` first.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import cdist, pdist, squareform
from scipy import stats

from .errors import (
    DegenerateSample,
    InsufficientData,
    NasLandscapeError,
    NonFiniteInput,
    SingularFit,
)

FEATURE_NAMES = (
    "disp.diff_mean_02", "disp.diff_mean_05",
    "disp.ratio_mean_02", "disp.ratio_mean_05",
    "distr.skewness", "distr.kurtosis",
    "ic.h.max", "ic.eps.s", "ic.eps.max", "ic.eps.ratio", "ic.m0",
    "lin_simple.adj_r2", "lin_simple.intercept",
    "lin_w_interact.adj_r2", "quad_simple.adj_r2",
    "nbc.nn_nb.sd_ratio", "nbc.nn_nb.mean_ratio", "nbc.nn_nb.cor",
    "nbc.dist_ratio.coeff_var", "nbc.nb_fitness.cor",
)


class FeatureFamilyError(NasLandscapeError):
    """One or more feature families failed; carries per-family causes."""

    def __init__(self, failures: dict[str, Exception]):
        self.failures = failures
        parts = "; ".join(f"{k}: {type(v).__name__}: {v}" for k, v in failures.items())
        super().__init__(f"feature computation failed for {parts}")


@dataclass(frozen=True)
class LandscapeFeatures:
    """The 20 named feature values for one (X, y) sample."""

    values: dict[str, float]

    def __post_init__(self):
        missing = set(FEATURE_NAMES) - set(self.values)
        if missing:
            raise ValueError(f"missing features: {sorted(missing)}")
        for k in FEATURE_NAMES:
            if not np.isfinite(self.values[k]):
                raise ValueError(f"non-finite feature {k}: {self.values[k]}")

    def __getitem__(self, name: str) -> float:
        return self.values[name]

    def as_array(self) -> np.ndarray:
        return np.array([self.values[k] for k in FEATURE_NAMES])

    def to_dict(self) -> dict[str, float]:
        return {k: self.values[k] for k in FEATURE_NAMES}


@dataclass
class MinimizationSample:
    """Design matrix rescaled to [-5, 5] plus a response where lower is better."""

    X: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=float)
        self.y = np.asarray(self.y, dtype=float)
        if self.X.ndim != 2:
            raise ValueError("X must be a 2-D matrix")
        if self.y.shape != (self.X.shape[0],):
            raise ValueError("y length must equal the number of rows of X")
        if not (np.isfinite(self.X).all() and np.isfinite(self.y).all()):
            raise NonFiniteInput("X and y must be finite")
        if np.unique(self.X, axis=0).shape[0] != self.X.shape[0]:
            raise DegenerateSample("duplicated rows in X")

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def dim(self) -> int:
        return self.X.shape[1]


@dataclass(frozen=True)
class IcSettings:
    """Epsilon grid and tour seed for the information-content features."""

    eps_lo: float = 1e-5
    eps_hi: float = 1e15
    n_eps: int = 1000
    tour_seed: int = 0
    h_threshold: float = 0.05

    def grid(self) -> np.ndarray:
        return np.concatenate(
            [[0.0], np.logspace(np.log10(self.eps_lo), np.log10(self.eps_hi), self.n_eps)]
        )


def orient_for_minimization(y_accuracy: np.ndarray) -> np.ndarray:
    """Negate an accuracy-style response so that lower means better."""
    return -np.asarray(y_accuracy, dtype=float)


def _best_rows(y: np.ndarray, m: int) -> np.ndarray:
    """Indices of the m lowest-y rows, ties broken by lower index."""
    return np.argsort(y, kind="stable")[:m]


def dispersion_features(
    s: MinimizationSample, quantiles: tuple[float, ...] = (0.02, 0.05)
) -> dict[str, float]:
    """Mean pairwise distance of the top-q subsets versus the full sample."""
    d_all = pdist(s.X)
    if d_all.size == 0:
        raise InsufficientData("dispersion needs at least 2 points")
    mean_all = float(d_all.mean())
    if mean_all == 0.0:
        raise DegenerateSample("all points coincide")
    out = {}
    for q in quantiles:
        m = int(np.ceil(q * s.n))
        if m < 2:
            raise InsufficientData(
                f"top-{q:g} subset holds {m} point(s); need at least 2"
            )
        top = s.X[_best_rows(s.y, m)]
        mean_top = float(pdist(top).mean())
        tag = f"{int(round(q * 100)):02d}"
        out[f"disp.diff_mean_{tag}"] = mean_top - mean_all
        out[f"disp.ratio_mean_{tag}"] = mean_top / mean_all
    return out


def distribution_features(y: np.ndarray) -> dict[str, float]:
    """Skewness and excess kurtosis of the response values."""
    y = np.asarray(y, dtype=float)
    if y.size < 3:
        raise InsufficientData("distribution features need at least 3 values")
    if np.var(y) == 0.0:
        raise DegenerateSample("y is constant; moments are undefined")
    return {
        "distr.skewness": float(stats.skew(y, bias=True)),
        "distr.kurtosis": float(stats.kurtosis(y, fisher=True, bias=True)),
    }


def nearest_neighbor_tour(X: np.ndarray, start: int) -> np.ndarray:
    """Order the sample by greedy nearest-neighbor chaining from a start row."""
    n = X.shape[0]
    order = np.empty(n, dtype=int)
    order[0] = start
    visited = np.zeros(n, dtype=bool)
    visited[start] = True
    current = start
    for i in range(1, n):
        d = np.linalg.norm(X - X[current], axis=1)
        d[visited] = np.inf
        nxt = int(np.argmin(d))  # argmin takes the lowest index on ties
        order[i] = nxt
        visited[nxt] = True
        current = nxt
    return order


def tour_slopes(s: MinimizationSample, tour_seed: int = 0) -> np.ndarray:
    """Response slopes along the seeded nearest-neighbor tour."""
    if s.n < 3:
        raise InsufficientData("information content needs at least 3 points")
    rng = np.random.default_rng(tour_seed)
    order = nearest_neighbor_tour(s.X, int(rng.integers(s.n)))
    Xt, yt = s.X[order], s.y[order]
    steps = np.linalg.norm(np.diff(Xt, axis=0), axis=1)
    if np.any(steps == 0):
        raise DegenerateSample("coincident consecutive tour points")
    return np.diff(yt) / steps


def entropy_curve(phi: np.ndarray, eps_grid: np.ndarray) -> np.ndarray:
    """Base-6 pair entropy of the slope symbol sequence at each epsilon."""
    # symbols[e, i] in {-1, 0, 1}: slope i compared against +/- eps_grid[e]
    symbols = np.sign(phi)[None, :] * (np.abs(phi)[None, :] > eps_grid[:, None])
    a, b = symbols[:, :-1], symbols[:, 1:]
    n_pairs = a.shape[1]
    H = np.zeros(len(eps_grid))
    for sa, sb in [(-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0)]:
        p = ((a == sa) & (b == sb)).sum(axis=1) / n_pairs
        with np.errstate(divide="ignore", invalid="ignore"):
            term = np.where(p > 0, -p * np.log(p) / np.log(6.0), 0.0)
        H += term
    return H


def information_content_features(
    s: MinimizationSample, settings: IcSettings | None = None
) -> dict[str, float]:
    """Entropy of slope-sign fluctuations along a nearest-neighbor tour."""
    settings = settings or IcSettings()
    phi = tour_slopes(s, settings.tour_seed)
    eps_grid = settings.grid()
    H = entropy_curve(phi, eps_grid)

    h_max = float(H.max())
    if h_max == 0.0:
        raise DegenerateSample(
            "slope symbols carry no information (constant or single-sign equal slopes)"
        )
    eps_max = float(eps_grid[int(np.argmax(H))])

    pos = eps_grid > 0
    def smallest_eps_below(threshold: float) -> float:
        ok = pos & (H < threshold)
        if not ok.any():
            raise DegenerateSample(f"no epsilon with H below {threshold}")
        return float(eps_grid[int(np.argmax(ok))])

    eps_s = smallest_eps_below(settings.h_threshold)
    eps_ratio = smallest_eps_below(0.5 * h_max)

    # M(0): drop neutral symbols, collapse runs of equal symbols.
    sym0 = np.sign(phi) * (np.abs(phi) > 0)
    s0 = sym0[sym0 != 0]
    if s0.size == 0:
        m0 = 0.0
    else:
        m0 = (1 + int(np.count_nonzero(np.diff(s0)))) / (s.n - 1)

    return {
        "ic.h.max": h_max,
        "ic.eps.s": float(np.log10(eps_s)),
        "ic.eps.max": eps_max,
        "ic.eps.ratio": float(np.log10(eps_ratio)),
        "ic.m0": float(m0),
    }


def _fit_adj_r2(A: np.ndarray, y: np.ndarray) -> tuple[float, np.ndarray]:
    """Least squares through SVD; returns adjusted R^2 and the coefficients."""
    n, p_plus_1 = A.shape
    p = p_plus_1 - 1  # non-intercept coefficients
    if n <= p + 1:
        raise InsufficientData(f"need more than {p + 1} rows for {p} coefficients, got {n}")
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        raise DegenerateSample("y is constant; R^2 is undefined")
    coef, _, rank, _ = np.linalg.lstsq(A, y, rcond=1e-10)
    if rank < p_plus_1:
        raise SingularFit(f"model matrix rank {rank} < {p_plus_1}")
    ss_res = float(np.sum((y - A @ coef) ** 2))
    r2 = 1.0 - ss_res / ss_tot
    adj = 1.0 - (1.0 - r2) * (n - 1) / (n - p - 1)
    return adj, coef


def meta_model_features(s: MinimizationSample) -> dict[str, float]:
    """Adjusted R^2 of linear, linear-with-interactions, and quadratic fits."""
    X, y, n, d = s.X, s.y, s.n, s.dim
    ones = np.ones((n, 1))
    A_lin = np.hstack([ones, X])
    iu, ju = np.triu_indices(d, k=1)
    A_int = np.hstack([ones, X, X[:, iu] * X[:, ju]])
    A_quad = np.hstack([ones, X, X**2])

    adj_lin, coef_lin = _fit_adj_r2(A_lin, y)
    adj_int, _ = _fit_adj_r2(A_int, y)
    adj_quad, _ = _fit_adj_r2(A_quad, y)
    return {
        "lin_simple.adj_r2": adj_lin,
        "lin_simple.intercept": float(coef_lin[0]),
        "lin_w_interact.adj_r2": adj_int,
        "quad_simple.adj_r2": adj_quad,
    }


def _pearson(u: np.ndarray, v: np.ndarray) -> float:
    if np.std(u) == 0.0 or np.std(v) == 0.0:
        raise DegenerateSample("correlation input has zero variance")
    return float(np.corrcoef(u, v)[0, 1])


def nbc_features(s: MinimizationSample) -> dict[str, float]:
    """Nearest-neighbor versus nearest-better-neighbor distance statistics."""
    if s.n < 5:
        raise InsufficientData("nearest-better features need at least 5 points")
    y = s.y
    if np.unique(y).size < 2:
        raise DegenerateSample("need at least two distinct y values")
    D = squareform(pdist(s.X))
    np.fill_diagonal(D, np.inf)
    d_nn = D.min(axis=1)

    better = y[None, :] < y[:, None]  # better[i, j]: j strictly better than i
    Db = np.where(better, D, np.inf)
    d_nb_all = Db.min(axis=1)
    has_better = np.isfinite(d_nb_all)
    d_nb = d_nb_all[has_better]
    if d_nb.size < 2:
        raise InsufficientData("fewer than 2 points have a strictly better neighbor")
    d_nn_inc = d_nn[has_better]

    sd_nb = float(np.std(d_nb, ddof=1))
    mean_nb = float(np.mean(d_nb))
    if sd_nb == 0.0 or mean_nb == 0.0:
        raise DegenerateSample("nearest-better distances have no spread")

    ratio = d_nn_inc / d_nb
    mean_ratio_cv = float(np.mean(ratio))
    if mean_ratio_cv == 0.0:
        raise DegenerateSample("nearest-neighbor/nearest-better ratios are all zero")

    indegree = np.zeros(s.n)
    nb_target = np.argmin(Db, axis=1)  # lowest index on ties
    for i in np.flatnonzero(has_better):
        indegree[nb_target[i]] += 1

    return {
        "nbc.nn_nb.sd_ratio": float(np.std(d_nn, ddof=1)) / sd_nb,
        "nbc.nn_nb.mean_ratio": float(np.mean(d_nn)) / mean_nb,
        "nbc.nn_nb.cor": _pearson(d_nn_inc, d_nb),
        "nbc.dist_ratio.coeff_var": float(np.std(ratio, ddof=1)) / mean_ratio_cv,
        "nbc.nb_fitness.cor": _pearson(indegree, y),
    }


MIN_SAMPLE_FACTOR = 5  # compute_all needs n >= 5 * dim


def compute_all(
    s: MinimizationSample, settings: IcSettings | None = None
) -> LandscapeFeatures:
    """All 20 features; raises FeatureFamilyError naming every failing family."""
    if s.n < MIN_SAMPLE_FACTOR * s.dim:
        raise InsufficientData(
            f"need at least {MIN_SAMPLE_FACTOR}*d = {MIN_SAMPLE_FACTOR * s.dim} rows, got {s.n}"
        )
    values: dict[str, float] = {}
    failures: dict[str, Exception] = {}
    families = [
        ("dispersion", lambda: dispersion_features(s)),
        ("distribution", lambda: distribution_features(s.y)),
        ("information_content", lambda: information_content_features(s, settings)),
        ("meta_model", lambda: meta_model_features(s)),
        ("nbc", lambda: nbc_features(s)),
    ]
    for name, fn in families:
        try:
            values.update(fn())
        except NasLandscapeError as e:
            failures[name] = e
    if failures:
        raise FeatureFamilyError(failures)
    return LandscapeFeatures(values)
