"""Complete-linkage agglomerative clustering and classical (Torgerson) MDS."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .errors import NonFiniteInput, SchemaError


@dataclass(frozen=True)
class Merge:
    left: int
    right: int
    height: float
    size: int


@dataclass
class Dendrogram:
    """Full merge tree; leaf ids are 0..m-1, internal nodes m, m+1, ...."""

    merges: list[Merge]
    labels: list[str]
    dropped_columns: list[str] = field(default_factory=list)

    @property
    def n_leaves(self) -> int:
        return len(self.labels)

    def heights(self) -> np.ndarray:
        return np.array([m.height for m in self.merges])

    def to_json(self) -> str:
        return json.dumps(
            {
                "labels": self.labels,
                "merges": [
                    {"left": m.left, "right": m.right, "height": m.height, "size": m.size}
                    for m in self.merges
                ],
                "dropped_columns": self.dropped_columns,
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "Dendrogram":
        try:
            doc = json.loads(text)
            merges = [
                Merge(int(m["left"]), int(m["right"]), float(m["height"]), int(m["size"]))
                for m in doc["merges"]
            ]
            return cls(merges, list(doc["labels"]), list(doc.get("dropped_columns", [])))
        except (KeyError, TypeError, json.JSONDecodeError) as e:
            raise SchemaError(f"invalid dendrogram document: {e}") from e


@dataclass
class Embedding2D:
    coords: np.ndarray  # (m, k)
    eigenvalues: np.ndarray  # the k eigenvalues used, descending
    positive_mass_fraction: float


def standardize_columns(V: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Z-score columns; zero-variance columns are dropped (their indices returned)."""
    V = np.asarray(V, dtype=float)
    sd = V.std(axis=0, ddof=0)
    keep = sd > 0
    Z = (V[:, keep] - V[:, keep].mean(axis=0)) / sd[keep]
    return Z, list(np.flatnonzero(~keep))


def hierarchical_cluster(
    vectors: np.ndarray,
    labels: list[str] | None = None,
    standardize: bool = True,
) -> Dendrogram:
    """Agglomerative complete-linkage clustering with deterministic tie-breaks.

    Inter-cluster distance is the maximum pairwise Euclidean distance; ties
    pick the lexicographically smallest (left id, right id) pair.  Naive
    O(m^3) agglomeration, fine for the few hundred rows used here.
    """
    V = np.asarray(vectors, dtype=float)
    if V.ndim != 2 or V.shape[0] < 2:
        raise ValueError("need a 2-D matrix with at least 2 rows")
    if not np.isfinite(V).all():
        raise NonFiniteInput("feature vectors contain non-finite entries")
    m = V.shape[0]
    labels = list(labels) if labels is not None else [str(i) for i in range(m)]
    if len(labels) != m:
        raise ValueError("labels length must match the number of rows")

    dropped: list[str] = []
    if standardize:
        V, dropped_idx = standardize_columns(V)
        dropped = [str(i) for i in dropped_idx]
        if V.shape[1] == 0:
            V = np.zeros((m, 1))

    # complete-linkage distance between active clusters, inactive slots at inf
    CD = squareform(pdist(V))
    np.fill_diagonal(CD, np.inf)
    sizes = np.ones(m, dtype=int)
    node_id = np.arange(m)
    merges: list[Merge] = []

    for step in range(m - 1):
        dmin = CD.min()
        ai, bi = np.nonzero(np.triu(CD == dmin, k=1))
        # tie-break: lexicographically smallest (left node id, right node id)
        pairs = np.sort(np.stack([node_id[ai], node_id[bi]]), axis=0)
        pick = int(np.lexsort((pairs[1], pairs[0]))[0])
        a, b = int(ai[pick]), int(bi[pick])
        left, right = int(pairs[0, pick]), int(pairs[1, pick])
        merges.append(Merge(left, right, float(dmin), int(sizes[a] + sizes[b])))

        # Lance-Williams update for complete linkage: new dist = max(d(a,.), d(b,.))
        np.maximum(CD[a], CD[b], out=CD[a])
        CD[:, a] = CD[a]
        CD[a, a] = np.inf
        CD[b, :] = CD[:, b] = np.inf
        sizes[a] += sizes[b]
        node_id[a] = m + step

    return Dendrogram(merges, labels, dropped)


def cut(dendrogram: Dendrogram, num_clusters: int) -> np.ndarray:
    """Leaf -> cluster labels after removing the num_clusters - 1 highest merges."""
    m = dendrogram.n_leaves
    if not 1 <= num_clusters <= m:
        raise ValueError(f"num_clusters must be in 1..{m}")
    parent = list(range(2 * m - 1))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    # merges are height-sorted for complete linkage; keep the first m - k
    for idx, mg in enumerate(dendrogram.merges[: m - num_clusters]):
        node = m + idx
        parent[find(mg.left)] = node
        parent[find(mg.right)] = node

    roots = {}
    out = np.empty(m, dtype=int)
    for leaf in range(m):
        r = find(leaf)
        if r not in roots:
            roots[r] = len(roots)
        out[leaf] = roots[r]
    return out


def classical_mds(
    points: np.ndarray | None = None,
    distances: np.ndarray | None = None,
    k: int = 2,
) -> Embedding2D:
    """Torgerson double-centering MDS on points or a distance matrix."""
    if (points is None) == (distances is None):
        raise ValueError("pass exactly one of points or distances")
    if points is not None:
        P = np.asarray(points, dtype=float)
        if not np.isfinite(P).all():
            raise NonFiniteInput("points contain non-finite entries")
        D = squareform(pdist(P))
    else:
        D = np.asarray(distances, dtype=float)
        if not np.isfinite(D).all():
            raise NonFiniteInput("distance matrix contains non-finite entries")
        if D.ndim != 2 or D.shape[0] != D.shape[1]:
            raise ValueError("distance matrix must be square")
        if not np.allclose(D, D.T, atol=1e-10) or np.any(np.diag(D) != 0) or np.any(D < 0):
            raise ValueError("distance matrix must be symmetric, non-negative, zero-diagonal")

    n = D.shape[0]
    J = np.eye(n) - np.ones((n, n)) / n
    B = -0.5 * J @ (D**2) @ J
    evals, evecs = np.linalg.eigh(B)
    order = np.argsort(evals)[::-1]
    evals, evecs = evals[order], evecs[:, order]

    top = evals[:k]
    clamped = np.maximum(top, 0.0)
    coords = evecs[:, :k] * np.sqrt(clamped)
    # sign convention: the largest-magnitude entry of each column is positive
    for j in range(coords.shape[1]):
        col = coords[:, j]
        if col.any():
            i = int(np.argmax(np.abs(col)))
            if col[i] < 0:
                coords[:, j] = -col

    pos_total = float(np.sum(evals[evals > 0]))
    frac = float(np.sum(clamped) / pos_total) if pos_total > 0 else 0.0
    return Embedding2D(coords=coords, eigenvalues=top, positive_mass_fraction=frac)
