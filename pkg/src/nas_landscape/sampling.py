"""Seeded Latin hypercube designs and without-replacement bootstrap index sets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .design_space import DesignSpace
from .errors import InsufficientData


@dataclass(frozen=True)
class DoePlan:
    space: DesignSpace
    n: int
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")


@dataclass(frozen=True)
class BootstrapPlan:
    subsample_size: int = 800
    repetitions: int = 30
    seed: int = 0

    def __post_init__(self):
        if self.subsample_size < 1:
            raise ValueError("subsample_size must be >= 1")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


def _sub_rng(seed: int, index: int) -> np.random.Generator:
    # Fixed split of the master seed so replicates can run in parallel.
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


def lhs_unit(n: int, dim: int, seed: int) -> np.ndarray:
    """Plain random LHS on the half-open unit box (0, 1]^dim.

    Column j places exactly one point in each stratum ((i)/n, (i+1)/n].
    """
    U = np.empty((n, dim))
    for j in range(dim):
        rng = _sub_rng(seed, j)
        perm = rng.permutation(n)
        # 1 - random() lies in (0, 1]: keeps samples off the exclusive lower edge.
        within = 1.0 - rng.random(n)
        U[:, j] = (perm + within) / n
    return U


def lhs_sample(plan: DoePlan, return_continuous: bool = False):
    """Latin hypercube sample of the design space.

    Integer columns are rounded to the nearest representable value after
    stratified sampling; the pre-rounding matrix satisfies the exact
    one-point-per-stratum property and is returned when asked for.
    """
    space, n = plan.space, plan.n
    U = lhs_unit(n, space.dim, plan.seed)
    lo, hi = space.lo, space.hi
    cont = lo + U * (hi - lo)
    X = cont.copy()
    for j, p in enumerate(space.parameters):
        if p.kind == "integer":
            X[:, j] = [p.round_into(v) for v in cont[:, j]]
    if return_continuous:
        return X, cont
    return X


def check_stratification(cont: np.ndarray, space: DesignSpace) -> bool:
    """True iff every column has exactly one pre-rounding sample per stratum."""
    n = cont.shape[0]
    lo, hi = space.lo, space.hi
    # Values lie in (lo, hi]; ceil maps stratum ((i)w, (i+1)w] to index i.
    idx = np.ceil((cont - lo) / (hi - lo) * n).astype(int) - 1
    for j in range(cont.shape[1]):
        if not np.array_equal(np.sort(idx[:, j]), np.arange(n)):
            return False
    return True


def bootstrap_indices(n: int, plan: BootstrapPlan) -> list[np.ndarray]:
    """Seeded without-replacement subsamples of {0..n-1}, one per repetition."""
    if plan.subsample_size > n:
        raise InsufficientData(
            f"subsample_size {plan.subsample_size} exceeds population size {n}"
        )
    out = []
    for r in range(plan.repetitions):
        rng = _sub_rng(plan.seed, r)
        out.append(np.sort(rng.choice(n, size=plan.subsample_size, replace=False)))
    return out
