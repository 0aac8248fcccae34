"""Compute the 20 landscape features on landscapes whose character we know.

A smooth sphere, a rugged noisy surface, and a random response give very
different dispersion, meta-model, information-content, and nearest-better
statistics; the printout makes the contrast concrete.
"""

import numpy as np

from nas_landscape.ela_features import (
    FEATURE_NAMES,
    MinimizationSample,
    compute_all,
)

rng = np.random.default_rng(7)
n, d = 400, 5
X = rng.uniform(-5, 5, (n, d))

landscapes = {
    "sphere": (X**2).sum(axis=1),
    "rugged": (X**2).sum(axis=1) + 8 * np.sin(3 * X).sum(axis=1),
    "random": rng.standard_normal(n),
}

rows = {name: compute_all(MinimizationSample(X, y)) for name, y in landscapes.items()}

header = " ".join(f"{name:>10s}" for name in rows)
print(f"{'feature':>26s} {header}")
for feat in FEATURE_NAMES:
    vals = " ".join(f"{rows[name][feat]:10.4f}" for name in rows)
    print(f"{feat:>26s} {vals}")

print(
    "\nreading guide: the sphere fits a quadratic almost perfectly "
    f"(quad adj-R2 = {rows['sphere']['quad_simple.adj_r2']:.4f}), the random "
    f"response does not ({rows['random']['quad_simple.adj_r2']:.4f}); "
    "dispersion ratios below 1 mean good points concentrate; higher ic.h.max "
    "means a more rugged fitness sequence along the sample tour."
)
