"""Sample the CNN search space, inspect it, and shrink it around the winners.

The accuracy of a real run comes from training each architecture (see the
trainer package); here a cheap synthetic response stands in so the script
runs in seconds.
"""

import numpy as np

from nas_landscape.analysis import PointMass, pearson_correlations, top_k_densities
from nas_landscape.design_space import EvaluatedDoe, builtin_space, reduce_range
from nas_landscape.sampling import DoePlan, lhs_sample

space = builtin_space("initial")
print(f"initial space: {len(space.names)} parameters")
for spec in space.parameters[:4]:
    print(f"  {spec.name}: ({spec.lo:g}, {spec.hi:g}] {spec.kind}")
print("  ...")

n = 500
X = lhs_sample(DoePlan(space, n, seed=0))
print(f"\nLatin hypercube design: {X.shape[0]} rows x {X.shape[1]} columns")

# synthetic stand-in for trained accuracy: reward mid-range learning rates
# and larger first-stack filter counts, with a little noise
rng = np.random.default_rng(0)
lr = X[:, space.names.index("lr")]
filters_0 = X[:, space.names.index("filters_0")]
accuracy = (
    0.5
    + 0.3 * np.exp(-((np.log10(lr) + 2.5) ** 2))
    + 0.15 * (filters_0 - 10) / 590
    + rng.normal(0, 0.02, n)
)
doe = EvaluatedDoe(X=X, accuracy=np.clip(accuracy, 0, 1))

report = pearson_correlations(doe, space)
order = np.argsort(-np.abs(np.nan_to_num(report.accuracy)))
print("\nstrongest parameter/accuracy correlations:")
for j in order[:5]:
    print(f"  {report.parameter_names[j]:>12s}  r = {report.accuracy[j]:+.3f}")

print("\ntop-50 per-parameter densities (medians):")
for name, curve in list(top_k_densities(doe, space, k=50).items())[:6]:
    kind = "point mass" if isinstance(curve, PointMass) else "kde"
    print(f"  {name:>12s}  median = {curve.median:10.4g}  ({kind})")

reduced = reduce_range(doe, space, k=50)
print("\nreduced ranges from the 50 best rows:")
for before, after in zip(space.parameters, reduced.parameters):
    if (before.lo, before.hi) != (after.lo, after.hi):
        print(
            f"  {before.name:>12s}  ({before.lo:g}, {before.hi:g}] -> "
            f"({after.lo:g}, {after.hi:g}]"
        )
