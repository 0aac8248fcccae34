"""Place landscapes on the BBOB map: bootstrap, cluster, cut, and embed.

Three benchmark functions with distinct characters (sphere f1, bent cigar
f12, Gallagher f21) are sampled, their bootstrapped feature clouds are
clustered with complete linkage, and a 2-D classical-MDS view of the cloud
centers shows the separation. The same recipe applies to an evaluated DOE
of trained networks via the CSV pipeline.
"""

import numpy as np

from nas_landscape.bbob import lhs_box, make_instance
from nas_landscape.clustering import classical_mds, cut, hierarchical_cluster
from nas_landscape.ela_features import MinimizationSample, compute_all
from nas_landscape.sampling import BootstrapPlan, bootstrap_indices

dim, n = 10, 300
plan = BootstrapPlan(subsample_size=240, repetitions=10, seed=0)

labels, rows = [], []
for fid in (1, 12, 21):
    inst = make_instance(fid, 1, dim)
    X = lhs_box(n, dim, seed=fid)
    y = inst.evaluate_batch(X)
    for idx in bootstrap_indices(n, plan):
        rows.append(compute_all(MinimizationSample(X[idx], y[idx])).as_array())
        labels.append(f"f{fid}")
V = np.vstack(rows)
print(f"feature cloud: {V.shape[0]} bootstrap replicates x {V.shape[1]} features")

dendro = hierarchical_cluster(V, labels)
assignment = cut(dendro, 3)
print("\ncut at 3 clusters:")
for c in np.unique(assignment):
    members = sorted({labels[i] for i in np.flatnonzero(assignment == c)})
    count = int(np.sum(assignment == c))
    print(f"  cluster {c}: {count} replicates, functions {members}")

emb = classical_mds(points=(V - V.mean(axis=0)) / V.std(axis=0))
print(
    f"\n2-D classical MDS (positive-mass fraction "
    f"{emb.positive_mass_fraction:.2f}); cloud centers:"
)
for fid in ("f1", "f12", "f21"):
    mask = np.array([l == fid for l in labels])
    cx, cy = emb.coords[mask].mean(axis=0)
    print(f"  {fid:>4s}: ({cx:+8.3f}, {cy:+8.3f})")
