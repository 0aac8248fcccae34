"""Command-line front end: deterministic batch pipeline over documented CSV/JSON files."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (
    DensityCurve,
    knn_distance_stats,
    pearson_correlations,
    top_k_densities,
)
from .bbob import bbob_feature_table
from .clustering import classical_mds, cut, hierarchical_cluster
from .design_space import builtin_space, rescale_to_box, reduce_range, DesignSpace
from .doe_io import (
    read_evaluated_csv,
    read_feature_csv,
    write_design_csv,
    write_evaluated_csv,
    write_feature_csv,
)
from .ela_features import (
    FeatureFamilyError,
    MinimizationSample,
    compute_all,
    orient_for_minimization,
)
from .errors import NasLandscapeError
from .sampling import BootstrapPlan, DoePlan, bootstrap_indices, check_stratification, lhs_sample


def _write_output(path: str, text: str, command: str, params: dict) -> None:
    out = Path(path)
    out.write_text(text)
    manifest = {
        "command": command,
        "output": str(out),
        "parameters": params,
        "tool_version": __version__,
        "written_at": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }
    Path(str(out) + ".manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def _load_space(spec: str) -> DesignSpace:
    if spec in ("initial", "reduced"):
        return builtin_space(spec)
    return DesignSpace.from_json(Path(spec).read_text())


def _parse_bootstrap(text: str) -> BootstrapPlan:
    try:
        size, reps = text.lower().split("x")
        return BootstrapPlan(subsample_size=int(size), repetitions=int(reps))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected SIZExREPS, e.g. 800x30: {e}") from e


def cmd_doe(args) -> None:
    space = _load_space(args.space)
    X, cont = lhs_sample(DoePlan(space, args.n, args.seed), return_continuous=True)
    ok = check_stratification(cont, space)
    _write_output(args.out, write_design_csv(X, space.names), "doe", vars_of(args))
    print(f"wrote {args.n} rows; stratification check: {'pass' if ok else 'FAIL'}")


def cmd_features(args) -> None:
    space = _load_space(args.space)
    doe = read_evaluated_csv(Path(args.input).read_text(), names=space.names)
    Z = rescale_to_box(doe.X, space)
    y = orient_for_minimization(doe.accuracy)
    label = args.dataset or doe.dataset_label or "doe"
    rows, failures = [], []
    if args.bootstrap is None:
        rows.append((label, 0, compute_all(MinimizationSample(Z, y))))
    else:
        plan = BootstrapPlan(
            subsample_size=args.bootstrap.subsample_size,
            repetitions=args.bootstrap.repetitions,
            seed=args.seed,
        )
        for r, idx in enumerate(bootstrap_indices(doe.n, plan), start=1):
            try:
                rows.append((label, r, compute_all(MinimizationSample(Z[idx], y[idx]))))
            except FeatureFamilyError as e:
                failures.append({"replicate": r, "error": str(e)})
    _write_output(args.out, write_feature_csv(rows), "features", vars_of(args))
    if failures:
        print(json.dumps({"failed_replicates": failures}), file=sys.stderr)
    print(f"wrote {len(rows)} feature row(s)")


def cmd_bbob(args) -> None:
    fids = [int(f) for f in args.fids.split(",")] if args.fids else list(range(1, 25))
    rows = []
    for fid, instance, feats in bbob_feature_table(
        dim=args.dim, instances=range(1, args.instances + 1), n=args.n, seed=args.seed,
        fids=fids,
    ):
        rows.append((f"bbob-f{fid}-i{instance}", 0, feats))
    _write_output(args.out, write_feature_csv(rows), "bbob", vars_of(args))
    print(f"wrote {len(rows)} feature row(s)")


def cmd_cluster(args) -> None:
    mats, labels = [], []
    for path in args.inputs:
        V, labs, _ = read_feature_csv(Path(path).read_text())
        mats.append(V)
        labels.extend(labs)
    V = np.vstack(mats)
    dendro = hierarchical_cluster(V, labels, standardize=not args.no_standardize)
    _write_output(args.out, dendro.to_json() + "\n", "cluster", vars_of(args))
    print(f"{dendro.n_leaves} leaves, {len(dendro.merges)} merges")
    if args.cut is not None:
        assignment = cut(dendro, args.cut)
        lines = ["label,cluster"] + [
            f"{lab},{c}" for lab, c in zip(labels, assignment)
        ]
        labels_out = args.labels_out or (str(Path(args.out)) + ".labels.csv")
        _write_output(labels_out, "\n".join(lines) + "\n", "cluster-cut", vars_of(args))
        purity = _purity(labels, assignment)
        print(f"cut at {args.cut}: purity = {purity:.4f}")


def _purity(labels: list[str], assignment: np.ndarray) -> float:
    total = 0
    for c in np.unique(assignment):
        members = [labels[i] for i in np.flatnonzero(assignment == c)]
        total += max(members.count(l) for l in set(members))
    return total / len(labels)


def cmd_mds(args) -> None:
    space = _load_space(args.space)
    doe = read_evaluated_csv(Path(args.input).read_text(), names=space.names)
    Z = rescale_to_box(doe.X, space)
    if np.unique(Z, axis=0).shape[0] != Z.shape[0]:
        raise NasLandscapeError("duplicate design rows; remove them before embedding")
    emb = classical_mds(points=Z)
    lines = ["label,mds_1,mds_2,accuracy"]
    for i in range(doe.n):
        lines.append(
            f"{doe.dataset_label or 'doe'}-{i},{emb.coords[i, 0]!r},{emb.coords[i, 1]!r},{doe.accuracy[i]!r}"
        )
    _write_output(args.out, "\n".join(lines) + "\n", "mds", vars_of(args))
    print(f"wrote {doe.n}-row embedding; positive-mass fraction {emb.positive_mass_fraction:.3f}")


def cmd_correlate(args) -> None:
    space = _load_space(args.space)
    doe = read_evaluated_csv(Path(args.input).read_text(), names=space.names)
    report = pearson_correlations(doe, space)
    _write_output(args.out, report.to_csv(), "correlate", vars_of(args))
    print(f"wrote correlations for {len(report.parameter_names)} parameters")


def cmd_reduce(args) -> None:
    space = _load_space(args.space)
    doe = read_evaluated_csv(Path(args.input).read_text(), names=space.names)
    reduced = reduce_range(doe, space, k=args.k)
    _write_output(args.out, reduced.to_json() + "\n", "reduce", vars_of(args))
    print(f"wrote reduced space from top-{args.k} rows")


def cmd_densities(args) -> None:
    space = _load_space(args.space)
    doe = read_evaluated_csv(Path(args.input).read_text(), names=space.names)
    curves = top_k_densities(doe, space, k=args.k)
    doc = {}
    for name, c in curves.items():
        if isinstance(c, DensityCurve):
            doc[name] = {
                "grid": c.grid.tolist(),
                "density": c.density.tolist(),
                "bandwidth": c.bandwidth,
                "median": c.median,
            }
        else:
            doc[name] = {"point_mass": c.value, "median": c.median}
    _write_output(args.out, json.dumps(doc, indent=2) + "\n", "densities", vars_of(args))
    print(f"wrote densities for {len(doc)} parameters")


def cmd_knn(args) -> None:
    mats, labels = [], []
    for path in args.inputs:
        V, labs, _ = read_feature_csv(Path(path).read_text())
        mats.append(V)
        labels.extend(labs)
    V = np.vstack(mats)
    if not args.no_standardize:
        from .clustering import standardize_columns

        V, _ = standardize_columns(V)
    queries = args.labels.split(",") if args.labels else None
    stats = knn_distance_stats(V, labels, k=args.k, query_labels=queries)
    _write_output(args.out, json.dumps(stats, indent=2) + "\n", "knn", vars_of(args))
    print(f"wrote knn stats for {len(stats)} label(s)")


def vars_of(args) -> dict:
    d = {k: v for k, v in vars(args).items() if k != "func"}
    if isinstance(d.get("bootstrap"), BootstrapPlan):
        d["bootstrap"] = f"{d['bootstrap'].subsample_size}x{d['bootstrap'].repetitions}"
    return d


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nas-landscape")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("doe", help="generate a Latin hypercube design CSV")
    d.add_argument("--space", default="initial")
    d.add_argument("--n", type=int, default=1000)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--out", required=True)
    d.set_defaults(func=cmd_doe)

    f = sub.add_parser("features", help="compute the 20 landscape features")
    f.add_argument("--in", dest="input", required=True)
    f.add_argument("--space", default="initial")
    f.add_argument("--bootstrap", type=_parse_bootstrap, default=None, metavar="SIZExREPS")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--dataset", default="")
    f.add_argument("--out", required=True)
    f.set_defaults(func=cmd_features)

    b = sub.add_parser("bbob", help="feature table over the BBOB suite")
    b.add_argument("--dim", type=int, default=23)
    b.add_argument("--instances", type=int, default=20)
    b.add_argument("--n", type=int, default=1000)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--fids", default="", help="comma-separated subset, default all 24")
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_bbob)

    c = sub.add_parser("cluster", help="complete-linkage clustering of feature CSVs")
    c.add_argument("inputs", nargs="+")
    c.add_argument("--cut", type=int, default=None)
    c.add_argument("--labels-out", default=None)
    c.add_argument("--no-standardize", action="store_true")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_cluster)

    m = sub.add_parser("mds", help="classical MDS embedding of an evaluated DOE")
    m.add_argument("--in", dest="input", required=True)
    m.add_argument("--space", default="initial")
    m.add_argument("--out", required=True)
    m.set_defaults(func=cmd_mds)

    r = sub.add_parser("correlate", help="parameter/response Pearson correlations")
    r.add_argument("--in", dest="input", required=True)
    r.add_argument("--space", default="initial")
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_correlate)

    rd = sub.add_parser("reduce", help="top-k range reduction of the design space")
    rd.add_argument("--in", dest="input", required=True)
    rd.add_argument("--space", default="initial")
    rd.add_argument("--k", type=int, default=50)
    rd.add_argument("--out", required=True)
    rd.set_defaults(func=cmd_reduce)

    dn = sub.add_parser("densities", help="top-k per-parameter KDE curves")
    dn.add_argument("--in", dest="input", required=True)
    dn.add_argument("--space", default="initial")
    dn.add_argument("--k", type=int, default=50)
    dn.add_argument("--out", required=True)
    dn.set_defaults(func=cmd_densities)

    k = sub.add_parser("knn", help="nearest-neighbour distance statistics")
    k.add_argument("inputs", nargs="+")
    k.add_argument("--k", type=int, default=20)
    k.add_argument("--labels", default="", help="comma-separated query labels; default all")
    k.add_argument("--no-standardize", action="store_true")
    k.add_argument("--out", required=True)
    k.set_defaults(func=cmd_knn)

    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (NasLandscapeError, OSError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
