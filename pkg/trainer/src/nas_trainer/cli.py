"""Command-line driver: design CSV in, evaluated CSV out."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .data import DatasetUnavailable, load_dataset
from .model import TrainingConfig
from .schema import SchemaError, evaluated_header_line, evaluated_row_line, read_design_csv
from .train import run_rows


def _parse_rows(text: str, n: int) -> slice:
    try:
        a, b = text.split(":")
        return slice(int(a) if a else 0, int(b) if b else n)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected a:b, e.g. 0:100: {e}") from e


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nas-trainer")
    p.add_argument("--in", dest="input", required=True, help="design CSV")
    p.add_argument("--out", required=True, help="evaluated CSV to write")
    p.add_argument("--dataset", default="mnist",
                   choices=["mnist", "fashion", "cifar10", "digits"])
    p.add_argument("--epochs", type=int, default=50)
    p.add_argument("--batch", type=int, default=100)
    p.add_argument("--val-frac", type=float, default=0.20)
    p.add_argument("--subset", type=int, default=None,
                   help="cap training images for smoke runs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rows", default=None, metavar="a:b",
                   help="evaluate only this index range for sharded runs")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        X = read_design_csv(Path(args.input).read_text())
    except (OSError, SchemaError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    sel = _parse_rows(args.rows, X.shape[0]) if args.rows else slice(0, X.shape[0])
    X = X[sel]
    config = TrainingConfig(
        epochs=args.epochs, batch_size=args.batch,
        val_fraction=args.val_frac, subset=args.subset,
    )
    try:
        data = load_dataset(args.dataset, val_fraction=args.val_frac,
                            seed=args.seed, subset=args.subset)
    except DatasetUnavailable as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    results = run_rows(X, data, config, seed=args.seed)
    failed = 0
    with open(args.out, "w") as fh:
        fh.write(evaluated_header_line())
        for result in results:
            if len(result) == 3:
                i, accuracy, cpu_time = result
                fh.write(evaluated_row_line(X[i], accuracy, cpu_time, args.dataset))
            else:
                failed += 1
    print(f"evaluated {len(results) - failed}/{len(results)} rows -> {args.out}")
    return 0 if failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
