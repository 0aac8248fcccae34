"""Trainer for CNN configurations sampled from the 23-parameter search space."""

from .data import DatasetUnavailable, SplitData, load_dataset
from .model import (
    ArchitectureRow,
    InvalidArchitecture,
    TrainingConfig,
    build_model,
    count_parameters,
    describe_model,
)
from .schema import CANONICAL_NAMES, SchemaError, read_design_csv
from .train import evaluate_row, run_rows

__version__ = "0.1.0"

__all__ = [
    "ArchitectureRow",
    "CANONICAL_NAMES",
    "DatasetUnavailable",
    "InvalidArchitecture",
    "SchemaError",
    "SplitData",
    "TrainingConfig",
    "build_model",
    "count_parameters",
    "describe_model",
    "evaluate_row",
    "load_dataset",
    "read_design_csv",
    "run_rows",
    "__version__",
]
