"""Training loop and the row-by-row evaluation driver."""

from __future__ import annotations

import sys
import time

import numpy as np
import torch
from torch import nn

from .data import SplitData
from .model import ArchitectureRow, TrainingConfig, build_model, make_optimizer


def evaluate_row(row: ArchitectureRow, data: SplitData, config: TrainingConfig,
                 seed: int = 0) -> tuple[float, float]:
    """Train one configuration; returns (validation accuracy, wall seconds).

    Divergence is not an error: whatever accuracy the run reaches is the
    result.  InvalidArchitecture and resource errors propagate to the caller.
    """
    torch.manual_seed(seed)
    t0 = time.perf_counter()
    model = build_model(row, data.input_shape, data.num_classes)
    optimizer = make_optimizer(model, row, momentum=config.momentum)
    loss_fn = nn.CrossEntropyLoss()

    n = data.x_train.shape[0]
    model.train()
    for epoch in range(config.epochs):
        order = torch.randperm(n)
        for start in range(0, n, config.batch_size):
            idx = order[start:start + config.batch_size]
            optimizer.zero_grad()
            loss = loss_fn(model(data.x_train[idx]), data.y_train[idx])
            if torch.isfinite(loss):
                loss.backward()
                optimizer.step()

    model.eval()
    correct = 0
    with torch.no_grad():
        for start in range(0, data.x_val.shape[0], 512):
            batch = data.x_val[start:start + 512]
            pred = model(batch).argmax(dim=1)
            correct += int((pred == data.y_val[start:start + 512]).sum())
    accuracy = correct / data.x_val.shape[0]
    return accuracy, time.perf_counter() - t0


def run_rows(X: np.ndarray, data: SplitData, config: TrainingConfig,
             seed: int = 0, log=sys.stderr) -> list[tuple[int, float, float] | tuple[int, str]]:
    """Evaluate each design row in index order.

    Returns (row_index, accuracy, cpu_time) per success and (row_index,
    diagnostic) per failure; a failing row never stops the remaining ones.
    """
    results: list[tuple[int, float, float] | tuple[int, str]] = []
    for i, values in enumerate(X):
        row = ArchitectureRow(tuple(float(v) for v in values))
        try:
            accuracy, cpu_time = evaluate_row(row, data, config, seed=seed + i)
        except Exception as e:
            print(f"row {i}: FAILED ({type(e).__name__}: {e})", file=log)
            results.append((i, f"{type(e).__name__}: {e}"))
            continue
        print(f"row {i}: accuracy {accuracy:.4f} in {cpu_time:.1f}s", file=log)
        results.append((i, accuracy, cpu_time))
    return results
