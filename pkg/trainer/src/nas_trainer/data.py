"""Dataset loading with a deterministic, seeded train/validation split."""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
import torch

DATA_ROOT = os.environ.get(
    "NAS_TRAINER_DATA", os.path.join(os.path.expanduser("~"), ".cache", "nas-trainer")
)


class DatasetUnavailable(RuntimeError):
    """The requested dataset could not be loaded or fetched locally."""


@dataclass
class SplitData:
    x_train: torch.Tensor
    y_train: torch.Tensor
    x_val: torch.Tensor
    y_val: torch.Tensor
    input_shape: tuple[int, int, int]
    num_classes: int


def _split(images: np.ndarray, labels: np.ndarray, val_fraction: float,
           seed: int, subset: int | None) -> SplitData:
    n = images.shape[0]
    perm = np.random.default_rng(seed).permutation(n)
    n_val = max(1, int(round(val_fraction * n)))
    val_idx, train_idx = perm[:n_val], perm[n_val:]
    if subset is not None:
        train_idx = train_idx[:subset]
    x = torch.as_tensor(images, dtype=torch.float32)
    y = torch.as_tensor(labels, dtype=torch.long)
    shape = tuple(x.shape[1:])
    return SplitData(
        x_train=x[train_idx], y_train=y[train_idx],
        x_val=x[val_idx], y_val=y[val_idx],
        input_shape=shape, num_classes=int(y.max()) + 1,
    )


def _torchvision_arrays(name: str) -> tuple[np.ndarray, np.ndarray]:
    try:
        from torchvision import datasets
    except ImportError as e:
        raise DatasetUnavailable(f"torchvision not installed: {e}") from e
    cls = {
        "mnist": datasets.MNIST,
        "fashion": datasets.FashionMNIST,
        "cifar10": datasets.CIFAR10,
    }[name]
    try:
        ds = cls(DATA_ROOT, train=True, download=True)
    except Exception as e:  # fetch failure, missing files, no network
        raise DatasetUnavailable(f"could not load {name}: {e}") from e
    images = np.asarray(ds.data, dtype=np.float32) / 255.0
    if images.ndim == 3:
        images = images[:, None, :, :]  # grayscale -> channel axis
    else:
        images = images.transpose(0, 3, 1, 2)  # HWC -> CHW
    labels = np.asarray(ds.targets, dtype=np.int64)
    return images, labels


def _digits_arrays() -> tuple[np.ndarray, np.ndarray]:
    try:
        from sklearn.datasets import load_digits
    except ImportError as e:
        raise DatasetUnavailable(f"scikit-learn not installed: {e}") from e
    bunch = load_digits()
    images = (bunch.images.astype(np.float32) / 16.0)[:, None, :, :]
    return images, bunch.target.astype(np.int64)


def load_dataset(name: str, val_fraction: float = 0.20, seed: int = 0,
                 subset: int | None = None) -> SplitData:
    """Load one of mnist | fashion | cifar10 | digits with a seeded split.

    digits is scikit-learn's bundled 8x8 set and always works offline; the
    others require a local or fetchable torchvision copy.
    """
    if name == "digits":
        images, labels = _digits_arrays()
    elif name in ("mnist", "fashion", "cifar10"):
        images, labels = _torchvision_arrays(name)
    else:
        raise ValueError(f"unknown dataset {name!r}")
    return _split(images, labels, val_fraction, seed, subset)
