"""Build a CNN from one 23-parameter configuration row.

The network is three stacks of two convolutional layers plus a max-pool,
followed by two dense layers and a softmax output.  Both conv layers of
stack i share filters_i and stride s_i; kernel sizes k_0..k_5 are assigned
pairwise.  dropout_0..dropout_5 sit after the six conv layers, dropout_6
after the first dense layer.  A single l2 coefficient regularizes every
conv and dense kernel (applied as weight decay on the weight tensors), and
lr is the SGD learning rate with momentum 0.9.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import torch
from torch import nn

from .schema import CANONICAL_NAMES


class InvalidArchitecture(ValueError):
    """A layer's output feature map would be empty."""


@dataclass(frozen=True)
class ArchitectureRow:
    """One design-of-experiments row, keyed by the canonical parameter names."""

    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != len(CANONICAL_NAMES):
            raise ValueError(f"expected {len(CANONICAL_NAMES)} values, got {len(self.values)}")

    def __getitem__(self, name: str) -> float:
        return self.values[CANONICAL_NAMES.index(name)]

    def as_dict(self) -> dict[str, float]:
        return dict(zip(CANONICAL_NAMES, self.values))


@dataclass(frozen=True)
class TrainingConfig:
    epochs: int = 50
    batch_size: int = 100
    val_fraction: float = 0.20
    momentum: float = 0.9
    subset: int | None = None  # cap on training images for smoke runs

    def __post_init__(self):
        if not 0 < self.val_fraction < 1:
            raise ValueError("val_fraction must be in (0, 1)")
        if self.epochs < 1 or self.batch_size < 1:
            raise ValueError("epochs and batch_size must be positive")
        if self.subset is not None and self.subset < 1:
            raise ValueError("subset must be positive")


def _conv_out(size: int, k: int, stride: int) -> int:
    return (size + 2 * (k // 2) - k) // stride + 1


def build_model(row: ArchitectureRow, input_shape: tuple[int, int, int], num_classes: int) -> nn.Sequential:
    """Assemble the torch module for one configuration.

    input_shape is (channels, height, width).  Raises InvalidArchitecture if
    any feature map would collapse to nothing.
    """
    channels, h, w = input_shape
    layers: list[nn.Module] = []
    for stack in range(3):
        filters = int(row[f"filters_{stack}"])
        stride = int(row[f"s_{stack}"])
        for half in range(2):
            k = int(row[f"k_{2 * stack + half}"])
            layers.append(nn.Conv2d(channels, filters, k, stride=stride, padding=k // 2))
            layers.append(nn.ReLU())
            layers.append(nn.Dropout(float(row[f"dropout_{2 * stack + half}"])))
            h, w = _conv_out(h, k, stride), _conv_out(w, k, stride)
            if h < 1 or w < 1:
                raise InvalidArchitecture(
                    f"stack {stack} conv {half} leaves a {h}x{w} feature map"
                )
            channels = filters
        # 2x2 max-pool with a same-padding fallback: 1x1 maps pass through
        layers.append(nn.MaxPool2d(2, stride=2, ceil_mode=True))
        h, w = math.ceil(h / 2), math.ceil(w / 2)
    layers.append(nn.Flatten())
    layers.append(nn.Linear(channels * h * w, int(row["dense_size_0"])))
    layers.append(nn.ReLU())
    layers.append(nn.Dropout(float(row["dropout_6"])))
    layers.append(nn.Linear(int(row["dense_size_0"]), int(row["dense_size_1"])))
    layers.append(nn.ReLU())
    layers.append(nn.Linear(int(row["dense_size_1"]), num_classes))
    # softmax is folded into the cross-entropy loss during training
    return nn.Sequential(*layers)


def describe_model(row: ArchitectureRow, input_shape: tuple[int, int, int], num_classes: int) -> str:
    """Structural description plus an echo of every configuration value.

    Two rows differing in any of the 23 parameters produce different
    descriptions, including the pure-training knobs lr and l2.
    """
    model = build_model(row, input_shape, num_classes)
    echo = ",".join(f"{k}={v!r}" for k, v in row.as_dict().items())
    return f"{model}\nconfig: {echo}"


def count_parameters(model: nn.Module) -> int:
    return sum(p.numel() for p in model.parameters())


def make_optimizer(model: nn.Module, row: ArchitectureRow, momentum: float = 0.9) -> torch.optim.SGD:
    """SGD with momentum; l2 decays weight tensors only, never biases."""
    weights, biases = [], []
    for name, p in model.named_parameters():
        (biases if name.endswith("bias") else weights).append(p)
    return torch.optim.SGD(
        [
            {"params": weights, "weight_decay": float(row["l2"])},
            {"params": biases, "weight_decay": 0.0},
        ],
        lr=float(row["lr"]),
        momentum=momentum,
    )
