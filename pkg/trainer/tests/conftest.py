import numpy as np
import pytest
import torch

torch.set_num_threads(1)  # tiny models run faster without thread fan-out


@pytest.fixture
def row_values():
    """A small but valid configuration, keyed by canonical column order."""
    return [
        16.0, 16.0, 16.0,             # filters_0..2
        3.0, 3.0, 3.0, 3.0, 3.0, 3.0,  # k_0..5
        2.0, 2.0, 2.0,                # s_0..2
        32.0, 32.0,                   # dense_size_0..1
        0.05, 0.05, 0.05, 0.05, 0.05, 0.05, 0.05,  # dropout_0..6
        0.005, 1e-4,                  # lr, l2
    ]


def sample_tiny_rows(n, seed):
    """Random in-range rows kept deliberately small for fast training."""
    rng = np.random.default_rng(seed)
    cols = [
        rng.integers(11, 33, (n, 3)),      # filters
        rng.integers(2, 6, (n, 6)),        # kernels
        rng.integers(2, 4, (n, 3)),        # strides
        rng.integers(8, 49, (n, 2)),       # dense sizes
        rng.uniform(0.01, 0.3, (n, 7)),    # dropouts
        rng.uniform(1e-3, 1e-2, (n, 1)),   # lr
        rng.uniform(1e-5, 1e-3, (n, 1)),   # l2
    ]
    return np.hstack([np.asarray(c, dtype=float) for c in cols])
