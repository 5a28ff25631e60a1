"""Observation scaling helper for external trainers.

The bridge sends raw observations; this reproduces the scaling the reference
trainer applies before its network: agent coordinates to [0, 1] by grid
extent, ownership codes by their max value 2, the remaining-steps counter by
the episode length. Lock flags and the trailing pad are already in range.
"""

import numpy as np


def normalize_observation(
    obs, grid_size: int = 10, episode_length: int = 250
) -> np.ndarray:
    """Scale a raw observation (or batch along the last axis) to ~[0, 1]."""
    g2 = grid_size * grid_size
    out = np.asarray(obs, dtype=np.float32).copy()
    if out.shape[-1] != 4 + 2 * g2 + 2:
        raise ValueError(
            f"expected {4 + 2 * g2 + 2} features for grid_size {grid_size}, "
            f"got {out.shape[-1]}"
        )
    out[..., 0:4] /= grid_size - 1
    out[..., 4 : 4 + g2] /= 2.0
    out[..., 4 + 2 * g2] /= episode_length
    return out
