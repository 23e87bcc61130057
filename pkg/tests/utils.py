from pathlib import Path

import numpy as np

BASE = Path(__file__).parent
OUT = BASE / "out"
SEED = 7


def rng(seed: int = SEED) -> np.random.Generator:
    return np.random.default_rng(seed)


def sphere_points(n: int, count: int, seed: int = SEED) -> np.ndarray:
    points = rng(seed).normal(size=(count, n + 1))
    return points / np.linalg.norm(points, axis=1)[:, None]
