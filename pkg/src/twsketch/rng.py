"""Counter-based seed derivation.

Every randomized object gets its own stream, derived from a master seed plus
an integer path, so trials are reproducible and order-independent no matter
how the surrounding loop is scheduled.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

MAX_SEED = 2**64 - 1


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def child_sequence(seed: int, *path: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(check_seed(seed), spawn_key=tuple(int(p) for p in path))


def child_generator(seed: int, *path: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(child_sequence(seed, *path)))


def child_seed(seed: int, *path: int) -> int:
    """Collapse a derived stream into a single 64-bit seed."""
    return int(child_sequence(seed, *path).generate_state(1, np.uint64)[0])
