"""Seeded random streams.

Every chain owns one counter-based Philox stream.  Streams for replicated
runs are derived from a master seed and an integer key (for instance
``(d, rep)``) by hashing through :class:`numpy.random.SeedSequence`, so
runs can execute in any order or in parallel and still reproduce.
"""

import numpy as np

DEFAULT_SEED = 42


def derive_seed(master, *key):
    """Mix ``master`` and the integer ``key`` into a single 64-bit seed."""
    ss = np.random.SeedSequence(int(master), spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def make_rng(seed):
    """A Philox-backed generator for a 64-bit integer seed."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed))))


def block_rngs(seed, n_blocks):
    """``n_blocks`` independent generators for block-parallel Monte Carlo."""
    return [make_rng(derive_seed(seed, b)) for b in range(n_blocks)]
