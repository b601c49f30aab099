"""Seed handling.

Every stochastic routine takes an explicit seed (an int, a SeedSequence, or a
Generator to continue).  Independent consumers get their own stream by
extending the seed's spawn key, so results never depend on call order.
"""
import zlib

import numpy as np

from ..config import config
from ..exceptions import InvalidParameter


def as_seed_sequence(seed):
    if isinstance(seed, np.random.SeedSequence):
        return seed
    if seed is None:
        seed = config.get("seed")
    if isinstance(seed, (bool, np.bool_)) or not isinstance(seed, (int, np.integer)):
        raise InvalidParameter(f"seed must be a non-negative integer; got {seed!r}")
    if seed < 0:
        raise InvalidParameter(f"seed must be non-negative; got {seed}")
    return np.random.SeedSequence(int(seed))


def _spawn_key(key):
    if isinstance(key, str):
        return zlib.crc32(key.encode())
    key = int(key)
    if key < 0:
        raise InvalidParameter(f"stream keys must be non-negative; got {key}")
    return key


def substream(seed, *keys):
    """Child SeedSequence of ``seed`` identified by ``keys`` (ints or strings)"""
    ss = as_seed_sequence(seed)
    return np.random.SeedSequence(
        ss.entropy,
        spawn_key=(*ss.spawn_key, *map(_spawn_key, keys)),
        pool_size=ss.pool_size,
    )


def make_rng(seed):
    """Counter-based (Philox) Generator for ``seed``"""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(as_seed_sequence(seed)))


def seed_label(seed):
    """An int that identifies ``seed`` in reports"""
    if isinstance(seed, np.random.SeedSequence):
        return int(seed.entropy)
    if seed is None:
        return int(config.get("seed"))
    return int(seed)
