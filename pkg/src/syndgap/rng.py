"""Seed derivation: one independent stream per (master seed, purpose, index)."""
import hashlib

import numpy as np

MASK64 = (1 << 64) - 1


def derive_seed(master, tag, index=0):
    """64-bit seed from hash(master, tag, index)."""
    h = hashlib.blake2b(digest_size=8)
    h.update(int(master & MASK64).to_bytes(8, "little"))
    h.update(tag.encode())
    h.update(int(index).to_bytes(8, "little", signed=True))
    return int.from_bytes(h.digest(), "little")


def make_rng(seed, tag=None, index=0):
    if tag is not None:
        seed = derive_seed(seed, tag, index)
    return np.random.default_rng(seed & MASK64)
