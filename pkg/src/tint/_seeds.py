"""Deterministic, platform-independent seed derivation.

Ensembles must reproduce bit-for-bit across machines and thread counts, so
trial seeds are derived from the master seed with an explicit splitmix64 mix
rather than anything hash-randomized or platform-dependent.
"""

from __future__ import annotations

import hashlib

_MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One splitmix64 step: maps a 64-bit state to a well-mixed 64-bit value."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


def mix_seeds(*parts: int) -> int:
    """Fold integers into one 64-bit seed, order-sensitively."""
    acc = 0
    for p in parts:
        acc = splitmix64((acc ^ (p & _MASK)) & _MASK)
    return acc


def stable_digest(text: str) -> int:
    """64-bit digest of a string, stable across runs and platforms."""
    return int.from_bytes(hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest(), "big")
