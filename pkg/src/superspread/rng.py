"""Deterministic random-stream derivation.

All randomness in the package flows from a single 64-bit master seed.  Two
kinds of streams are derived from it:

* counter-based simulation streams, one per (seed node, replicate), consumed
  by the SIR engine.  The stream seed is a splitmix64-style hash of
  (master_seed, node, replicate), so results are independent of thread count
  and execution order.
* numpy Generators for everything else (sampling, bootstrap, shuffles,
  tie-breaking), keyed by a tuple of string/int labels.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """splitmix64 finalizer; bijective on 64-bit ints."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def splitmix64_next(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state; returns (new_state, 64-bit output)."""
    state = (state + _GAMMA) & _MASK64
    return state, mix64(state)


def uniform53(word: int) -> float:
    """Map a 64-bit word to a uniform double in [0, 1)."""
    return (word >> 11) * (1.0 / 9007199254740992.0)


def stream_seed(master_seed: int, node: int, replicate: int) -> int:
    """Stream seed for one simulation replicate: hash(master, node, replicate)."""
    h = mix64(master_seed)
    h = mix64(h ^ mix64(node + 1))
    h = mix64(h ^ mix64(replicate + 1))
    return h


def _label_to_int(label) -> int:
    if isinstance(label, (int, np.integer)):
        return int(label) & 0xFFFFFFFF
    digest = hashlib.sha256(str(label).encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "little")


@dataclass(frozen=True)
class RngPolicy:
    """Single source of randomness for a run.

    Identical (master_seed, node, replicate) always yields the identical
    simulation trajectory; named substreams are equally reproducible.
    """

    master_seed: int = 0

    def stream_seed(self, node: int, replicate: int) -> int:
        return stream_seed(self.master_seed, node, replicate)

    def substream(self, *labels) -> np.random.Generator:
        """A numpy Generator for the given purpose, e.g. substream("bootstrap", f)."""
        key = tuple(_label_to_int(x) for x in labels)
        seq = np.random.SeedSequence(entropy=self.master_seed & _MASK64, spawn_key=key)
        return np.random.Generator(np.random.PCG64(seq))
