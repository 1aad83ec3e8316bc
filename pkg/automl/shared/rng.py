"""
Seed derivation for every stochastic consumer.

All randomness flows from a run seed. Each consumer (splits, completions,
bootstrap samples, label subsets, ...) gets its own sub-stream derived from
``(seed, purpose, index)`` so that evaluating candidates concurrently or in a
different order never perturbs another consumer's stream.
"""

import zlib

import numpy as np

_SEED_SPACE = 2 ** 63


def _seed_sequence(seed: int, purpose: str, index: int) -> np.random.SeedSequence:
    tag = zlib.crc32(purpose.encode("utf-8"))
    return np.random.SeedSequence(
        entropy=int(seed) % _SEED_SPACE,
        spawn_key=(tag, int(index) % _SEED_SPACE),
    )


def derive_rng(seed: int, purpose: str, index: int = 0) -> np.random.Generator:
    """
    Build an independent generator for one consumer.

    Args:
        seed: Run (or parent) seed
        purpose: Short tag naming the consumer, e.g. "split" or "bootstrap"
        index: Position of the consumer among siblings (member, label, ...)

    Returns:
        A PCG64-backed numpy Generator
    """
    return np.random.Generator(np.random.PCG64(_seed_sequence(seed, purpose, index)))


def derive_seed(seed: int, purpose: str, index: int = 0) -> int:
    """Derive a plain integer seed for a sub-consumer."""
    state = _seed_sequence(seed, purpose, index).generate_state(1, dtype=np.uint32)
    return int(state[0])
