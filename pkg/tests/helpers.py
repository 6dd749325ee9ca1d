"""Small shared utilities for the test modules."""

import random


def rel_err(got, want):
    """|got - want| / |want|, falling back to absolute error at want = 0."""
    got = complex(got)
    want = complex(want)
    scale = abs(want)
    if scale == 0.0:
        return abs(got)
    return abs(got - want) / scale


def sample(seed, n, draw):
    """n deterministic draws from a seeded Random passed to draw(rng)."""
    rng = random.Random(seed)
    return [draw(rng) for _ in range(n)]
