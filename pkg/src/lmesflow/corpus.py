"""Seeded instance corpora used by the acceptance tests and experiment scripts."""

import random

from .generators import layered, random_network
from .network import build_network


def random_corpus(count=500, seed=12345, max_n=40, max_m=160, max_U=1024):
    """``count`` random networks with n <= max_n, m <= max_m, U <= max_U."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(2, max_n)
        m = rng.randint(0, min(max_m, n * (n - 1)))
        U = rng.randint(1, max_U)
        out.append((f"random-{i}", random_network(n, m, U, seed=i)))
    return out


def layered_corpus(count=50, seed=54321, max_U=1024):
    rng = random.Random(seed)
    out = []
    for i in range(count):
        width, depth = rng.randint(1, 5), rng.randint(1, 7)
        net = layered(width, depth, rng.randint(1, max_U), seed=1000 + i)
        out.append((f"layered-{i}", net))
    return out


def acceptance_corpus():
    """The 500 random plus 50 layered instances of the oracle-equivalence check."""
    return random_corpus() + layered_corpus()


def wide_instance(seed, max_n=15, max_m=40, max_exp=30):
    """Random network with capacities spread over 4**0 .. 4**max_exp."""
    rng = random.Random(seed)
    n = rng.randint(3, max_n)
    m = rng.randint(2, min(max_m, n * (n - 1)))
    arcs, seen = [], set()
    while len(arcs) < m:
        i, j = rng.sample(range(n), 2)
        if (i, j) not in seen:
            seen.add((i, j))
            arcs.append((i, j, 4 ** rng.randint(0, max_exp) + rng.randint(0, 3)))
    return build_network(n, arcs, 0, n - 1)
