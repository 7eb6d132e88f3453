"""Seeded instance generators: uniform random, layered and the 4-node
family on which plain excess scaling needs one phase per factor of k."""

import random as _random

from .network import build_network


def random_network(n, m, U, seed):
    """n nodes, m distinct arcs with capacities in [1, U]; s = 0, t = n - 1."""
    if n < 2:
        raise ValueError("need at least two nodes")
    if m > n * (n - 1):
        raise ValueError(f"m = {m} exceeds n(n-1) = {n * (n - 1)}")
    if U < 1:
        raise ValueError("U must be positive")
    rng = _random.Random(seed)
    pairs = set()
    arcs = []
    while len(arcs) < m:
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j or (i, j) in pairs:
            continue
        pairs.add((i, j))
        arcs.append((i, j, rng.randint(1, U)))
    return build_network(n, arcs, 0, n - 1)


def pathological(k, alpha):
    """s=0, nodes 1 and 2, t=3: (s,1) and (1,t) of capacity k**alpha, (s,2) and (2,t) of capacity 1."""
    if k < 2 or alpha < 1:
        raise ValueError("need k >= 2 and alpha >= 1")
    U = k ** alpha
    return build_network(4, [(0, 1, U), (1, 3, U), (0, 2, 1), (2, 3, 1)], 0, 3)


def layered(width, depth, U, seed):
    """depth layers of width nodes between s = 0 and t = width*depth + 1.

    s feeds every node of the first layer, the last layer feeds t, and each
    node has one to three arcs into the next layer plus an occasional arc back
    into the previous one.
    """
    if width < 1 or depth < 1:
        raise ValueError("width and depth must be positive")
    rng = _random.Random(seed)
    n = width * depth + 2
    s, t = 0, n - 1

    def node(layer, idx):
        return 1 + layer * width + idx

    arcs = []
    for i in range(width):
        arcs.append((s, node(0, i), rng.randint(1, U)))
        arcs.append((node(depth - 1, i), t, rng.randint(1, U)))
    for layer in range(depth - 1):
        for i in range(width):
            for j in sorted(rng.sample(range(width), min(width, rng.randint(1, 3)))):
                arcs.append((node(layer, i), node(layer + 1, j), rng.randint(1, U)))
            if layer and rng.random() < 0.2:
                arcs.append((node(layer, i), node(layer - 1, rng.randrange(width)), rng.randint(1, U)))
    return build_network(n, arcs, s, t)


def generate(kind, **kw):
    """Dispatch on 'random', 'pathological' or 'layered'."""
    makers = {"random": random_network, "pathological": pathological, "layered": layered}
    if kind not in makers:
        raise ValueError(f"unknown generator {kind!r}")
    return makers[kind](**kw)
