"""Shared builders for the test suite."""

import random

from donut_ssn import (
    BUCKET_ORDER,
    DIRECTION_ORDER,
    validate_network,
)


def random_network(
    seed,
    max_nodes=50,
    max_edges=200,
    directed=None,
    allow_self_loops=False,
    box=(0.0, 0.0, 1.0, 1.0),
):
    """Seeded random network plus the raw tuples the oracle consumes."""
    rng = random.Random(seed)
    n = rng.randint(2, max_nodes)
    if directed is None:
        directed = rng.random() < 0.5
    minx, miny, maxx, maxy = box
    nodes = [
        (f"v{i}", rng.uniform(minx, maxx), rng.uniform(miny, maxy))
        for i in range(n)
    ]
    edges = []
    for _ in range(rng.randint(1, max_edges)):
        a = rng.randrange(n)
        b = rng.randrange(n)
        if a == b and not allow_self_loops:
            continue
        edges.append((f"v{a}", f"v{b}"))
    network = validate_network(nodes, edges, directed=directed)
    return network, nodes, edges


def random_viewport(seed, box=(0.0, 0.0, 1.0, 1.0)):
    """Seeded viewport overlapping the node box partially, fully, or not."""
    rng = random.Random(seed)
    minx, miny, maxx, maxy = box
    w = maxx - minx
    h = maxy - miny
    x0 = rng.uniform(minx - 0.5 * w, maxx)
    y0 = rng.uniform(miny - 0.5 * h, maxy)
    return (x0, y0, x0 + rng.uniform(0.1 * w, 1.2 * w), y0 + rng.uniform(0.1 * h, 1.2 * h))


def counts_as_plain(aggregate):
    """Convert an aggregate's enum-keyed counts to the oracle's dict shape."""
    return {
        d.value: {b.value: aggregate.counts[d][b] for b in BUCKET_ORDER}
        for d in DIRECTION_ORDER
    }
