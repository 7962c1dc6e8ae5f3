"""Shared helpers for the test suite."""

import random

from wgather.model import Instance, Network, Packet


def corpus_instance(seed):
    """Seeded random instance in the acceptance-corpus family.

    3..8 nodes, 1..4 packets, d_I coin-flipped between 1 and 2,
    releases in 0..6.  The edge draw repeats until the graph connects.
    """
    rng = random.Random(seed)
    n = rng.randint(3, 8)
    while True:
        edges = {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.45}
        try:
            net = Network(n, sorted(edges), sink=rng.randrange(n), d_I=rng.choice([1, 2]))
            break
        except ValueError:
            continue
    m = rng.randint(1, 4)
    packets = [Packet(rng.randrange(n), rng.randint(0, 6)) for _ in range(m)]
    return Instance(net, packets)


def two_packet_path():
    """Both packets at the far end of a 3-node path, releases 0."""
    net = Network(3, [(0, 1), (1, 2)], sink=2, d_I=1)
    return Instance(net, [Packet(0, 0), Packet(0, 0)])


def three_leaf_star():
    """One packet on each leaf of a 3-leaf star, releases 0."""
    net = Network(4, [(0, 1), (0, 2), (0, 3)], sink=0, d_I=1)
    return Instance(net, [Packet(1, 0), Packet(2, 0), Packet(3, 0)])
