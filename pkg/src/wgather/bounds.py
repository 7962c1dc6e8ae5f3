"""Completion-time bounds built from a greedy run's block log.

The blocking forest links each ever-blocked packet to the transmitting
higher-priority packet that was nearest to it in its last blocked
round.  Chains through that forest turn into per-packet upper bounds on
the greedy's completions, and any packet set yields a certified lower
bound on the optimum, so the two sandwich every greedy run.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class BlockingForest:
    """Parent links over packets; roots are the never-blocked packets."""

    packet_count: int
    parent: dict

    def root_of(self, j):
        while j in self.parent:
            j = self.parent[j]
        return j

    def chain_to(self, j):
        """Packets from the root of j's tree down to j, inclusive."""
        chain = [j]
        while j in self.parent:
            j = self.parent[j]
            chain.append(j)
        chain.reverse()
        return tuple(chain)

    def roots(self):
        return tuple(j for j in range(self.packet_count) if j not in self.parent)

    def tree_of(self, j):
        r = self.root_of(j)
        return frozenset(i for i in range(self.packet_count) if self.root_of(i) == r)

    def trees(self):
        """All trees, ordered by their root's packet index."""
        return tuple(self.tree_of(r) for r in self.roots())


def blocking_forest(instance, run):
    """Build the blocking forest of a GreedyRun.

    For each packet j that was ever blocked, look at its last blocked
    round t: the parent of j is the packet sent in round t with higher
    priority than j whose position was nearest to j's (ties to the
    lowest packet index).  Such a sender always exists, because a block
    means the packet's call interfered with an accepted higher-priority
    call.
    """
    dist = instance.network.distances
    rank = {j: i for i, j in enumerate(run.priority)}
    last_block = {}
    for t, blocked in enumerate(run.blocked):
        for j, node in blocked:
            last_block[j] = (t, node)
    parent = {}
    for j, (t, node) in last_block.items():
        senders = [(dist[c.u][node], c.packet)
                   for c in run.schedule.rounds[t] if rank[c.packet] < rank[j]]
        parent[j] = min(senders)[1]
    return BlockingForest(packet_count=instance.packet_count, parent=parent)


def greedy_completion_bound(instance, forest, j):
    """Upper bound on packet j's completion under the logged greedy run.

    Exact rational: approach time of j's root plus the contention ratio
    times the congested hops summed along the chain from root to j.
    """
    net = instance.network
    chain = forest.chain_to(j)
    congested = sum(instance.congested_hops(i) for i in chain)
    return instance.approach_time(chain[0]) + net.contention_ratio * Fraction(congested)


def gathering_lower_bound(instance, packets):
    """Certified lower bound on the optimal max completion of any schedule.

    Valid for every nonempty packet subset: someone in the set reaches
    the congested zone no earlier than the set's best approach time, and
    the zone admits one congested hop per round; the plain release plus
    distance bound is folded in as well.
    """
    S = sorted(set(packets))
    if not S:
        raise ValueError("packet set must not be empty")
    for j in S:
        if not 0 <= j < instance.packet_count:
            raise ValueError(f"unknown packet {j}")
    certified = (min(instance.approach_time(k) for k in S)
                 + sum(instance.congested_hops(i) for i in S))
    trivial = max(instance.packets[j].release + instance.hops_to_sink(j) for j in S)
    return max(certified, trivial)
