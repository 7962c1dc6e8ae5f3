"""Greedy schedulers.

All of them forward packets along one fixed shortest-path tree toward
the sink.  Each round, packets are offered in priority order and a
packet's next-hop call is accepted exactly when it is compatible with
every call already accepted that round; otherwise the packet is blocked
and the round is logged, because the blocking structure feeds the
completion bounds in wgather.bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Call, HorizonError, Instance, Packet, Schedule, interferes


def shortest_path_tree(network):
    """Next hop toward the sink for every node; None at the sink itself.

    Ties go to the lowest-numbered neighbor that is one hop closer, so
    the tree is a pure function of the network.
    """
    to_sink = network.distances[network.sink]
    parent = [None] * network.node_count
    for v in range(network.node_count):
        if v == network.sink:
            continue
        parent[v] = min(w for w in network.neighbors(v) if to_sink[w] == to_sink[v] - 1)
    return tuple(parent)


def release_order(instance):
    """FIFO priority: packets ranked by (release, index), earliest first."""
    return tuple(sorted(range(instance.packet_count),
                        key=lambda j: (instance.packets[j].release, j)))


def approach_order(instance):
    """Priority by earliest possible approach to the sink's congested zone."""
    return tuple(sorted(range(instance.packet_count),
                        key=lambda j: (instance.approach_time(j), j)))


def default_horizon(instance, sigma=1):
    """Round cap: generous envelope over any greedy run at speed sigma."""
    releases = [p.release for p in instance.packets]
    net = instance.network
    slack = instance.packet_count * (net.diameter + 1) * net.interference_span
    return sigma * (max(releases, default=0) + slack)


@dataclass(frozen=True)
class GreedyRun:
    """A greedy schedule plus the per-round block log that produced it.

    blocked[t] lists (packet, node) pairs for packets that were released
    and undelivered in round t but had their call rejected.
    """

    schedule: Schedule
    priority: tuple
    blocked: tuple


def priority_greedy(instance, priority, horizon=None):
    """Run the greedy under a packet priority order (highest first).

    Returns a GreedyRun; raises HorizonError if the cap is hit before
    every packet reaches the sink.
    """
    m = instance.packet_count
    if sorted(priority) != list(range(m)):
        raise ValueError("priority must be a permutation of the packet indices")
    if horizon is None:
        horizon = default_horizon(instance)
    net = instance.network
    dist = net.distances
    parent = shortest_path_tree(net)

    pos = {}
    for j, p in enumerate(instance.packets):
        if p.origin != net.sink:
            pos[j] = p.origin
    rounds = []
    blocks = []
    t = 0
    while pos:
        if t > horizon:
            raise HorizonError(f"round cap {horizon} reached with {len(pos)} packets undelivered")
        accepted = []
        blocked_here = []
        for j in priority:
            if j not in pos or instance.packets[j].release > t:
                continue
            u = pos[j]
            call = Call(j, u, parent[u])
            if any(interferes(call, c, dist, net.d_I) for c in accepted):
                blocked_here.append((j, u))
            else:
                accepted.append(call)
        for c in accepted:
            if c.v == net.sink:
                del pos[c.packet]
            else:
                pos[c.packet] = c.v
        rounds.append(tuple(accepted))
        blocks.append(tuple(sorted(blocked_here)))
        t += 1
    schedule = Schedule(1, tuple(rounds))
    return GreedyRun(schedule=schedule, priority=tuple(priority), blocked=tuple(blocks))


def fifo(instance, horizon=None):
    """Priority greedy under FIFO (release, index) order."""
    return priority_greedy(instance, release_order(instance), horizon)


def approach_greedy(instance, horizon=None):
    """Priority greedy ranked by approach_time; the CLI calls this pg-r."""
    return priority_greedy(instance, approach_order(instance), horizon)


def sigma_fifo(instance, sigma, horizon=None):
    """FIFO on the release-stretched instance, replayed at speed sigma.

    Releases are multiplied by sigma, FIFO schedules that instance at
    unit speed, and the resulting rounds are reinterpreted as taking
    1/sigma time each.  The returned Schedule carries the denominator.
    """
    if not isinstance(sigma, int) or sigma < 1:
        raise ValueError(f"sigma must be a positive integer, got {sigma!r}")
    stretched = Instance(
        instance.network,
        tuple(Packet(p.origin, p.release * sigma) for p in instance.packets),
    )
    if horizon is None:
        horizon = default_horizon(instance, sigma)
    run = fifo(stretched, horizon)
    return Schedule(sigma, run.schedule.rounds)


def speed_for_optimality(network):
    """Smallest integer speed at which sigma_fifo is optimal for both objectives."""
    need = network.contention_ratio + 1
    return -(-need.numerator // need.denominator)
