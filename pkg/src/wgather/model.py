"""Core data model: networks, gathering instances, calls and schedules.

Time is discrete.  A schedule stores one set of calls per round; round
index t of a schedule with speed denominator sigma stands for real time
t/sigma, so every reported completion and flow time is an exact
fractions.Fraction.  No floating point enters any computation.
"""

from __future__ import annotations

import collections
from dataclasses import dataclass
from fractions import Fraction


class GatheringError(Exception):
    """Base class for errors raised by this package."""


class FormatError(GatheringError):
    """A file or text payload does not follow the documented format."""


class ScheduleError(GatheringError):
    """A schedule broke a feasibility rule during replay."""


class HorizonError(GatheringError):
    """A scheduler ran past its round cap without delivering everything."""


def bfs_distances(adjacency, source):
    """Hop distances from source over an adjacency list; None if unreachable."""
    dist = [None] * len(adjacency)
    dist[source] = 0
    queue = collections.deque([source])
    while queue:
        u = queue.popleft()
        base = dist[u] + 1
        for v in adjacency[u]:
            if dist[v] is None:
                dist[v] = base
                queue.append(v)
    return dist


def all_pairs_distances(node_count, edges):
    """Hop distance matrix via one BFS per node; None marks unreachable pairs.

    Accepts disconnected graphs, unlike Network.distances.
    """
    adjacency = [[] for _ in range(node_count)]
    for u, v in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    return [bfs_distances(adjacency, s) for s in range(node_count)]


@dataclass(frozen=True)
class Network:
    """Undirected connected graph with a sink node and interference radius.

    Node ids are 0..node_count-1 and edges are normalized to (u, v) with
    u < v.  The all-pairs hop distance table is filled in eagerly: the
    networks here are desk scale, so the quadratic table is cheap and it
    makes every later compatibility test a pair of lookups.
    """

    node_count: int
    edges: frozenset
    sink: int
    d_I: int

    def __post_init__(self):
        if not isinstance(self.node_count, int) or self.node_count < 1:
            raise ValueError(f"node_count must be a positive integer, got {self.node_count!r}")
        if not isinstance(self.d_I, int) or self.d_I < 1:
            raise ValueError(f"d_I must be a positive integer, got {self.d_I!r}")
        if not isinstance(self.sink, int) or not 0 <= self.sink < self.node_count:
            raise ValueError(f"sink {self.sink!r} is not a node id")
        normalized = []
        for edge in self.edges:
            try:
                u, v = edge
            except (TypeError, ValueError):
                raise ValueError(f"edge {edge!r} is not a node pair") from None
            for x in (u, v):
                if not isinstance(x, int) or not 0 <= x < self.node_count:
                    raise ValueError(f"edge {edge!r} mentions invalid node {x!r}")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            normalized.append((u, v) if u < v else (v, u))
        if len(normalized) != len(set(normalized)):
            dupe = [e for e, c in collections.Counter(normalized).items() if c > 1][0]
            raise ValueError(f"duplicate edge {dupe}")
        object.__setattr__(self, "edges", frozenset(normalized))

        adjacency = [[] for _ in range(self.node_count)]
        for u, v in self.edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adjacency))

        matrix = [bfs_distances(self.adjacency, s) for s in range(self.node_count)]
        for node, d in enumerate(matrix[self.sink]):
            if d is None:
                raise ValueError(f"node {node} cannot reach the sink")
        object.__setattr__(self, "distances", tuple(tuple(row) for row in matrix))
        object.__setattr__(self, "diameter", max(max(row) for row in self.distances))

    @property
    def interference_span(self):
        """One call end to end: sender, receiver and the blocked fringe (d_I + 2)."""
        return self.d_I + 2

    @property
    def congestion_radius(self):
        """Half the blocked span, rounded down: (d_I + 1) // 2.

        Companion constant to interference_span; their ratio drives the
        greedy guarantees and the speed needed by the scaled scheduler.
        """
        return (self.d_I + 1) // 2

    @property
    def contention_ratio(self):
        return Fraction(self.interference_span, self.congestion_radius)

    def neighbors(self, u):
        return self.adjacency[u]

    def has_edge(self, u, v):
        return ((u, v) if u < v else (v, u)) in self.edges

    def distance(self, u, v):
        return self.distances[u][v]


@dataclass(frozen=True, order=True)
class Call:
    """One-hop transmission of a packet from node u to adjacent node v."""

    packet: int
    u: int
    v: int


def interferes(a, b, distances, d_I):
    """True iff calls a and b collide when placed in the same round.

    Collision: either receiver lies within d_I hops of the other call's
    sender.  None distances (disconnected pairs) never collide.
    """
    d1 = distances[b.u][a.v]
    if d1 is not None and d1 <= d_I:
        return True
    d2 = distances[a.u][b.v]
    return d2 is not None and d2 <= d_I


def compatible(a, b, network, d_I=None):
    """True iff calls a and b may share a round on this network."""
    if d_I is None:
        d_I = network.d_I
    return not interferes(a, b, network.distances, d_I)


@dataclass(frozen=True)
class Packet:
    """A data packet: the node where it appears and the round it appears in."""

    origin: int
    release: int


@dataclass(frozen=True)
class Instance:
    """A gathering instance: a network plus the packets to collect.

    Packet index is packet identity everywhere; schedules, forests,
    bounds and traces all refer to packets by their position in
    `packets`.
    """

    network: Network
    packets: tuple
    comment: str | None = None

    def __post_init__(self):
        pk = tuple(self.packets)
        for i, p in enumerate(pk):
            if not isinstance(p, Packet):
                raise ValueError(f"packets[{i}] is not a Packet")
            if not isinstance(p.origin, int) or not 0 <= p.origin < self.network.node_count:
                raise ValueError(f"packets[{i}] origin {p.origin!r} is not a node id")
            if not isinstance(p.release, int) or p.release < 0:
                raise ValueError(f"packets[{i}] release {p.release!r} is not a round index")
        object.__setattr__(self, "packets", pk)

    @property
    def packet_count(self):
        return len(self.packets)

    def origin(self, j):
        return self.packets[j].origin

    def release(self, j):
        return self.packets[j].release

    def hops_to_sink(self, j):
        """Shortest-path hop count from the packet's origin to the sink."""
        return self.network.distance(self.packets[j].origin, self.network.sink)

    def congested_hops(self, j):
        """Hops of the packet's route that fall inside the congested zone."""
        return min(self.hops_to_sink(j), self.network.congestion_radius)

    def approach_time(self, j):
        """Earliest round by which the packet can be congestion_radius hops from the sink."""
        return self.packets[j].release + self.hops_to_sink(j) - self.congested_hops(j)


@dataclass(frozen=True)
class Schedule:
    """Per-round call sets.  Round t at denominator sigma is real time t/sigma."""

    sigma: int
    rounds: tuple

    def __post_init__(self):
        if not isinstance(self.sigma, int) or self.sigma < 1:
            raise ValueError(f"sigma must be a positive integer, got {self.sigma!r}")
        rounds = []
        for r in self.rounds:
            calls = tuple(sorted(r))
            for c in calls:
                if not isinstance(c, Call):
                    raise ValueError(f"round entry {c!r} is not a Call")
            rounds.append(calls)
        object.__setattr__(self, "rounds", tuple(rounds))

    @property
    def round_count(self):
        return len(self.rounds)


@dataclass(frozen=True)
class ScheduleMetrics:
    """Exact per-packet completion and flow times in original time units."""

    completion: tuple
    flow: tuple
    max_completion: Fraction
    max_flow: Fraction
    round_count: int


def validate_schedule(instance, schedule):
    """Replay a schedule round by round; return its ScheduleMetrics.

    Raises ScheduleError naming the first broken rule: a call off the
    edge set, a packet sent before its (scaled) release, a sender that
    does not hold the packet, two calls of one packet in a round, an
    interfering pair, or a packet never delivered.  Packets that start
    on the sink count as delivered at their release time.
    """
    net = instance.network
    sigma = schedule.sigma
    pos = {}
    arrival = {}
    for j, p in enumerate(instance.packets):
        if p.origin == net.sink:
            arrival[j] = sigma * p.release
        else:
            pos[j] = p.origin

    for t, calls in enumerate(schedule.rounds):
        seen = set()
        for c in calls:
            if not 0 <= c.packet < instance.packet_count:
                raise ScheduleError(f"round {t}: call names unknown packet {c.packet}")
            if c.packet in seen:
                raise ScheduleError(f"round {t}: packet {c.packet} appears in more than one call")
            seen.add(c.packet)
            if not net.has_edge(c.u, c.v):
                raise ScheduleError(f"round {t}: call ({c.u} -> {c.v}) does not follow a network edge")
            if t < sigma * instance.packets[c.packet].release:
                raise ScheduleError(
                    f"round {t}: packet {c.packet} sent before its release round "
                    f"{sigma * instance.packets[c.packet].release}")
            if c.packet in arrival:
                raise ScheduleError(f"round {t}: packet {c.packet} was already delivered")
            if pos[c.packet] != c.u:
                raise ScheduleError(
                    f"round {t}: packet {c.packet} is at node {pos[c.packet]}, not at sender {c.u}")
        for i in range(len(calls)):
            for k in range(i + 1, len(calls)):
                if interferes(calls[i], calls[k], net.distances, net.d_I):
                    a, b = calls[i], calls[k]
                    raise ScheduleError(
                        f"round {t}: interfering calls "
                        f"(packet {a.packet}: {a.u} -> {a.v}) and (packet {b.packet}: {b.u} -> {b.v})")
        for c in calls:
            if c.v == net.sink:
                del pos[c.packet]
                arrival[c.packet] = t + 1
            else:
                pos[c.packet] = c.v

    if pos:
        stuck = min(pos)
        raise ScheduleError(f"packet {stuck} never delivered to the sink")

    completion = tuple(Fraction(arrival[j], sigma) for j in range(instance.packet_count))
    flow = tuple(completion[j] - instance.packets[j].release for j in range(instance.packet_count))
    return ScheduleMetrics(
        completion=completion,
        flow=flow,
        max_completion=max(completion, default=Fraction(0)),
        max_flow=max(flow, default=Fraction(0)),
        round_count=schedule.round_count,
    )
