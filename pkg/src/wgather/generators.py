"""Instance generators and the two scripted adversarial schedules.

Every generator is deterministic given its arguments; anything random
sits behind an explicit seed.  Each instance carries a provenance
comment naming the generator and its parameters.
"""

from __future__ import annotations

import random

from .model import Call, Instance, Network, Packet, Schedule

D_DEFAULT = 1


def _rng_for(seed, why):
    if seed is None:
        raise ValueError(f"a seed is required for {why}")
    return random.Random(seed)


def _make_packets(network, count, origins, release, seed):
    """Place packets by policy.

    origins: "spread" (round robin over non-sink nodes, farthest first),
    "uniform" (any node, may hit the sink), "uniform-nonsink", or
    "fixed:<node>".  release: "zero", "uniform:<hi>" or "spaced:<gap>"
    (cumulative random gaps).
    """
    if count < 0:
        raise ValueError("packet count must not be negative")
    rng = None
    needs_rng = origins in ("uniform", "uniform-nonsink") or release.startswith(("uniform:", "spaced:"))
    if needs_rng:
        rng = _rng_for(seed, f"origins={origins!r} release={release!r}")

    non_sink = [v for v in range(network.node_count) if v != network.sink]
    to_sink = network.distances[network.sink]
    spread = sorted(non_sink, key=lambda v: (-to_sink[v], v)) or [network.sink]

    if origins == "spread":
        origin_list = [spread[i % len(spread)] for i in range(count)]
    elif origins == "uniform":
        origin_list = [rng.randrange(network.node_count) for _ in range(count)]
    elif origins == "uniform-nonsink":
        if not non_sink:
            raise ValueError("no non-sink node to place packets on")
        origin_list = [non_sink[rng.randrange(len(non_sink))] for _ in range(count)]
    elif origins.startswith("fixed:"):
        node = int(origins.split(":", 1)[1])
        if not 0 <= node < network.node_count:
            raise ValueError(f"fixed origin {node} is not a node id")
        origin_list = [node] * count
    else:
        raise ValueError(f"unknown origins policy {origins!r}")

    if release == "zero":
        release_list = [0] * count
    elif release.startswith("uniform:"):
        hi = int(release.split(":", 1)[1])
        release_list = [rng.randint(0, hi) for _ in range(count)]
    elif release.startswith("spaced:"):
        gap = int(release.split(":", 1)[1])
        release_list = []
        r = 0
        for _ in range(count):
            release_list.append(r)
            r += rng.randint(0, gap)
    else:
        raise ValueError(f"unknown release policy {release!r}")

    return tuple(Packet(o, r) for o, r in zip(origin_list, release_list))


def _tag(kind, **params):
    parts = " ".join(f"{k}={v}" for k, v in params.items())
    return f"generated: kind={kind} {parts}"


def line(n, d_i=D_DEFAULT, packets=1, origins="spread", release="zero", seed=None):
    """Path on n nodes 0..n-1 with the sink at node n-1."""
    if n < 2:
        raise ValueError("a line needs at least 2 nodes")
    net = Network(n, [(i, i + 1) for i in range(n - 1)], n - 1, d_i)
    pk = _make_packets(net, packets, origins, release, seed)
    return Instance(net, pk, comment=_tag("line", n=n, d_I=d_i, packets=packets,
                                          origins=origins, release=release, seed=seed))


def star(leaves, d_i=D_DEFAULT, packets=None, origins="spread", release="zero", seed=None):
    """Star with the sink at the center and the given number of leaves."""
    if leaves < 1:
        raise ValueError("a star needs at least 1 leaf")
    net = Network(leaves + 1, [(0, i) for i in range(1, leaves + 1)], 0, d_i)
    if packets is None:
        packets = leaves
    pk = _make_packets(net, packets, origins, release, seed)
    return Instance(net, pk, comment=_tag("star", leaves=leaves, d_I=d_i, packets=packets,
                                          origins=origins, release=release, seed=seed))


def grid(rows, cols, d_i=D_DEFAULT, packets=1, origins="spread", release="zero", seed=None):
    """rows x cols grid, sink at node 0 (the corner)."""
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise ValueError("a grid needs at least 2 nodes")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    net = Network(rows * cols, edges, 0, d_i)
    pk = _make_packets(net, packets, origins, release, seed)
    return Instance(net, pk, comment=_tag("grid", rows=rows, cols=cols, d_I=d_i, packets=packets,
                                          origins=origins, release=release, seed=seed))


def random_graph(n, p, seed, d_i=D_DEFAULT, packets=1, origins="uniform", release="zero",
                 max_attempts=1000):
    """Connected Erdos-Renyi style graph, sink at node 0.

    Edges are drawn independently with probability p; the draw repeats
    (consuming the same seeded stream) until the graph is connected.
    """
    if n < 1:
        raise ValueError("need at least 1 node")
    if not 0 < p <= 1:
        raise ValueError("edge probability must be in (0, 1]")
    rng = _rng_for(seed, "the random topology")
    net = None
    for _ in range(max_attempts):
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        try:
            net = Network(n, edges, 0, d_i)
            break
        except ValueError:
            continue
    if net is None:
        raise ValueError(f"no connected graph after {max_attempts} draws (n={n}, p={p})")
    pk = _make_packets(net, packets, origins, release, seed)
    return Instance(net, pk, comment=_tag("random", n=n, p=p, d_I=d_i, packets=packets,
                                          origins=origins, release=release, seed=seed))


def four_layer_instance(group_size, phases, u_size=None, v_size=None, cross_edges=None):
    """Relay network o | U | V | s with cliques on U and V, d_I = 1.

    o is adjacent to every U node, s to every V node, and cross_edges
    (pairs of 0-based indexes into U and V) connect the middle layers.
    group_size packets appear at o every group_size + 1 rounds, phases
    times.  Defaults plant the identity matching: U and V of size
    group_size with cross edges (i, i).
    """
    if group_size < 1 or phases < 1:
        raise ValueError("group_size and phases must be at least 1")
    if u_size is None:
        u_size = group_size
    if v_size is None:
        v_size = group_size
    if u_size < 1 or v_size < 1:
        raise ValueError("both middle layers need at least one node")
    if cross_edges is None:
        cross_edges = [(i, i) for i in range(min(group_size, u_size, v_size))]
    seen = set()
    for e in cross_edges:
        a, b = e
        if not (0 <= a < u_size and 0 <= b < v_size):
            raise ValueError(f"cross edge {e!r} is outside the bipartite index ranges")
        if (a, b) in seen:
            raise ValueError(f"duplicate cross edge {e!r}")
        seen.add((a, b))

    origin = 0
    u_nodes = list(range(1, 1 + u_size))
    v_nodes = list(range(1 + u_size, 1 + u_size + v_size))
    sink = 1 + u_size + v_size
    edges = [(origin, u) for u in u_nodes]
    edges += [(v, sink) for v in v_nodes]
    edges += [(u_nodes[a], v_nodes[b]) for a, b in sorted(seen)]
    edges += [(u_nodes[i], u_nodes[j]) for i in range(u_size) for j in range(i + 1, u_size)]
    edges += [(v_nodes[i], v_nodes[j]) for i in range(v_size) for j in range(i + 1, v_size)]
    net = Network(sink + 1, edges, sink, 1)

    pk = []
    for h in range(phases):
        for _ in range(group_size):
            pk.append(Packet(origin, (group_size + 1) * h))
    label = ",".join(f"{a}:{b}" for a, b in sorted(seen))
    return Instance(net, tuple(pk), comment=_tag(
        "four-layer", group_size=group_size, phases=phases,
        u_size=u_size, v_size=v_size, cross=label))


def matching_relay_schedule(instance, matching):
    """Pipeline schedule over an induced matching of the four-layer network.

    Phase h (rounds (k+1)h .. (k+1)h + k, with k lanes): the i-th round
    loads lane i from o and drains the previous group's lane (i+1) mod k
    into s; the final round crosses all k lanes at once.  A tail of k
    drain rounds follows the last phase.  Raises ValueError unless the
    matching is an induced matching whose size matches the group size.
    """
    net = instance.network
    sink = net.sink
    m = instance.packet_count
    if m == 0:
        raise ValueError("instance has no packets")
    origin = instance.packets[0].origin
    if any(p.origin != origin for p in instance.packets):
        raise ValueError("not a relay instance: packets have differing origins")

    k = len(matching)
    if k < 1:
        raise ValueError("matching must not be empty")
    if m % k != 0:
        raise ValueError(f"matching size {k} does not divide the packet count {m}")
    phases = m // k
    for h in range(phases):
        for i in range(k):
            if instance.packets[h * k + i].release != (k + 1) * h:
                raise ValueError("release pattern does not match the matching size")

    lanes = []
    for e in matching:
        u, v = e
        if not (net.has_edge(origin, u) and net.has_edge(v, sink) and net.has_edge(u, v)):
            raise ValueError(f"matching pair ({u}, {v}) is not an o-U-V-s lane")
        lanes.append((u, v))
    if len({u for u, _ in lanes}) < k or len({v for _, v in lanes}) < k:
        raise ValueError("matching reuses a node")
    for i in range(k):
        for j in range(k):
            if i != j and net.has_edge(lanes[i][0], lanes[j][1]):
                raise ValueError(
                    f"matching is not induced: edge ({lanes[i][0]}, {lanes[j][1]}) joins two pairs")

    total = (k + 1) * phases + k
    rounds = [[] for _ in range(total)]
    for h in range(phases):
        base = (k + 1) * h
        for i in range(k):
            rounds[base + i].append(Call(h * k + i, origin, lanes[i][0]))
            if h > 0:
                prev = (h - 1) * k + (i + 1) % k
                rounds[base + i].append(Call(prev, lanes[(i + 1) % k][1], sink))
        for i in range(k):
            rounds[base + k].append(Call(h * k + i, lanes[i][0], lanes[i][1]))
    tail = (k + 1) * phases
    for i in range(k):
        prev = (phases - 1) * k + (i + 1) % k
        rounds[tail + i].append(Call(prev, lanes[(i + 1) % k][1], sink))
    return Schedule(1, tuple(tuple(r) for r in rounds))


def trap_instance(phases):
    """Hub-and-detour network on 15 nodes where shortest paths mislead.

    Sink 0; hub 1 linked to the sink through relay 2 (two hops).  Three
    entry nodes hang off the hub, each also starting a detour path of
    four edges that rejoins the sink, so the hub route is shorter.
    Every phase releases one packet on each entry node at time 5h.
    """
    if phases < 1:
        raise ValueError("phases must be at least 1")
    edges = [(1, 2), (0, 2)]
    for i in range(3):
        entry = 3 + 4 * i
        edges += [(1, entry), (entry, entry + 1), (entry + 1, entry + 2),
                  (entry + 2, entry + 3), (entry + 3, 0)]
    net = Network(15, edges, 0, 1)
    pk = []
    for h in range(phases):
        for i in range(3):
            pk.append(Packet(3 + 4 * i, 5 * h))
    return Instance(net, tuple(pk), comment=_tag("trap", phases=phases))


def side_path_schedule(instance):
    """Adversary schedule for trap_instance: keep every packet off the hub.

    Each phase walks its three packets down the detour paths in lockstep
    for three rounds, then drains them into the sink one per round.  The
    last drain shares a round with the next phase's first step, which is
    compatible because the detours only meet at the sink.
    """
    m = instance.packet_count
    if m % 3 != 0 or m == 0:
        raise ValueError("not a trap instance: packet count is not a positive multiple of 3")
    phases = m // 3
    for h in range(phases):
        for i in range(3):
            p = instance.packets[3 * h + i]
            if p.origin != 3 + 4 * i or p.release != 5 * h:
                raise ValueError("not a trap instance: unexpected origin or release pattern")

    rounds = [[] for _ in range(5 * (phases - 1) + 6)]
    for h in range(phases):
        base = 5 * h
        for step in range(3):
            for i in range(3):
                node = 3 + 4 * i + step
                rounds[base + step].append(Call(3 * h + i, node, node + 1))
        for i in range(3):
            rounds[base + 3 + i].append(Call(3 * h + i, 6 + 4 * i, 0))
    return Schedule(1, tuple(tuple(r) for r in rounds))
