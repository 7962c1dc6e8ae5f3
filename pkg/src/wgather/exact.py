"""Exhaustive search for true gathering optima on small instances.

The solver deepens an objective bound B upward from a certified lower
bound.  Within one bound it runs depth-first over rounds; at each state
it branches over every nonempty pairwise-compatible subset of the
candidate calls (a candidate moves any released, undelivered packet to
any neighbor, not only along shortest paths) plus a waiting branch that
jumps to the next release.  Branching over inclusion-maximal sets only
would be wrong: maximality can force a parked packet into a retreating
call that happens to be compatible with a delivery, and on some
instances every optimal schedule must park a packet next to a busy
lane, so the subsets must stay available.  Waiting between releases
never helps: a schedule that idles while nothing is pending can be
shifted earlier without raising either objective.  For the same reason
a state may be pruned when the same positions and release flags were
already seen at an earlier round, which keeps each bound finite.  The
first bound that admits a feasible schedule is the optimum.

Budget exhaustion yields an explicit "unknown" result, never a wrong
optimum.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import blocking_forest, gathering_lower_bound
from .model import Call, Schedule, validate_schedule
from .schedulers import fifo

DEFAULT_BUDGET = 10_000_000
GUARD_PACKETS = 5
GUARD_NODES = 12


@dataclass(frozen=True)
class SearchState:
    """One search node: the round about to be scheduled and who is where.

    positions holds (packet, node) pairs for undelivered packets only,
    sorted by packet index.
    """

    round: int
    positions: tuple


@dataclass(frozen=True)
class OracleResult:
    status: str  # "optimal" or "unknown"
    objective: str
    value: int | None
    schedule: Schedule | None
    nodes: int


class _BudgetExhausted(Exception):
    pass


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _maximal_cliques(compat):
    """Bron-Kerbosch with pivoting over a bitmask adjacency list."""
    out = []
    n = len(compat)

    def expand(r, p, x):
        if not p and not x:
            out.append(r)
            return
        pivot = max(_bits(p | x), key=lambda u: (p & compat[u]).bit_count())
        for u in _bits(p & ~compat[pivot]):
            bit = 1 << u
            expand(r | bit, p & compat[u], x & compat[u])
            p &= ~bit
            x |= bit

    expand(0, (1 << n) - 1, 0)
    return out


def _compat_masks(candidates, dist, d_I):
    n = len(candidates)
    compat = [0] * n
    for i in range(n):
        _, ui, vi = candidates[i]
        for k in range(i + 1, n):
            _, uk, vk = candidates[k]
            d1 = dist[uk][vi]
            d2 = dist[ui][vk]
            if (d1 is None or d1 > d_I) and (d2 is None or d2 > d_I):
                compat[i] |= 1 << k
                compat[k] |= 1 << i
    return compat


def _maximal_call_sets(candidates, dist, d_I):
    """All maximal pairwise-compatible subsets, sorted lexicographically.

    candidates must be a sorted list of (packet, u, v) triples.
    """
    compat = _compat_masks(candidates, dist, d_I)
    sets = [tuple(candidates[i] for i in _bits(mask)) for mask in _maximal_cliques(compat)]
    sets.sort()
    return sets


def _compatible_subsets(candidates, dist, d_I):
    """Every nonempty pairwise-compatible subset, in sorted order.

    candidates must be a sorted list of (packet, u, v) triples.  Maximal
    sets alone would not do: an optimal schedule may need to keep a
    packet parked beside a delivery it is compatible with, and
    maximality would force the parked packet onto a retreating call.
    """
    compat = _compat_masks(candidates, dist, d_I)
    out = []

    def extend(prefix, allowed):
        mask = allowed
        while mask:
            low = mask & -mask
            i = low.bit_length() - 1
            mask ^= low
            grown = prefix + (candidates[i],)
            out.append(grown)
            extend(grown, mask & compat[i])

    extend((), (1 << len(candidates)) - 1)
    return out


def enumerate_call_sets(state, instance):
    """Branching universe at a state: the empty set, then every
    nonempty pairwise-compatible set of calls over released undelivered
    packets, sorted.  The universe is deliberately not limited to
    maximal sets; see _compatible_subsets."""
    net = instance.network
    candidates = []
    for j, node in state.positions:
        if instance.packets[j].release <= state.round:
            for v in net.neighbors(node):
                candidates.append((j, node, v))
    candidates.sort()
    sets = _compatible_subsets(candidates, net.distances, net.d_I)
    return [()] + [tuple(Call(*c) for c in s) for s in sets]


def max_induced_matching(u_size, v_size, edges):
    """Size of a largest induced matching of a bipartite graph.

    edges are (u_index, v_index) pairs, 0-based per side.  Two edges can
    coexist iff they share no endpoint and no graph edge joins them.
    Plain include/exclude branching with a count prune; fine for the
    graph sizes this package targets.
    """
    seen = set()
    for e in edges:
        u, v = e
        if not (0 <= u < u_size and 0 <= v < v_size):
            raise ValueError(f"edge {e!r} is outside the bipartite index ranges")
        if (u, v) in seen:
            raise ValueError(f"duplicate edge {e!r}")
        seen.add((u, v))
    edge_list = sorted(seen)

    def conflict(a, b):
        return (a[0] == b[0] or a[1] == b[1]
                or (a[0], b[1]) in seen or (b[0], a[1]) in seen)

    best = 0

    def grow(chosen, available):
        nonlocal best
        if chosen + len(available) <= best:
            return
        if not available:
            best = max(best, chosen)
            return
        head = available[0]
        grow(chosen + 1, [e for e in available[1:] if not conflict(head, e)])
        grow(chosen, available[1:])

    grow(0, edge_list)
    return best


def largest_compatible_call_set(calls, distances, d_I):
    """Maximum number of the given calls that can share one round."""
    triples = sorted((c.packet, c.u, c.v) for c in calls)
    best = 0
    for s in _maximal_call_sets(triples, distances, d_I):
        best = max(best, len(s))
    return best


def solve_exact(instance, objective="completion", budget=DEFAULT_BUDGET,
                bound_cap=None, size_guard=True):
    """Find an optimal schedule for max completion or max flow time.

    Returns an OracleResult; status "unknown" when the node budget runs
    out.  bound_cap limits the deepening and raises ValueError when no
    schedule exists within it.  The size guard rejects instances beyond
    GUARD_PACKETS packets or GUARD_NODES nodes unless disabled.
    """
    if objective not in ("completion", "flow"):
        raise ValueError(f"objective must be 'completion' or 'flow', got {objective!r}")
    net = instance.network
    m = instance.packet_count
    if size_guard and (m > GUARD_PACKETS or net.node_count > GUARD_NODES):
        raise ValueError(
            f"instance beyond the solver guard ({m} packets, {net.node_count} nodes); "
            f"pass size_guard=False to force")

    sink = net.sink
    dist = net.distances
    adj = net.adjacency
    release = [p.release for p in instance.packets]
    moving = [j for j in range(m) if instance.packets[j].origin != sink]
    home_completion = max((release[j] for j in range(m) if j not in set(moving)), default=0)

    if not moving:
        value = home_completion if objective == "completion" else 0
        return OracleResult("optimal", objective, value, Schedule(1, ()), 0)

    ub_run = fifo(instance)
    ub_metrics = validate_schedule(instance, ub_run.schedule)
    ub = int(ub_metrics.max_completion if objective == "completion" else ub_metrics.max_flow)

    lb_completion = max(release[j] + instance.hops_to_sink(j) for j in range(m))
    forest = blocking_forest(instance, ub_run)
    for tree in forest.trees() + (frozenset(range(m)),):
        lb_completion = max(lb_completion, gathering_lower_bound(instance, tree))
    if objective == "completion":
        lb = lb_completion
    else:
        lb = max(max(instance.hops_to_sink(j) for j in moving),
                 lb_completion - max(release), 0)

    top = ub if bound_cap is None else min(bound_cap, ub)
    nodes = 0
    max_release = max(release)
    found = None

    def search(bound):
        nonlocal nodes, found
        memo = {}
        trace = []

        def rec(t, pos):
            nonlocal nodes, found
            nodes += 1
            if nodes > budget:
                raise _BudgetExhausted
            if not pos:
                found = list(trace)
                return True
            for j, x in pos.items():
                start = t if t > release[j] else release[j]
                est = start + dist[x][sink]
                if objective == "flow":
                    est -= release[j]
                if est > bound:
                    return False
            key = tuple(sorted((j, x, release[j] <= t) for j, x in pos.items()))
            seen = memo.get(key)
            if seen is not None and seen <= t:
                return False
            memo[key] = t

            upcoming = [release[j] for j in pos if release[j] > t]
            if upcoming:
                nxt = min(upcoming)
                trace.extend(() for _ in range(nxt - t))
                if rec(nxt, pos):
                    return True
                del trace[t - nxt:]

            ready = sorted(j for j in pos if release[j] <= t)
            if ready:
                candidates = [(j, pos[j], v) for j in ready for v in adj[pos[j]]]
                for callset in _compatible_subsets(candidates, dist, net.d_I):
                    child = dict(pos)
                    for j, _, v in callset:
                        if v == sink:
                            del child[j]
                        else:
                            child[j] = v
                    trace.append(callset)
                    if rec(t + 1, child):
                        return True
                    trace.pop()
            return False

        return rec(0, {j: instance.packets[j].origin for j in moving})

    for bound in range(lb, top + 1):
        try:
            if search(bound):
                rounds = tuple(tuple(Call(*c) for c in s) for s in found)
                return OracleResult("optimal", objective, bound, Schedule(1, rounds), nodes)
        except _BudgetExhausted:
            return OracleResult("unknown", objective, None, None, nodes)

    if bound_cap is not None:
        raise ValueError(f"no feasible schedule within the bound cap {bound_cap}")
    raise RuntimeError("search exhausted every bound up to a known feasible value; "
                       "this indicates a solver bug")
