import pytest

from wgather.fileio import instance_to_text
from wgather.generators import (four_layer_instance, grid, line,
                                matching_relay_schedule, random_graph,
                                side_path_schedule, star, trap_instance)
from wgather.model import ScheduleError, validate_schedule
from wgather.schedulers import fifo


def test_line_shape():
    inst = line(5)
    assert inst.network.node_count == 5
    assert inst.network.sink == 4
    assert inst.network.diameter == 4
    assert inst.packets[0].origin == 0
    assert "kind=line" in inst.comment


def test_line_rejects_too_short():
    with pytest.raises(ValueError):
        line(1)


def test_star_shape():
    inst = star(3)
    assert inst.network.sink == 0
    assert inst.packet_count == 3
    assert sorted(p.origin for p in inst.packets) == [1, 2, 3]


def test_grid_shape():
    inst = grid(3, 4)
    net = inst.network
    assert net.node_count == 12
    assert len(net.edges) == 3 * 3 + 4 * 2  # rows*(cols-1) + cols*(rows-1)
    assert net.sink == 0
    assert net.diameter == 5


def test_spread_places_farthest_first():
    inst = line(6, packets=3)
    assert [p.origin for p in inst.packets] == [0, 1, 2]


def test_fixed_origin_policy():
    inst = line(4, packets=2, origins="fixed:1")
    assert [p.origin for p in inst.packets] == [1, 1]
    with pytest.raises(ValueError):
        line(4, packets=1, origins="fixed:9")


def test_random_policies_need_a_seed():
    with pytest.raises(ValueError, match="seed"):
        line(4, packets=2, origins="uniform")
    with pytest.raises(ValueError, match="seed"):
        line(4, packets=2, release="uniform:5")


def test_unknown_policies_rejected():
    with pytest.raises(ValueError, match="origins"):
        line(4, packets=1, origins="everywhere")
    with pytest.raises(ValueError, match="release"):
        line(4, packets=1, release="sometimes")


def test_seeded_policies_are_reproducible():
    a = line(6, packets=4, origins="uniform-nonsink", release="spaced:3", seed=11)
    b = line(6, packets=4, origins="uniform-nonsink", release="spaced:3", seed=11)
    assert a == b
    releases = [p.release for p in a.packets]
    assert releases == sorted(releases)
    assert all(p.origin != a.network.sink for p in a.packets)


def test_random_graph_is_connected_and_stable():
    a = random_graph(8, 0.4, seed=7)
    b = random_graph(8, 0.4, seed=7)
    assert instance_to_text(a) == instance_to_text(b)
    assert a.network.sink == 0
    assert random_graph(8, 0.4, seed=8) != a


def test_random_graph_rejects_bad_probability():
    with pytest.raises(ValueError):
        random_graph(5, 0.0, seed=1)


def test_four_layer_structure():
    inst = four_layer_instance(2, 3)
    net = inst.network
    assert net.node_count == 6
    assert net.sink == 5
    assert net.d_I == 1
    # o-U edges + V-s edges + matching + one clique edge per middle layer
    assert len(net.edges) == 2 + 2 + 2 + 1 + 1
    assert [p.release for p in inst.packets] == [0, 0, 3, 3, 6, 6]
    assert all(p.origin == 0 for p in inst.packets)


def test_four_layer_edge_count_general():
    inst = four_layer_instance(2, 1, u_size=3, v_size=4,
                               cross_edges=[(0, 0), (1, 1), (2, 3)])
    assert len(inst.network.edges) == 3 + 4 + 3 + 3 + 6


def test_four_layer_rejects_bad_cross_edges():
    with pytest.raises(ValueError):
        four_layer_instance(2, 1, cross_edges=[(0, 9)])
    with pytest.raises(ValueError):
        four_layer_instance(2, 1, cross_edges=[(0, 0), (0, 0)])


def relay_matching(k):
    return [(1 + i, 1 + k + i) for i in range(k)]


def test_relay_schedule_flow_is_pipeline_depth():
    for k, phases in ((1, 1), (2, 2), (3, 2)):
        inst = four_layer_instance(k, phases)
        sched = matching_relay_schedule(inst, relay_matching(k))
        met = validate_schedule(inst, sched)
        assert met.max_flow == 2 * k + 1, (k, phases)


def test_relay_single_lane_multi_phase_is_infeasible():
    # one lane cannot load and drain in the same round; the scripted
    # schedule trips the validator on the first phase boundary
    inst = four_layer_instance(1, 2)
    sched = matching_relay_schedule(inst, relay_matching(1))
    with pytest.raises(ScheduleError, match="interfering calls"):
        validate_schedule(inst, sched)


def test_relay_schedule_rejects_non_induced_matching():
    inst = four_layer_instance(2, 1, cross_edges=[(0, 0), (1, 1), (0, 1)])
    with pytest.raises(ValueError, match="induced"):
        matching_relay_schedule(inst, [(1, 3), (2, 4)])


def test_relay_schedule_rejects_wrong_release_pattern():
    inst = four_layer_instance(2, 1)
    with pytest.raises(ValueError, match="release pattern"):
        matching_relay_schedule(inst, [(1, 3)])


def test_relay_schedule_rejects_node_reuse():
    inst = four_layer_instance(2, 1)
    with pytest.raises(ValueError):
        matching_relay_schedule(inst, [(1, 3), (1, 4)])


def test_trap_structure():
    inst = trap_instance(2)
    net = inst.network
    assert net.node_count == 15
    assert net.d_I == 1
    assert inst.packet_count == 6
    assert [p.release for p in inst.packets] == [0, 0, 0, 5, 5, 5]
    for entry in (3, 7, 11):
        assert net.distance(entry, net.sink) == 3


def test_trap_detour_is_one_hop_longer():
    net = trap_instance(1).network
    # removing the hub forces the 4-hop side path
    pruned = [e for e in sorted(net.edges) if 1 not in e]
    from wgather.model import all_pairs_distances
    dist = all_pairs_distances(15, pruned)
    assert dist[3][net.sink] == 4


def test_side_path_schedule_flow_stays_flat():
    for phases in (1, 2, 4, 8):
        inst = trap_instance(phases)
        met = validate_schedule(inst, side_path_schedule(inst))
        assert met.max_flow == 6, phases


def test_fifo_on_trap_grows_linearly():
    flows = []
    for phases in range(1, 5):
        inst = trap_instance(phases)
        flows.append(int(validate_schedule(inst, fifo(inst).schedule).max_flow))
    assert flows == [9, 13, 17, 21]


def test_trap_rejects_bad_phase_count():
    with pytest.raises(ValueError):
        trap_instance(0)


def test_side_path_schedule_rejects_foreign_instance():
    with pytest.raises(ValueError):
        side_path_schedule(line(4))
