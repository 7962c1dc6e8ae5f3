import pytest
from hypothesis import given, strategies as st

from wgather.fileio import (instance_from_text, instance_to_text, load_instance,
                            load_schedule, save_instance, save_schedule,
                            schedule_from_text, schedule_to_text)
from wgather.model import Call, FormatError, Instance, Network, Packet, Schedule
from conftest import corpus_instance, two_packet_path

GOLDEN_INSTANCE = """\
{
  "nodes": 3,
  "edges": [
    [
      0,
      1
    ],
    [
      1,
      2
    ]
  ],
  "sink": 2,
  "d_I": 1,
  "packets": [
    {
      "origin": 0,
      "release": 0
    },
    {
      "origin": 0,
      "release": 0
    }
  ]
}
"""


def test_instance_golden_bytes():
    assert instance_to_text(two_packet_path()) == GOLDEN_INSTANCE


def test_instance_round_trip_with_comment():
    net = Network(4, [(0, 1), (1, 2), (2, 3)], 3, 2)
    inst = Instance(net, [Packet(0, 5)], comment="hand built")
    again = instance_from_text(instance_to_text(inst))
    assert again == inst
    assert again.comment == "hand built"


def test_schedule_round_trip():
    sched = Schedule(4, [[Call(0, 0, 1)], [], [Call(0, 1, 2)]])
    assert schedule_from_text(schedule_to_text(sched)) == sched


def test_path_helpers(tmp_path):
    inst = two_packet_path()
    p = tmp_path / "inst.json"
    save_instance(inst, p)
    assert load_instance(p) == inst
    sched = Schedule(1, [[Call(0, 0, 1)]])
    q = tmp_path / "sched.json"
    save_schedule(sched, q)
    assert load_schedule(q) == sched


def test_serialization_is_stable(tmp_path):
    inst = corpus_instance(17)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    save_instance(inst, a)
    save_instance(inst, b)
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("mutate,message", [
    (lambda d: d.replace('"sink": 2', '"sink": 2, "extra": 1'), "unknown instance field"),
    (lambda d: d.replace('"sink": 2,\n', ""), "'sink' is missing"),
    (lambda d: d.replace('"nodes": 3', '"nodes": 3.0'), "'nodes' must be an integer"),
    (lambda d: d.replace('"nodes": 3', '"nodes": true'), "'nodes' must be an integer"),
    (lambda d: d.replace('"origin": 0', '"origin": false', 1), "integer origin"),
    (lambda d: d.replace('"sink": 2', '"sink": 9'), "sink"),
    (lambda d: d[:-3], "not valid JSON"),
])
def test_instance_rejections(mutate, message):
    with pytest.raises(FormatError, match=message):
        instance_from_text(mutate(GOLDEN_INSTANCE))


def test_instance_rejects_non_object():
    with pytest.raises(FormatError, match="JSON object"):
        instance_from_text("[1, 2]")


def test_instance_rejects_bad_edge_shape():
    bad = GOLDEN_INSTANCE.replace("[\n      0,\n      1\n    ]", "[0, 1, 2]")
    with pytest.raises(FormatError, match="pair of integers"):
        instance_from_text(bad)


def test_instance_rejects_packet_with_extra_key():
    bad = GOLDEN_INSTANCE.replace('"origin": 0,\n      "release": 0',
                                  '"origin": 0,\n      "release": 0,\n      "x": 1', 1)
    with pytest.raises(FormatError, match="packet"):
        instance_from_text(bad)


def test_instance_rejects_non_string_comment():
    bad = GOLDEN_INSTANCE.replace('"d_I": 1,', '"d_I": 1,\n  "comment": 3,')
    with pytest.raises(FormatError, match="comment"):
        instance_from_text(bad)


def test_schedule_rejections():
    good = schedule_to_text(Schedule(1, [[Call(0, 0, 1)]]))
    with pytest.raises(FormatError, match="unknown schedule field"):
        schedule_from_text(good.replace('"sigma": 1', '"sigma": 1, "note": "x"'))
    with pytest.raises(FormatError, match="'rounds' is missing"):
        schedule_from_text('{"sigma": 1}')
    with pytest.raises(FormatError, match="must be an integer"):
        schedule_from_text(good.replace('"sigma": 1', '"sigma": true'))
    with pytest.raises(FormatError, match="sigma"):
        schedule_from_text(good.replace('"sigma": 1', '"sigma": 0'))
    with pytest.raises(FormatError, match="list of calls"):
        schedule_from_text('{"sigma": 1, "rounds": [3]}')
    with pytest.raises(FormatError, match="integer packet"):
        schedule_from_text('{"sigma": 1, "rounds": [[{"packet": 0, "from": 0}]]}')


@given(st.integers(0, 500))
def test_round_trip_random_instances(seed):
    inst = corpus_instance(seed)
    assert instance_from_text(instance_to_text(inst)) == inst
