"""Reading and writing instances and schedule traces.

Both formats are JSON with a fixed field order and a fixed layout, so
identical objects always serialize to identical bytes.  Readers are
strict: wrong types, missing keys or unknown keys raise FormatError.
"""

from __future__ import annotations

import json

from .model import Call, FormatError, Instance, Network, Packet, Schedule


def _require(cond, message):
    if not cond:
        raise FormatError(message)


def _is_int(x):
    # bool is an int subclass; JSON true/false must not pass as node ids
    return type(x) is int


def instance_to_text(instance):
    """Serialize an instance to its canonical JSON text."""
    data = {
        "nodes": instance.network.node_count,
        "edges": [list(e) for e in sorted(instance.network.edges)],
        "sink": instance.network.sink,
        "d_I": instance.network.d_I,
        "packets": [{"origin": p.origin, "release": p.release} for p in instance.packets],
    }
    if instance.comment is not None:
        data["comment"] = instance.comment
    return json.dumps(data, indent=2) + "\n"


def instance_from_text(text):
    """Parse canonical instance JSON; raises FormatError on any deviation."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    _require(isinstance(data, dict), "instance file must hold a JSON object")
    allowed = {"nodes", "edges", "sink", "d_I", "packets", "comment"}
    for key in sorted(set(data) - allowed):
        raise FormatError(f"unknown instance field {key!r}")
    for key in ("nodes", "edges", "sink", "d_I", "packets"):
        _require(key in data, f"instance field {key!r} is missing")
    _require(_is_int(data["nodes"]), "'nodes' must be an integer")
    _require(_is_int(data["sink"]), "'sink' must be an integer")
    _require(_is_int(data["d_I"]), "'d_I' must be an integer")
    _require(isinstance(data["edges"], list), "'edges' must be a list")
    edges = []
    for e in data["edges"]:
        _require(isinstance(e, list) and len(e) == 2 and all(_is_int(x) for x in e),
                 f"edge {e!r} must be a pair of integers")
        edges.append((e[0], e[1]))
    _require(isinstance(data["packets"], list), "'packets' must be a list")
    packets = []
    for p in data["packets"]:
        _require(isinstance(p, dict) and set(p) == {"origin", "release"}
                 and _is_int(p["origin"]) and _is_int(p["release"]),
                 f"packet {p!r} must be an object with integer origin and release")
        packets.append(Packet(p["origin"], p["release"]))
    comment = data.get("comment")
    _require(comment is None or isinstance(comment, str), "'comment' must be a string")
    try:
        network = Network(data["nodes"], edges, data["sink"], data["d_I"])
        return Instance(network, tuple(packets), comment=comment)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def schedule_to_text(schedule):
    """Serialize a schedule trace to its canonical JSON text."""
    data = {
        "sigma": schedule.sigma,
        "rounds": [
            [{"packet": c.packet, "from": c.u, "to": c.v} for c in calls]
            for calls in schedule.rounds
        ],
    }
    return json.dumps(data, indent=2) + "\n"


def schedule_from_text(text):
    """Parse canonical schedule JSON; raises FormatError on any deviation."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    _require(isinstance(data, dict), "schedule file must hold a JSON object")
    for key in sorted(set(data) - {"sigma", "rounds"}):
        raise FormatError(f"unknown schedule field {key!r}")
    for key in ("sigma", "rounds"):
        _require(key in data, f"schedule field {key!r} is missing")
    _require(_is_int(data["sigma"]), "'sigma' must be an integer")
    _require(isinstance(data["rounds"], list), "'rounds' must be a list")
    rounds = []
    for i, r in enumerate(data["rounds"]):
        _require(isinstance(r, list), f"round {i} must be a list of calls")
        calls = []
        for c in r:
            _require(isinstance(c, dict) and set(c) == {"packet", "from", "to"}
                     and all(_is_int(c[k]) for k in ("packet", "from", "to")),
                     f"round {i}: call {c!r} must have integer packet, from and to")
            calls.append(Call(c["packet"], c["from"], c["to"]))
        rounds.append(tuple(calls))
    try:
        return Schedule(data["sigma"], tuple(rounds))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def load_instance(path):
    with open(path, "r", encoding="utf-8") as fh:
        return instance_from_text(fh.read())


def save_instance(instance, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(instance_to_text(instance))


def load_schedule(path):
    with open(path, "r", encoding="utf-8") as fh:
        return schedule_from_text(fh.read())


def save_schedule(schedule, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(schedule_to_text(schedule))
