"""JSONL serialization of traces.

Line 1 is a header object; every following line is one event in seq
order. Events use the compact field names:

    {"seq":1,"type":"enter","frame":0,"parent":null,
     "method":{"module":"m.cc","name":"#ex1"},"site":null,"args":[]}
    {"seq":4,"type":"probe","probe":"m.cc:1:17","frame":2,"value":6}
    {"seq":5,"type":"exit","frame":2,"kind":"normal","result":6}

Import validates shape eagerly and bracketing lazily (the tree builder
rejects ill-bracketed streams); a truncated or edited file fails with
MalformedTrace instead of producing a half-right tree.
"""

from __future__ import annotations

import json

from .errors import MalformedTrace
from .nodes import MethodId
from .tracer import CallEnter, CallExit, ProbeHit, Trace, TraceScope


def event_to_json(ev):
    t = type(ev)
    if t is CallEnter:
        return {
            "seq": ev.seq,
            "type": "enter",
            "frame": ev.frame_id,
            "parent": ev.parent_frame,
            "method": {"module": ev.method.module_path, "name": ev.method.function_name},
            "site": ev.call_site_node,
            "args": ev.args,
        }
    if t is CallExit:
        return {
            "seq": ev.seq,
            "type": "exit",
            "frame": ev.frame_id,
            "kind": ev.exit_kind,
            "result": ev.result,
        }
    return {
        "seq": ev.seq,
        "type": "probe",
        "probe": ev.probe_id,
        "frame": ev.frame_id,
        "value": ev.value,
    }


def trace_header(trace):
    header = {
        "run_id": trace.run_id,
        "example_id": trace.example_id,
        "scope": {
            "included": sorted(trace.scope.included_modules),
            "always_trace_examples": True,
        },
        "status": trace.status,
        "traced_duration_ms": trace.traced_duration_ms,
    }
    if trace.error is not None:
        header["error"] = trace.error
    return header


def export_trace(trace, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(trace_header(trace)) + "\n")
        for ev in trace.events:
            fh.write(json.dumps(event_to_json(ev)) + "\n")


def _require(obj, key, line_no):
    if key not in obj:
        raise MalformedTrace(f"line {line_no}: missing field {key!r}")
    return obj[key]


def event_from_json(obj, line_no):
    seq = _require(obj, "seq", line_no)
    etype = _require(obj, "type", line_no)
    if not isinstance(seq, int):
        raise MalformedTrace(f"line {line_no}: seq must be an integer")
    if etype == "enter":
        method = _require(obj, "method", line_no)
        if not isinstance(method, dict) or "module" not in method or "name" not in method:
            raise MalformedTrace(f"line {line_no}: method must be {{module,name}}")
        frame = _require(obj, "frame", line_no)
        parent = _require(obj, "parent", line_no)
        args = _require(obj, "args", line_no)
        if not isinstance(args, list):
            raise MalformedTrace(f"line {line_no}: args must be a list")
        return CallEnter(
            seq=seq,
            frame_id=frame,
            method=MethodId(method["module"], method["name"]),
            parent_frame=parent,
            call_site_node=obj.get("site"),
            args=args,
        )
    if etype == "exit":
        kind = _require(obj, "kind", line_no)
        if kind not in ("normal", "exception"):
            raise MalformedTrace(f"line {line_no}: unknown exit kind {kind!r}")
        return CallExit(
            seq=seq,
            frame_id=_require(obj, "frame", line_no),
            exit_kind=kind,
            result=_require(obj, "result", line_no),
        )
    if etype == "probe":
        return ProbeHit(
            seq=seq,
            probe_id=_require(obj, "probe", line_no),
            frame_id=_require(obj, "frame", line_no),
            value=_require(obj, "value", line_no),
        )
    raise MalformedTrace(f"line {line_no}: unknown event type {etype!r}")


def import_trace(path):
    """Reads a JSONL trace and validates its bracketing. Raises MalformedTrace."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].strip():
        raise MalformedTrace("empty trace file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise MalformedTrace(f"line 1: invalid JSON: {exc}") from None
    if not isinstance(header, dict):
        raise MalformedTrace("line 1: header must be an object")
    for key in ("run_id", "example_id", "scope", "status"):
        _require(header, key, 1)
    status = header["status"]
    if status not in ("completed", "failed", "overflowed"):
        raise MalformedTrace(f"line 1: unknown status {status!r}")

    scope_obj = header["scope"]
    included = scope_obj.get("included", []) if isinstance(scope_obj, dict) else []
    scope = TraceScope(frozenset(included))

    events = []
    for i, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedTrace(f"line {i}: invalid JSON: {exc}") from None
        if not isinstance(obj, dict):
            raise MalformedTrace(f"line {i}: event must be an object")
        events.append(event_from_json(obj, i))

    trace = Trace(
        run_id=header["run_id"],
        example_id=header["example_id"],
        scope=scope,
        events=events,
        status=status,
        error=header.get("error"),
        traced_duration_ms=header.get("traced_duration_ms", 0.0),
    )
    validate_bracketing(trace)
    return trace


def validate_bracketing(trace):
    """Stack-scan of the event stream; raises MalformedTrace on violation."""
    from .analysis import build_call_tree

    build_call_tree(trace)
    return True
