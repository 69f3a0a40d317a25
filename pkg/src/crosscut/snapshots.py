"""Immutable JSON-shaped copies of runtime values.

Snapshots are plain JSON trees. Runtime values that have no JSON
spelling are encoded as single-key marker objects; the keys start with
"$", which no record field can (record keys are identifiers), so the
encoding is unambiguous:

    {"$fn": "m.cc/f"}                  function reference
    {"$fn": "<lambda>@m.cc:3:12"}      lambda reference
    {"$truncated": true}               depth/size limit hit
    {"$cycle": true}                   value contains itself
    {"$float": "inf"|"-inf"|"nan"}     non-finite floats
    {"$error": {"kind":…, "message":…}}  a frame that ended in a runtime error

Depth limit 8: containers nested at depth 8 are replaced by the
truncated marker. Lists/records keep at most 100 entries; a list gets a
trailing truncated marker, a record gets a "$truncated": true key.
"""

from __future__ import annotations

import math

from .interp import Builtin, Closure

MAX_DEPTH = 8
MAX_ENTRIES = 100


def _fn_ref(value):
    mid = value.method_id
    name = mid.function_name
    if name.startswith("<lambda>@"):
        return {"$fn": f"<lambda>@{mid.module_path}:{name[9:]}"}
    return {"$fn": mid.qualified()}


def _snap(value, depth, seen):
    t = type(value)
    if value is None or t is bool or t is str or t is int:
        return value
    if t is float:
        if math.isfinite(value):
            return value
        if value != value:
            return {"$float": "nan"}
        return {"$float": "inf" if value > 0 else "-inf"}
    if t is list:
        if depth >= MAX_DEPTH:
            return {"$truncated": True}
        vid = id(value)
        if vid in seen:
            return {"$cycle": True}
        seen.add(vid)
        out = [_snap(x, depth + 1, seen) for x in value[:MAX_ENTRIES]]
        if len(value) > MAX_ENTRIES:
            out.append({"$truncated": True})
        seen.discard(vid)
        return out
    if t is dict:
        if depth >= MAX_DEPTH:
            return {"$truncated": True}
        vid = id(value)
        if vid in seen:
            return {"$cycle": True}
        seen.add(vid)
        out = {}
        for i, (k, v) in enumerate(value.items()):
            if i >= MAX_ENTRIES:
                out["$truncated"] = True
                break
            out[k] = _snap(v, depth + 1, seen)
        seen.discard(vid)
        return out
    if t is Closure:
        return _fn_ref(value)
    if t is Builtin:
        return {"$fn": f"builtin/{value.name}"}
    raise TypeError(f"cannot snapshot {t.__name__}")


def snapshot(value):
    """Deep, detached copy of a runtime value as a JSON tree."""
    return _snap(value, 0, set())


def error_marker(kind, message):
    return {"$error": {"kind": kind, "message": message}}


def is_marker(snap, key):
    return type(snap) is dict and key in snap
