"""JSON payload builders shared by the HTTP service and the CLI.

The CLI renders these structures as text; the service returns them
verbatim. Keeping one builder per view is what guarantees the two
surfaces never drift apart.
"""

from __future__ import annotations

from .analysis import (
    MethodTarget,
    ProbeTarget,
    callees_recursive,
    detailed_paths,
    filter_visibility,
    find_invocation,
    probe_log,
    probe_values,
    procedure_set,
    summarize_paths,
    value_succession,
)
from .errors import ApiError
from .nodes import MethodId


def method_json(m):
    return {"module": m.module_path, "name": m.function_name}


def parse_method(text):
    """\"module/name\" with the split on the last slash (module paths may
    contain directories)."""
    if "/" not in text:
        raise ApiError("bad-target", f"method must be module/name, got {text!r}")
    module, name = text.rsplit("/", 1)
    if not module or not name:
        raise ApiError("bad-target", f"method must be module/name, got {text!r}")
    return MethodId(module, name)


def parse_target(text):
    if text.startswith("probe:"):
        return ProbeTarget(text[len("probe:") :])
    if text.startswith("method:"):
        return MethodTarget(parse_method(text[len("method:") :]))
    raise ApiError("bad-target", f"target must be probe:<id> or method:<module>/<name>, got {text!r}")


def target_str(target):
    if isinstance(target, ProbeTarget):
        return f"probe:{target.probe_id}"
    return f"method:{target.method.qualified()}"


# -- tree ---------------------------------------------------------------


def _hit_json(tree, hit, annot):
    out = {
        "type": "probe",
        "seq": hit.seq,
        "probe": hit.probe_id,
        "frame": hit.parent.frame_id,
        "value": hit.value,
        "path_index": hit.path_index,
    }
    if tree.probe_excerpts and hit.probe_id in tree.probe_excerpts:
        out["excerpt"] = tree.probe_excerpts[hit.probe_id]
    if annot is not None:
        matching, visible = annot
        out["match"] = hit.seq in matching
        out["visible"] = hit.seq in visible
    return out


def _call_json(tree, inv, annot, depth):
    out = {
        "type": "call",
        "seq": inv.enter_seq,
        "frame": inv.frame_id,
        "method": method_json(inv.method),
        "site": inv.call_site_node,
        "args": inv.args,
        "exit_kind": inv.exit_kind,
        "result": inv.result,
        "child_count": len(inv.children),
    }
    if annot is not None:
        matching, visible = annot
        out["match"] = inv.enter_seq in matching
        out["visible"] = inv.enter_seq in visible
    if depth is None or depth > 0:
        next_depth = None if depth is None else depth - 1
        out["children"] = [_node_json(tree, c, annot, next_depth) for c in inv.children]
    else:
        out["truncated"] = True
    return out


def _node_json(tree, node, annot, depth):
    if node.is_hit:
        return _hit_json(tree, node, annot)
    return _call_json(tree, node, annot, depth)


def tree_json(record, filter_query=None, depth=None, children_of=None):
    """The call-tree view. `depth` limits nesting (root at depth 0);
    `children_of` returns one node's children instead (lazy expand)."""
    tree = record.tree
    annot = None
    if filter_query is not None:
        annot = filter_visibility(tree, filter_query)

    out = {
        "run_id": record.run_id,
        "example_id": record.example_id,
        "status": record.trace.status,
        "error": record.trace.error,
        "stale": record.stale,
        "generation": record.generation,
    }
    if filter_query is not None:
        out["filter"] = filter_query

    if children_of is not None:
        node = tree.node_by_seq.get(children_of)
        if node is None or node.is_hit:
            raise ApiError("unknown-node", f"no invocation with seq {children_of}", status=404)
        out["children_of"] = children_of
        out["children"] = [_node_json(tree, c, annot, depth) for c in node.children]
        return out

    out["root"] = None if tree.root is None else _node_json(tree, tree.root, annot, depth)
    return out


# -- aggregations ----------------------------------------------------------


def procedures_json(record):
    counts = procedure_set(record.tree)
    items = [
        {"method": method_json(m), "count": n}
        for m, n in sorted(counts.items(), key=lambda kv: (kv[0].module_path, kv[0].function_name))
    ]
    return {"run_id": record.run_id, "procedures": items}


def annotations_json(record, probes):
    from .analysis import annotation_set

    counts = annotation_set(record.tree, probes)
    items = []
    for pid in sorted(counts):
        entry = {"probe": pid, "count": counts[pid]}
        if probes and pid in probes:
            entry["method"] = method_json(probes[pid].enclosing_method)
            entry["excerpt"] = probes[pid].source_excerpt
        items.append(entry)
    return {"run_id": record.run_id, "annotations": items}


# -- paths -------------------------------------------------------------------


def paths_json(record, target, mode):
    tree = record.tree
    if mode == "summarized":
        summary = summarize_paths(tree, target)
        return {
            "run_id": record.run_id,
            "target": target_str(target),
            "mode": "summarized",
            "common_ancestor_depth": summary.common_ancestor_depth,
            "context_sensitive_ancestor": summary.context_sensitive_ancestor,
            "paths": [
                {
                    "methods": [method_json(m) for m in p.methods],
                    "hit_count": p.hit_count,
                    "color_index": p.color_index,
                    "member_seqs": sorted(p.member_seqs),
                    "first_seq": p.first_seq,
                }
                for p in summary.paths
            ],
        }
    if mode == "detailed":
        paths = detailed_paths(tree, target)
        items = []
        for dp in paths:
            terminal = dp.terminal
            entry = {
                "frames": [
                    {"frame": fid, "method": method_json(m)} for fid, m in dp.frames
                ],
                "terminal_seq": dp.terminal_seq,
            }
            if terminal.is_hit:
                entry["kind"] = "probe"
                entry["value"] = terminal.value
            else:
                entry["kind"] = "call"
                entry["exit_kind"] = terminal.exit_kind
                entry["value"] = terminal.result
            items.append(entry)
        return {
            "run_id": record.run_id,
            "target": target_str(target),
            "mode": "detailed",
            "paths": items,
        }
    raise ApiError("bad-mode", f"mode must be summarized or detailed, got {mode!r}")


# -- probe views ---------------------------------------------------------------


def probe_values_json(record, probe_id):
    tree = record.tree
    summary = summarize_paths(tree, ProbeTarget(probe_id))
    values = probe_values(tree, probe_id, summary)
    return {"run_id": record.run_id, "probe": probe_id, "values": values}


def probe_log_json(record):
    tree = record.tree
    entries = []
    for item in probe_log(tree):
        entry = {"probe": item["probe_id"], "seq": item["seq"], "value": item["value"]}
        if tree.probe_excerpts and item["probe_id"] in tree.probe_excerpts:
            entry["excerpt"] = tree.probe_excerpts[item["probe_id"]]
        entries.append(entry)
    return {"run_id": record.run_id, "entries": entries}


def succession_json(record, seq):
    tree = record.tree
    node = tree.node_by_seq.get(seq)
    if node is None or not node.is_hit:
        raise ApiError("unknown-node", f"no probe hit with seq {seq}", status=404)
    result = value_succession(tree, node)

    def brief(hit):
        if hit is None:
            return None
        return {"seq": hit.seq, "probe": hit.probe_id, "value": hit.value, "frame": hit.parent.frame_id}

    return {"run_id": record.run_id, "seq": seq, "prev": brief(result["prev"]), "next": brief(result["next"])}


def callees_json(record, seq):
    tree = record.tree
    node = tree.node_by_seq.get(seq)
    if node is None or node.is_hit:
        raise ApiError("unknown-node", f"no invocation with seq {seq}", status=404)
    methods = sorted(callees_recursive(tree, node), key=lambda m: (m.module_path, m.function_name))
    return {"run_id": record.run_id, "seq": seq, "methods": [method_json(m) for m in methods]}


def find_json(record, method, from_seq, direction):
    tree = record.tree
    inv = find_invocation(tree, from_seq, method, direction)
    if inv is None:
        return {"run_id": record.run_id, "node": None}
    return {"run_id": record.run_id, "node": _call_json(tree, inv, None, 0)}


# -- session-level -----------------------------------------------------------


def run_json(record):
    return {
        "run_id": record.run_id,
        "example_id": record.example_id,
        "status": record.trace.status,
        "error": record.trace.error,
        "stale": record.stale,
        "generation": record.generation,
        "traced_duration_ms": record.trace.traced_duration_ms,
        "event_count": len(record.trace.events),
        "print_log": record.trace.print_log,
    }


def examples_json(session):
    items = []
    for ex in session.examples.values():
        entry = {
            "id": ex.id,
            "module": ex.module_path,
            "name": ex.name,
            "active": ex.active,
            "has_setup": ex.has_setup,
            "has_teardown": ex.has_teardown,
        }
        rec = session.run_for_example(ex.id)
        entry["run"] = None if rec is None else run_json(rec)
        items.append(entry)
    return {
        "examples": items,
        "generation": session.generation,
        "broken": dict(session.broken),
        "scope": None if session.scope_modules is None else sorted(session.scope_modules),
    }


def source_json(session, module):
    if module not in session.program.sources:
        raise ApiError("unknown-module", f"no module {module!r}", status=404)
    text = session.program.sources[module]
    probes = []
    for probe in session.probes.values():
        if probe.module_path != module:
            continue
        span = probe.node.span
        probes.append(
            {
                "probe": probe.probe_id,
                "line": span.start_line,
                "col": span.start_col,
                "end_line": span.end_line,
                "end_col": span.end_col,
                "excerpt": probe.source_excerpt,
                "method": method_json(probe.enclosing_method),
            }
        )
    functions = []
    root = session.program.modules[module]
    from .nodes import ExampleDecl, FunctionDecl

    for decl in root.statements:
        if isinstance(decl, FunctionDecl):
            functions.append(
                {"name": decl.name, "line": decl.span.start_line, "col": decl.span.start_col}
            )
    examples = []
    for decl in root.statements:
        if isinstance(decl, ExampleDecl):
            examples.append(
                {
                    "id": f"{module}#{decl.name}",
                    "name": decl.name,
                    "line": decl.span.start_line,
                    "col": decl.span.start_col,
                }
            )
    return {
        "module": module,
        "text": text,
        "probes": probes,
        "functions": functions,
        "examples": examples,
    }
