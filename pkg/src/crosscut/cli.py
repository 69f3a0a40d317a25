"""Command-line front end.

Every command renders the same JSON payloads the HTTP service returns,
so the two surfaces cannot disagree about what a run contains.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import payloads
from .analysis import assign_path_indices, build_call_tree
from .errors import ApiError, CrosscutError, EvalError
from .session import RunRecord, open_session, watch_loop
from .tracefile import export_trace, import_trace


def _fmt(value):
    return json.dumps(value, separators=(",", ":"))


def _mname(m):
    if m["name"].startswith("#"):
        return f"{m['module']}{m['name']}"
    return f"{m['module']}/{m['name']}"


def _error_label(exc):
    if isinstance(exc, EvalError):
        return exc.kind
    if isinstance(exc, ApiError):
        return exc.code
    return re.sub(r"(?<!^)(?=[A-Z])", "-", type(exc).__name__).lower()


# -- rendering -------------------------------------------------------------


def render_probe_log(payload, out):
    for entry in payload["entries"]:
        excerpt = f" [{entry['excerpt']}]" if "excerpt" in entry else ""
        out.write(f"{entry['probe']}{excerpt} = {_fmt(entry['value'])}\n")


def _node_line(node):
    if node["type"] == "probe":
        line = f"@ {node['probe']} = {_fmt(node['value'])}"
    else:
        head = _mname(node["method"])
        args = ", ".join(_fmt(a) for a in node["args"])
        if node["exit_kind"] == "normal":
            tail = f"-> {_fmt(node['result'])}"
        else:
            tail = f"!! {_fmt(node['result'])}"
        line = f"{head} (frame {node['frame']}) [{args}] {tail}"
    if node.get("match"):
        line += " *"
    return line


def render_tree(payload, out, collapsed=False):
    root = payload["root"]
    if root is None:
        out.write("(no events)\n")
        return

    if collapsed:
        out.write(f"{_node_line(root)} ({root['child_count']} children)\n")
        return

    def walk(node, indent):
        if node.get("visible") is False:
            return
        out.write("  " * indent + _node_line(node) + "\n")
        for child in node.get("children", ()):
            walk(child, indent + 1)

    walk(root, 0)


def render_paths(payload, out):
    target = payload["target"]
    if payload["mode"] == "summarized":
        depth = payload["common_ancestor_depth"]
        out.write(
            f"{len(payload['paths'])} paths to {target} "
            f"(common ancestor depth {depth}, frame {payload['context_sensitive_ancestor']})\n"
        )
        for p in payload["paths"]:
            names = [_mname(m) for m in p["methods"]]
            shared = " ".join(names[:depth])
            rest = " ".join(names[depth:])
            chain = f"[{shared}] {rest}".strip() if depth else rest
            out.write(f"  {chain}  hits={p['hit_count']} color={p['color_index']}\n")
        return
    out.write(f"{len(payload['paths'])} paths to {target} (detailed)\n")
    for p in payload["paths"]:
        chain = " > ".join(f"{_mname(f['method'])}[{f['frame']}]" for f in p["frames"])
        out.write(f"  {chain} @ seq {p['terminal_seq']} = {_fmt(p['value'])}\n")


def _print_run_status(record, out):
    if record.trace.status != "completed":
        err = record.trace.error or {}
        detail = f" ({err.get('kind')}: {err.get('message', '')})" if err else ""
        out.write(f"status: {record.trace.status}{detail}\n")


# -- commands -----------------------------------------------------------------


def _open_and_run(args):
    session = open_session(args.root)
    run_id = session.run_example(args.example)
    return session.get_run(run_id)


def cmd_run(args, out):
    record = _open_and_run(args)
    for line in record.trace.print_log:
        out.write(line + "\n")
    render_probe_log(payloads.probe_log_json(record), out)
    _print_run_status(record, out)
    return 0


def cmd_tree(args, out):
    record = _open_and_run(args)
    payload = payloads.tree_json(record, filter_query=args.filter)
    render_tree(payload, out, collapsed=args.collapsed)
    _print_run_status(record, out)
    return 0


def cmd_paths(args, out):
    record = _open_and_run(args)
    if args.probe is not None:
        target = payloads.parse_target(f"probe:{args.probe}")
    else:
        target = payloads.parse_target(f"method:{args.method}")
    mode = "detailed" if args.detailed else "summarized"
    render_paths(payloads.paths_json(record, target, mode), out)
    return 0


def cmd_export(args, out):
    record = _open_and_run(args)
    export_trace(record.trace, args.output)
    out.write(f"wrote {args.output} ({len(record.trace.events)} events)\n")
    return 0


def cmd_import(args, out):
    trace = import_trace(args.file)
    tree = build_call_tree(trace)
    assign_path_indices(tree)
    record = RunRecord(trace.run_id, trace.example_id, 0, trace, tree)
    out.write(f"{trace.example_id}: {trace.status} ({len(trace.events)} events)\n")
    render_probe_log(payloads.probe_log_json(record), out)
    return 0


def cmd_watch(args, out):
    from .tracer import ProbeHit

    session = open_session(args.root, run_on_open=True)

    def report(run_ids):
        for run_id in run_ids:
            record = session.get_run(run_id)
            if record is None:
                continue
            hits = sum(1 for e in record.trace.events if isinstance(e, ProbeHit))
            out.write(f"{record.example_id}: {record.trace.status} ({hits} hits)\n")
        for module, message in session.broken.items():
            out.write(f"broken {module}: {message}\n")
        out.flush()

    report([rec.run_id for rec in session.runs.values()])
    try:
        watch_loop(session, on_runs=report)
    except KeyboardInterrupt:
        pass
    return 0


def cmd_serve(args, out):
    from .server import resolve_port, serve

    session = open_session(args.root, run_on_open=True)
    port = resolve_port(args.port)
    out.write(f"listening on http://127.0.0.1:{port}\n")
    out.flush()
    try:
        serve(session, port=port)
    except OSError as exc:
        raise ApiError("port-in-use", f"cannot bind port {port}: {exc}")
    except KeyboardInterrupt:
        pass
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="crosscut",
        description="Run annotated examples and inspect their call traces.",
    )
    parser.add_argument("--root", default=".", help="project directory (default: .)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one example and print its probe log")
    p.add_argument("example", help="example id, e.g. m.cc#ex1")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("tree", help="print the call tree of one example run")
    p.add_argument("example")
    p.add_argument("--filter", help="show only rows passing the visibility filter")
    p.add_argument("--collapsed", action="store_true", help="print only the root row")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("paths", help="print call paths to a probe or method")
    p.add_argument("example")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--probe", help="probe id, e.g. m.cc:1:17")
    target.add_argument("--method", help="method as module/name, e.g. m.cc/g")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--summarized", action="store_true", help="group paths by method chain (default)")
    mode.add_argument("--detailed", action="store_true", help="one row per hit")
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("watch", help="re-run active examples whenever sources change")
    p.set_defaults(func=cmd_watch)

    p = sub.add_parser("serve", help="serve the HTTP API")
    p.add_argument("--port", type=int, help="port (CROSSCUT_PORT overrides)")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("export", help="run one example and write its trace as JSONL")
    p.add_argument("example")
    p.add_argument("-o", "--output", required=True, help="output file")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("import", help="load an exported trace and print its probe log")
    p.add_argument("file")
    p.set_defaults(func=cmd_import)

    return parser


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except CrosscutError as exc:
        print(f"{_error_label(exc)}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
