"""HTTP service over a live session.

Stdlib-only: a ThreadingHTTPServer with a small regex route table. All
responses are JSON except /events, which is a server-sent-event stream
of run updates.
"""

from __future__ import annotations

import json
import os
import queue
import re
import threading
import urllib.parse
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import payloads
from .errors import ApiError, CrosscutError, InvalidScope, UnknownExample

DEFAULT_PORT = 8787


def _unknown_run(run_id):
    return ApiError("unknown-run", f"no run {run_id!r}", status=404)


class Api:
    """Request handling, separated from HTTP plumbing so it can be
    driven directly in tests."""

    def __init__(self, session):
        self.session = session

    def _record(self, run_id):
        rec = self.session.get_run(run_id)
        if rec is None:
            raise _unknown_run(run_id)
        return rec

    # Each handler returns (status, payload_dict).

    def examples(self):
        return 200, payloads.examples_json(self.session)

    def set_active(self, example_id, body):
        if not isinstance(body, dict) or not isinstance(body.get("active"), bool):
            raise ApiError("bad-body", 'expected {"active": true|false}')
        try:
            run_id = self.session.set_active(example_id, body["active"])
        except UnknownExample as exc:
            raise ApiError("unknown-example", str(exc), status=404)
        return 200, {"example_id": example_id, "active": body["active"], "run_id": run_id}

    def run(self, example_id):
        try:
            run_id = self.session.run_example(example_id)
        except UnknownExample as exc:
            raise ApiError("unknown-example", str(exc), status=404)
        except CrosscutError as exc:
            raise ApiError("run-failed", str(exc))
        return 200, payloads.run_json(self.session.get_run(run_id))

    def tree(self, run_id, query):
        rec = self._record(run_id)
        depth = _int_param(query, "depth")
        children_of = _int_param(query, "children-of")
        filt = query.get("filter", [None])[0]
        return 200, payloads.tree_json(rec, filter_query=filt, depth=depth, children_of=children_of)

    def procedures(self, run_id):
        return 200, payloads.procedures_json(self._record(run_id))

    def annotations(self, run_id):
        return 200, payloads.annotations_json(self._record(run_id), self.session.probes)

    def paths(self, run_id, query):
        rec = self._record(run_id)
        target = query.get("target", [None])[0]
        if target is None:
            raise ApiError("bad-target", "missing target parameter")
        mode = query.get("mode", ["summarized"])[0]
        return 200, payloads.paths_json(rec, payloads.parse_target(target), mode)

    def probe_values(self, run_id, probe_id):
        return 200, payloads.probe_values_json(self._record(run_id), probe_id)

    def probe_log(self, run_id):
        return 200, payloads.probe_log_json(self._record(run_id))

    def succession(self, run_id, seq):
        return 200, payloads.succession_json(self._record(run_id), seq)

    def callees(self, run_id, seq):
        return 200, payloads.callees_json(self._record(run_id), seq)

    def find(self, run_id, query):
        rec = self._record(run_id)
        method = query.get("method", [None])[0]
        if method is None:
            raise ApiError("bad-target", "missing method parameter")
        from_raw = query.get("from", [None])[0]
        if from_raw is None:
            raise ApiError("bad-target", "missing from parameter")
        try:
            from_seq = int(from_raw)
        except ValueError:
            raise ApiError("bad-target", f"from must be an integer, got {from_raw!r}")
        direction = query.get("dir", ["next"])[0]
        if direction not in ("next", "prev"):
            raise ApiError("bad-target", f"dir must be next or prev, got {direction!r}")
        return 200, payloads.find_json(rec, payloads.parse_method(method), from_seq, direction)

    def source(self, module):
        return 200, payloads.source_json(self.session, module)

    def set_scope(self, body):
        if not isinstance(body, dict) or "modules" not in body:
            raise ApiError("bad-body", 'expected {"modules": [..] or null}')
        modules = body["modules"]
        if modules is not None and not (
            isinstance(modules, list) and all(isinstance(m, str) for m in modules)
        ):
            raise ApiError("bad-body", "modules must be null or a list of strings")
        try:
            run_ids = self.session.set_scope(modules)
        except InvalidScope as exc:
            raise ApiError("invalid-scope", str(exc))
        scope = self.session.scope_modules
        return 200, {
            "scope": None if scope is None else sorted(scope),
            "run_ids": run_ids,
        }


def _int_param(query, name):
    raw = query.get(name, [None])[0]
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ApiError("bad-param", f"{name} must be an integer, got {raw!r}")


# path regexes; run ids are hex, seqs are decimal, probe ids and module
# paths may contain ':' and '/' so they use greedy tails
_ROUTES_GET = [
    (re.compile(r"^/examples$"), "examples", ()),
    (re.compile(r"^/runs/([^/]+)/tree$"), "tree", ("query",)),
    (re.compile(r"^/runs/([^/]+)/procedures$"), "procedures", ()),
    (re.compile(r"^/runs/([^/]+)/annotations$"), "annotations", ()),
    (re.compile(r"^/runs/([^/]+)/paths$"), "paths", ("query",)),
    (re.compile(r"^/runs/([^/]+)/probe/(.+)/values$"), "probe_values", ()),
    (re.compile(r"^/runs/([^/]+)/probe-log$"), "probe_log", ()),
    (re.compile(r"^/runs/([^/]+)/node/(\d+)/succession$"), "succession", ("int:2",)),
    (re.compile(r"^/runs/([^/]+)/node/(\d+)/callees$"), "callees", ("int:2",)),
    (re.compile(r"^/runs/([^/]+)/find$"), "find", ("query",)),
    (re.compile(r"^/source/(.+)$"), "source", ()),
]

_ROUTES_POST = [
    (re.compile(r"^/examples/(.+)/active$"), "set_active", ("body",)),
    (re.compile(r"^/run/(.+)$"), "run", ()),
    (re.compile(r"^/scope$"), "set_scope", ("body",)),
]


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "crosscut"

    # quiet by default; the serve command is a foreground process
    def log_message(self, fmt, *args):
        pass

    @property
    def api(self):
        return self.server.api

    def _send_json(self, status, payload):
        data = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(data)

    def _dispatch(self, routes, method_has_body):
        parsed = urllib.parse.urlsplit(self.path)
        path = urllib.parse.unquote(parsed.path)
        query = urllib.parse.parse_qs(parsed.query)

        if path == "/events":
            if method_has_body:
                self._send_json(405, {"code": "method-not-allowed", "message": "GET only", "detail": None})
            else:
                self._serve_events()
            return

        for pattern, name, extras in routes:
            m = pattern.match(path)
            if m is None:
                continue
            args = list(m.groups())
            for extra in extras:
                if extra == "query":
                    args.append(query)
                elif extra == "body":
                    args.append(self._read_body())
                elif extra.startswith("int:"):
                    idx = int(extra.split(":")[1]) - 1
                    args[idx] = int(args[idx])
            try:
                status, payload = getattr(self.api, name)(*args)
            except ApiError as exc:
                self._send_json(exc.status, exc.to_json())
                return
            except CrosscutError as exc:
                self._send_json(400, {"code": "error", "message": str(exc), "detail": None})
                return
            self._send_json(status, payload)
            return
        self._send_json(404, {"code": "not-found", "message": f"no route for {path}", "detail": None})

    def _read_body(self):
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            return json.loads(raw)
        except ValueError:
            raise ApiError("bad-body", "request body is not valid JSON")

    def do_GET(self):
        self._dispatch(_ROUTES_GET, method_has_body=False)

    def do_POST(self):
        try:
            self._dispatch(_ROUTES_POST, method_has_body=True)
        except ApiError as exc:
            self._send_json(exc.status, exc.to_json())

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def _serve_events(self):
        """SSE stream; each session update becomes one `data:` line."""
        q = self.api.session.subscribe()
        try:
            self.send_response(200)
            self.send_header("Content-Type", "text/event-stream")
            self.send_header("Cache-Control", "no-cache")
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Connection", "keep-alive")
            self.end_headers()
            self.wfile.write(b": connected\n\n")
            self.wfile.flush()
            while True:
                try:
                    event = q.get(timeout=15.0)
                except queue.Empty:
                    # periodic comment keeps intermediaries from closing us
                    self.wfile.write(b": keep-alive\n\n")
                    self.wfile.flush()
                    continue
                if event is None:
                    break
                data = json.dumps(event)
                self.wfile.write(f"data: {data}\n\n".encode("utf-8"))
                self.wfile.flush()
        except (BrokenPipeError, ConnectionResetError):
            pass
        finally:
            self.api.session.unsubscribe(q)


class CrosscutServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, session, host="127.0.0.1", port=None):
        if port is None:
            port = resolve_port(None)
        super().__init__((host, port), _Handler)
        self.api = Api(session)

    @property
    def port(self):
        return self.server_address[1]


def resolve_port(cli_port):
    """CROSSCUT_PORT wins over the command-line value."""
    env = os.environ.get("CROSSCUT_PORT")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ApiError("bad-port", f"CROSSCUT_PORT is not an integer: {env!r}")
    if cli_port is not None:
        return cli_port
    return DEFAULT_PORT


def serve(session, host="127.0.0.1", port=None, ready=None):
    """Run the service until interrupted. `ready` (if given) is called
    with the server once it is listening; tests use it to grab the port."""
    server = CrosscutServer(session, host=host, port=port)
    if ready is not None:
        ready(server)
    try:
        server.serve_forever(poll_interval=0.1)
    finally:
        server.server_close()


def start_background(session, host="127.0.0.1", port=0):
    """Start on a daemon thread (port 0 picks a free one); returns the
    server, whose .port the caller can read."""
    server = CrosscutServer(session, host=host, port=port)
    thread = threading.Thread(target=server.serve_forever, kwargs={"poll_interval": 0.1}, daemon=True)
    thread.start()
    server._thread = thread
    return server
