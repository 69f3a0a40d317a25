"""Recording call/probe event streams while an example runs.

The recorder plugs into the interpreter's hook points. Every traced
frame gets exactly one CallEnter and one CallExit, even when the run
fails (unwinding emits exception exits) or the event cap is reached
(the recorder closes every open frame itself, then aborts the run).

Scope: calls into modules outside the scope emit no events and neither
does anything beneath them (subtree suppression); probe hits fired from
suppressed code are attributed to the nearest traced frame.
"""

from __future__ import annotations

import statistics
import time
import uuid
from dataclasses import dataclass, field
from typing import Optional

from .errors import EvalError, ExampleInactive, Unmeasurable
from .interp import DEFAULT_STEP_LIMIT, Env, Interpreter
from .nodes import MethodId
from .snapshots import error_marker, snapshot

DEFAULT_EVENT_CAP = 1_000_000


@dataclass(frozen=True)
class TraceScope:
    included_modules: frozenset
    always_trace_examples: bool = True


def full_scope(program):
    return TraceScope(frozenset(program.modules))


@dataclass(slots=True)
class CallEnter:
    seq: int
    frame_id: int
    method: MethodId
    parent_frame: Optional[int]
    call_site_node: Optional[int]
    args: list


@dataclass(slots=True)
class CallExit:
    seq: int
    frame_id: int
    exit_kind: str  # "normal" | "exception"
    result: object


@dataclass(slots=True)
class ProbeHit:
    seq: int
    probe_id: str
    frame_id: int
    value: object


@dataclass
class Trace:
    run_id: str
    example_id: str
    scope: TraceScope
    events: list
    status: str  # "completed" | "failed" | "overflowed"
    error: Optional[dict] = None  # {"kind":…, "message":…} when failed
    base_duration_ms: Optional[float] = None
    traced_duration_ms: float = 0.0
    print_log: list = field(default_factory=list)


class TraceOverflow(Exception):
    """Internal: raised by the recorder when the event cap is reached."""


_SUPPRESSED = -1


class TraceRecorder:
    """Implements the interpreter hook protocol (call_enter/call_exit/probe_hit)."""

    def __init__(self, scope, event_cap=DEFAULT_EVENT_CAP):
        self.scope = scope
        self.event_cap = event_cap
        self.events = []
        self.stack = []  # open traced frame ids, innermost last
        self.next_frame = 0
        self.seq = 0
        self.suppress_depth = 0
        self.closed = False

    def _next_seq(self):
        self.seq += 1
        return self.seq

    def _check_room_for_enter(self):
        # reserve one exit slot per open frame plus this enter's own exit
        if len(self.events) + len(self.stack) + 2 > self.event_cap:
            self._overflow()

    def _check_room_for_probe(self):
        if len(self.events) + len(self.stack) + 1 > self.event_cap:
            self._overflow()

    def _overflow(self):
        for fid in reversed(self.stack):
            self.events.append(
                CallExit(self._next_seq(), fid, "exception", error_marker("trace-overflow", "event cap reached"))
            )
        self.stack.clear()
        self.closed = True
        raise TraceOverflow()

    def call_enter(self, method, site_node_id, args):
        if self.closed:
            return _SUPPRESSED
        if self.suppress_depth > 0 or method.module_path not in self.scope.included_modules:
            self.suppress_depth += 1
            return _SUPPRESSED
        self._check_room_for_enter()
        fid = self.next_frame
        self.next_frame += 1
        parent = self.stack[-1] if self.stack else None
        self.events.append(
            CallEnter(self._next_seq(), fid, method, parent, site_node_id, [snapshot(a) for a in args])
        )
        self.stack.append(fid)
        return fid

    def call_exit(self, token, kind, result=None, thrown=None, error=None):
        if token == _SUPPRESSED:
            if self.suppress_depth > 0:
                self.suppress_depth -= 1
            return
        if self.closed:
            return
        assert self.stack and self.stack[-1] == token, "unbalanced call_exit"
        self.stack.pop()
        if kind == "normal":
            payload = snapshot(result)
        elif error is not None:
            payload = error_marker(error.kind, error.message)
        else:
            payload = snapshot(thrown)
        self.events.append(CallExit(self._next_seq(), token, kind, payload))

    def probe_hit(self, probe_id, value):
        if self.closed or not self.stack:
            return
        self._check_room_for_probe()
        self.events.append(ProbeHit(self._next_seq(), probe_id, self.stack[-1], snapshot(value)))


def effective_scope(scope, example):
    included = frozenset(scope.included_modules) | {example.module_path}
    return TraceScope(included)


def trace_run(
    program,
    example,
    scope=None,
    event_cap=DEFAULT_EVENT_CAP,
    step_limit=DEFAULT_STEP_LIMIT,
    run_id=None,
):
    """Run one example with tracing; returns a Trace.

    Setup and teardown blocks run untraced, sharing the body's
    environment. A failing setup yields status=failed with zero events;
    a failing teardown flips status to failed but keeps the body's
    events. Teardown is skipped if the body overflowed the event cap
    (the run was aborted mid-flight).
    """
    if not example.active:
        raise ExampleInactive(example.id)
    if scope is None:
        scope = full_scope(program)
    scope = effective_scope(scope, example)
    rid = run_id if run_id is not None else uuid.uuid4().hex[:12]

    recorder = TraceRecorder(scope, event_cap)
    interp = Interpreter(program, hooks=None, step_limit=step_limit)
    env = Env()
    decl = example.decl

    if decl.setup is not None:
        try:
            interp.run_block(decl.setup, env)
        except EvalError as exc:
            return Trace(
                run_id=rid,
                example_id=example.id,
                scope=scope,
                events=[],
                status="failed",
                error={"kind": exc.kind, "message": exc.message},
                print_log=interp.print_log,
            )

    root_method = MethodId(example.module_path, "#" + example.name)
    interp.hooks = recorder
    status = "completed"
    error = None
    start = time.perf_counter()
    token = recorder.call_enter(root_method, None, [])
    try:
        result = interp.run_block(decl.body, env)
    except EvalError as exc:
        status = "failed"
        error = {"kind": exc.kind, "message": exc.message}
        if exc.kind == "uncaught-throw":
            recorder.call_exit(token, "exception", thrown=exc.value)
        else:
            recorder.call_exit(token, "exception", error=exc)
    except TraceOverflow:
        status = "overflowed"
    else:
        recorder.call_exit(token, "normal", result=result)
    duration_ms = (time.perf_counter() - start) * 1000.0
    interp.hooks = None

    if decl.teardown is not None and status != "overflowed":
        try:
            interp.run_block(decl.teardown, env)
        except EvalError as exc:
            if status == "completed":
                status = "failed"
                error = {"kind": exc.kind, "message": exc.message}

    return Trace(
        run_id=rid,
        example_id=example.id,
        scope=scope,
        events=recorder.events,
        status=status,
        error=error,
        traced_duration_ms=duration_ms,
        print_log=interp.print_log,
    )


def run_untraced(program, example, step_limit=DEFAULT_STEP_LIMIT):
    """Run an example without tracing; returns (value, error) of the body."""
    interp = Interpreter(program, hooks=None, step_limit=step_limit)
    env = Env()
    decl = example.decl
    if decl.setup is not None:
        interp.run_block(decl.setup, env)
    try:
        value = interp.run_block(decl.body, env)
        err = None
    except EvalError as exc:
        value = None
        err = exc
    if decl.teardown is not None:
        interp.run_block(decl.teardown, env)
    return value, err


def measure_overhead(program, example, runs=5, scope=None, step_limit=DEFAULT_STEP_LIMIT):
    """Median traced vs untraced body time over `runs` runs of each.

    Raises Unmeasurable when the untraced body is under 0.1 ms (too
    fast to time to a meaningful factor).
    """
    base_times = []
    for _ in range(runs):
        interp = Interpreter(program, hooks=None, step_limit=step_limit)
        env = Env()
        if example.decl.setup is not None:
            interp.run_block(example.decl.setup, env)
        t0 = time.perf_counter()
        try:
            interp.run_block(example.decl.body, env)
        except EvalError:
            pass
        base_times.append((time.perf_counter() - t0) * 1000.0)
        if example.decl.teardown is not None:
            try:
                interp.run_block(example.decl.teardown, env)
            except EvalError:
                pass
    base_ms = statistics.median(base_times)
    if base_ms < 0.1:
        raise Unmeasurable(base_ms)

    traced_times = []
    for _ in range(runs):
        trace = trace_run(program, example, scope=scope, step_limit=step_limit)
        traced_times.append(trace.traced_duration_ms)
    traced_ms = statistics.median(traced_times)
    return {"base_ms": base_ms, "traced_ms": traced_ms, "factor": traced_ms / base_ms}
