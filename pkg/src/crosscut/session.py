"""Project session: source loading, re-runs on change, published runs.

One writer at a time mutates the session (reload, run, scope, active);
queries read the last published run records, which are replaced
wholesale so a reader never sees half a generation. Parse errors keep
the previous runs visible but flagged stale rather than blanking every
view mid-edit.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .analysis import CallTree, assign_path_indices, build_call_tree
from .annotations import extract_annotations
from .errors import (
    EvalError,
    ExampleInactive,
    InvalidScope,
    NoSources,
    ParseError,
    UnknownExample,
)
from .interp import DEFAULT_STEP_LIMIT
from .parser import parse_module
from .program import build_program
from .tracer import DEFAULT_EVENT_CAP, Trace, TraceScope, trace_run

CONFIG_NAME = "crosscut.toml"


@dataclass
class RunRecord:
    run_id: str
    example_id: str
    generation: int
    trace: Trace
    tree: CallTree
    stale: bool = False


@dataclass
class SessionConfig:
    scope: Optional[list] = None
    event_cap: int = DEFAULT_EVENT_CAP
    active: Optional[list] = None
    step_limit: int = DEFAULT_STEP_LIMIT


def _load_config(root_dir):
    cfg_path = Path(root_dir) / CONFIG_NAME
    cfg = SessionConfig()
    if not cfg_path.is_file():
        return cfg
    with open(cfg_path, "rb") as fh:
        data = tomllib.load(fh)
    if "scope" in data:
        cfg.scope = [str(m) for m in data["scope"]]
    if "event_cap" in data:
        cfg.event_cap = int(data["event_cap"])
    if "active" in data:
        cfg.active = [str(e) for e in data["active"]]
    if "step_limit" in data:
        cfg.step_limit = int(data["step_limit"])
    return cfg


def _scan_sources(root_dir):
    root = Path(root_dir)
    sources = {}
    for path in sorted(root.rglob("*.cc")):
        if path.is_file():
            module = path.relative_to(root).as_posix()
            sources[module] = path.read_text(encoding="utf-8")
    return sources


class Session:
    def __init__(self, root_dir, config):
        self.root_dir = Path(root_dir)
        self.config = config
        self.generation = 0
        self.program = None
        self.annotations = None
        self.broken = {}  # module_path -> error string (last reload)
        self.scope_modules = None if config.scope is None else frozenset(config.scope)
        self.runs = {}  # example_id -> RunRecord
        self.runs_by_id = {}  # run_id -> RunRecord (latest generation only)
        self._write_lock = threading.RLock()
        self._listeners = []
        self._listeners_lock = threading.Lock()

    # -- queries ----------------------------------------------------------

    @property
    def examples(self):
        return self.annotations.examples

    @property
    def probes(self):
        return self.annotations.probes

    def get_example(self, example_id):
        ex = self.annotations.examples.get(example_id)
        if ex is None:
            raise UnknownExample(example_id)
        return ex

    def get_run(self, run_id):
        return self.runs_by_id.get(run_id)

    def run_for_example(self, example_id):
        return self.runs.get(example_id)

    def effective_scope(self):
        if self.scope_modules is None:
            return TraceScope(frozenset(self.program.modules))
        return TraceScope(self.scope_modules)

    # -- lifecycle ----------------------------------------------------------

    def _reload(self, partial_ok=False):
        """Parse everything on disk; returns True when all files parse.

        On success the program/annotations are replaced and activation
        flags carry over by example id. On a parse failure the old
        program normally stays (broken files recorded); with
        partial_ok=True (first load) the good modules are kept so a
        project with one broken file still opens usably.
        """
        sources = _scan_sources(self.root_dir)
        if not sources:
            raise NoSources(f"no .cc files under {self.root_dir}")
        modules = {}
        broken = {}
        for module, text in sources.items():
            try:
                modules[module] = parse_module(text, module)
            except ParseError as exc:
                broken[module] = str(exc)
        self.generation += 1
        if broken and not partial_ok:
            self.broken = broken
            return False
        good_sources = {m: sources[m] for m in modules}
        try:
            program = build_program(modules, good_sources)
        except ParseError as exc:
            # import wiring errors land on the importing module
            broken[exc.span.module_path if exc.span else "<project>"] = str(exc)
            self.broken = broken
            return False
        annotations = extract_annotations(program)
        old = self.annotations
        if old is not None:
            for eid, ex in annotations.examples.items():
                prev = old.examples.get(eid)
                if prev is not None:
                    ex.active = prev.active
        elif self.config.active is not None:
            allowed = set(self.config.active)
            for eid, ex in annotations.examples.items():
                ex.active = eid in allowed or ex.name in allowed
        self.program = program
        self.annotations = annotations
        self.broken = broken
        return not broken

    def _trace_example(self, example):
        run_id = uuid.uuid4().hex[:12]
        trace = trace_run(
            self.program,
            example,
            scope=self.effective_scope(),
            event_cap=self.config.event_cap,
            step_limit=self.config.step_limit,
            run_id=run_id,
        )
        tree = build_call_tree(trace, self.annotations.probes)
        assign_path_indices(tree)
        return RunRecord(run_id, example.id, self.generation, trace, tree)

    def _publish(self, records, drop_missing):
        """Replace run records in one swap; notify listeners."""
        new_runs = {} if drop_missing else dict(self.runs)
        for rec in records:
            new_runs[rec.example_id] = rec
        by_id = {rec.run_id: rec for rec in new_runs.values()}
        self.runs = new_runs
        self.runs_by_id = by_id
        run_ids = [rec.run_id for rec in records]
        if run_ids:
            self._notify_listeners({"type": "runs-updated", "run_ids": run_ids})
        return run_ids

    def _mark_all_stale(self):
        for rec in self.runs.values():
            rec.stale = True
        if self.runs:
            self._notify_listeners(
                {"type": "runs-updated", "run_ids": [rec.run_id for rec in self.runs.values()]}
            )

    def _run_all_active(self):
        records = []
        for example in self.annotations.examples.values():
            if example.active:
                records.append(self._trace_example(example))
        return self._publish(records, drop_missing=True)

    # -- public operations -----------------------------------------------

    def run_example(self, example_id):
        with self._write_lock:
            example = self.get_example(example_id)
            if not example.active:
                raise ExampleInactive(example_id)
            rec = self._trace_example(example)
            self._publish([rec], drop_missing=False)
            return rec.run_id

    def notify_change(self, changed_path=None):
        """Full reload + re-run of all active examples.

        Returns the fresh run ids. On parse errors nothing re-runs and
        the previous runs are kept, flagged stale.
        """
        with self._write_lock:
            ok = self._reload()
            if not ok:
                self._mark_all_stale()
                return []
            return self._run_all_active()

    def set_scope(self, modules):
        """modules=None means every module; otherwise an iterable of
        module paths, which must cover all active examples' modules."""
        with self._write_lock:
            if modules is None:
                self.scope_modules = None
            else:
                included = frozenset(str(m) for m in modules)
                unknown = included - set(self.program.modules)
                if unknown:
                    raise InvalidScope(f"unknown modules: {sorted(unknown)}")
                for example in self.annotations.examples.values():
                    if example.active and example.module_path not in included:
                        raise InvalidScope(
                            f"scope excludes module {example.module_path!r} of active "
                            f"example {example.id!r}"
                        )
                self.scope_modules = included
            return self._run_all_active()

    def set_active(self, example_id, active):
        """Flip activation; activating runs the example, deactivating
        drops its run (runs only exist for active examples)."""
        with self._write_lock:
            example = self.get_example(example_id)
            if example.active == bool(active):
                return self.runs[example_id].run_id if example_id in self.runs else None
            example.active = bool(active)
            if example.active:
                rec = self._trace_example(example)
                self._publish([rec], drop_missing=False)
                return rec.run_id
            if example_id in self.runs:
                new_runs = dict(self.runs)
                new_runs.pop(example_id)
                self.runs = new_runs
                self.runs_by_id = {rec.run_id: rec for rec in new_runs.values()}
                self._notify_listeners({"type": "runs-updated", "run_ids": []})
            return None

    # -- change feed --------------------------------------------------------

    def subscribe(self):
        import queue

        q = queue.Queue()
        with self._listeners_lock:
            self._listeners.append(q)
        return q

    def unsubscribe(self, q):
        with self._listeners_lock:
            if q in self._listeners:
                self._listeners.remove(q)

    def _notify_listeners(self, message):
        with self._listeners_lock:
            listeners = list(self._listeners)
        for q in listeners:
            q.put(message)


def open_session(root_dir, run_on_open=False):
    """Load a project directory. Raises NoSources when no .cc files exist.

    Parse errors do not prevent opening; failing modules are listed in
    session.broken and nothing runs until they parse again.
    """
    config = _load_config(root_dir)
    session = Session(root_dir, config)
    ok = session._reload(partial_ok=True)
    if not ok and session.program is None:
        # nothing parseable at all: keep an empty program so queries work
        session.program = build_program({}, {})
        from .annotations import Annotations

        session.annotations = Annotations()
    if ok and run_on_open:
        session._run_all_active()
    return session


def watch_loop(session, stop_event=None, poll_interval=0.1, debounce=0.15, on_runs=None):
    """Poll mtimes of **/*.cc (and the config file); after a quiet
    debounce window, fire notify_change. Runs until stop_event is set."""
    root = session.root_dir

    def snap():
        state = {}
        for path in root.rglob("*.cc"):
            try:
                state[path.as_posix()] = path.stat().st_mtime_ns
            except OSError:
                continue
        cfg = root / CONFIG_NAME
        if cfg.is_file():
            state[cfg.as_posix()] = cfg.stat().st_mtime_ns
        return state

    last = snap()
    pending_since = None
    while stop_event is None or not stop_event.is_set():
        time.sleep(poll_interval)
        current = snap()
        if current != last:
            last = current
            pending_since = time.monotonic()
            continue
        if pending_since is not None and time.monotonic() - pending_since >= debounce:
            pending_since = None
            run_ids = session.notify_change()
            if on_runs is not None:
                on_runs(run_ids)
