"""Live example runner with probe views and cross-cutting call traces.

Source files (.cc) declare functions, probes (`@{ expr }`), and named
examples (`#example "n" { .. }`). Running an example records a call
trace; the analysis layer turns traces into call trees, call-path
groupings, and probe value timelines that stay current as files change.
"""

from .analysis import (
    CallTree,
    MethodTarget,
    ProbeTarget,
    annotation_set,
    assign_path_indices,
    build_call_tree,
    callees_recursive,
    detailed_paths,
    filter_visibility,
    find_invocation,
    first_invocation,
    locate_hit,
    probe_log,
    probe_values,
    procedure_set,
    summarize_paths,
    value_succession,
)
from .annotations import Annotations, Example, Probe, extract_annotations
from .errors import (
    AnnotationError,
    ApiError,
    CrosscutError,
    EvalError,
    ExampleInactive,
    InvalidScope,
    MalformedTrace,
    NoSources,
    OrdinalOutOfRange,
    ParseError,
    UnknownExample,
    Unmeasurable,
)
from .interp import Interpreter, evaluate
from .nodes import MethodId, SourceSpan
from .parser import parse_module
from .program import SourceProgram, build_program, load_program
from .session import RunRecord, Session, open_session, watch_loop
from .snapshots import snapshot
from .tracefile import export_trace, import_trace
from .tracer import (
    CallEnter,
    CallExit,
    ProbeHit,
    Trace,
    TraceScope,
    full_scope,
    measure_overhead,
    run_untraced,
    trace_run,
)

__all__ = [
    "AnnotationError",
    "Annotations",
    "ApiError",
    "CallEnter",
    "CallExit",
    "CallTree",
    "CrosscutError",
    "EvalError",
    "Example",
    "ExampleInactive",
    "Interpreter",
    "InvalidScope",
    "MalformedTrace",
    "MethodId",
    "MethodTarget",
    "NoSources",
    "OrdinalOutOfRange",
    "ParseError",
    "Probe",
    "ProbeHit",
    "ProbeTarget",
    "RunRecord",
    "Session",
    "SourceProgram",
    "SourceSpan",
    "Trace",
    "TraceScope",
    "UnknownExample",
    "Unmeasurable",
    "annotation_set",
    "assign_path_indices",
    "build_call_tree",
    "build_program",
    "callees_recursive",
    "detailed_paths",
    "evaluate",
    "export_trace",
    "extract_annotations",
    "filter_visibility",
    "find_invocation",
    "first_invocation",
    "full_scope",
    "import_trace",
    "load_program",
    "locate_hit",
    "measure_overhead",
    "open_session",
    "parse_module",
    "probe_log",
    "probe_values",
    "procedure_set",
    "run_untraced",
    "snapshot",
    "summarize_paths",
    "trace_run",
    "value_succession",
    "watch_loop",
]
