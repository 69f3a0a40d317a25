"""Call-tree reconstruction and the cross-cutting query operations.

The tree is rebuilt from a Trace's event stream in one left-to-right
pass. All queries are pure reads; a built CallTree is never mutated
except for the optional path_index stamps on probe hits.

Node identity in query results is the node's seq (enter seq for
invocations, hit seq for probe hits); seqs are unique across a trace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import MalformedTrace, OrdinalOutOfRange
from .nodes import MethodId
from .tracer import CallEnter, CallExit, ProbeHit


@dataclass(slots=True)
class Invocation:
    frame_id: int
    method: MethodId
    enter_seq: int
    exit_seq: Optional[int]
    exit_kind: Optional[str]  # "normal" | "exception"
    args: list
    result: object
    call_site_node: Optional[int]
    parent: Optional["Invocation"]
    children: list = field(default_factory=list)

    @property
    def seq(self):
        return self.enter_seq

    @property
    def is_hit(self):
        return False


@dataclass(slots=True)
class ProbeHitNode:
    probe_id: str
    seq: int
    value: object
    parent: Invocation
    path_index: Optional[int] = None

    @property
    def is_hit(self):
        return True


@dataclass(frozen=True, slots=True)
class ProbeTarget:
    probe_id: str


@dataclass(frozen=True, slots=True)
class MethodTarget:
    method: MethodId


@dataclass(slots=True)
class DetailedPath:
    frames: list  # [(frame_id, MethodId)] root -> occurrence frame
    terminal: object  # ProbeHitNode | Invocation

    @property
    def terminal_seq(self):
        return self.terminal.seq


@dataclass(slots=True)
class SummarizedPath:
    methods: tuple  # MethodIds root -> target
    hit_count: int
    member_seqs: frozenset
    color_index: int
    first_seq: int


@dataclass(slots=True)
class PathSummary:
    paths: list
    common_ancestor_depth: int
    context_sensitive_ancestor: Optional[int]  # frame_id, None only for empty trees


@dataclass
class CallTree:
    root: Optional[Invocation]
    by_frame: dict
    invocations: list  # enter-seq order (root first)
    hits: list  # seq order
    hits_by_probe: dict
    node_by_seq: dict
    example_id: str
    status: str
    error: Optional[dict] = None
    # static probe metadata when the program is at hand (None for
    # imported traces without sources)
    probe_methods: Optional[dict] = None
    probe_excerpts: Optional[dict] = None


def build_call_tree(trace, probes=None):
    """Single pass over trace.events; validates bracketing as it goes.

    `probes` (mapping probe_id -> annotations.Probe) enriches the tree
    with static probe metadata used by succession and filtering.
    """
    root = None
    stack = []
    by_frame = {}
    invocations = []
    hits = []
    hits_by_probe = {}
    node_by_seq = {}
    last_frame = -1
    root_closed = False

    for i, ev in enumerate(trace.events):
        if ev.seq != i + 1:
            raise MalformedTrace(f"event {i} has seq {ev.seq}, expected {i + 1}")
        if root_closed:
            raise MalformedTrace(f"event at seq {ev.seq} after the root frame closed")
        t = type(ev)
        if t is CallEnter:
            if ev.frame_id <= last_frame:
                raise MalformedTrace(
                    f"frame id {ev.frame_id} at seq {ev.seq} does not increase (last {last_frame})"
                )
            last_frame = ev.frame_id
            parent = stack[-1] if stack else None
            expected_parent = parent.frame_id if parent is not None else None
            if ev.parent_frame != expected_parent:
                raise MalformedTrace(
                    f"enter of frame {ev.frame_id} claims parent {ev.parent_frame}, "
                    f"open frame is {expected_parent}"
                )
            node = Invocation(
                frame_id=ev.frame_id,
                method=ev.method,
                enter_seq=ev.seq,
                exit_seq=None,
                exit_kind=None,
                args=ev.args,
                result=None,
                call_site_node=ev.call_site_node,
                parent=parent,
            )
            if parent is None:
                if root is not None:
                    raise MalformedTrace("second root frame")
                root = node
            else:
                parent.children.append(node)
            by_frame[ev.frame_id] = node
            invocations.append(node)
            node_by_seq[ev.seq] = node
            stack.append(node)
        elif t is CallExit:
            if not stack or stack[-1].frame_id != ev.frame_id:
                open_id = stack[-1].frame_id if stack else None
                raise MalformedTrace(
                    f"exit of frame {ev.frame_id} at seq {ev.seq}, open frame is {open_id}"
                )
            if ev.exit_kind not in ("normal", "exception"):
                raise MalformedTrace(f"unknown exit kind {ev.exit_kind!r} at seq {ev.seq}")
            node = stack.pop()
            node.exit_seq = ev.seq
            node.exit_kind = ev.exit_kind
            node.result = ev.result
            if not stack:
                root_closed = True
        elif t is ProbeHit:
            owner = None
            for frame in reversed(stack):
                if frame.frame_id == ev.frame_id:
                    owner = frame
                    break
            if owner is None:
                raise MalformedTrace(
                    f"probe hit at seq {ev.seq} references frame {ev.frame_id} which is not open"
                )
            hit = ProbeHitNode(ev.probe_id, ev.seq, ev.value, owner)
            owner.children.append(hit)
            hits.append(hit)
            hits_by_probe.setdefault(ev.probe_id, []).append(hit)
            node_by_seq[ev.seq] = hit
        else:
            raise MalformedTrace(f"unknown event type {t.__name__}")

    if stack:
        raise MalformedTrace(f"{len(stack)} frame(s) left open at end of trace")
    if trace.events and root is None:
        raise MalformedTrace("no root frame")

    tree = CallTree(
        root=root,
        by_frame=by_frame,
        invocations=invocations,
        hits=hits,
        hits_by_probe=hits_by_probe,
        node_by_seq=node_by_seq,
        example_id=trace.example_id,
        status=trace.status,
        error=trace.error,
    )
    if probes is not None:
        tree.probe_methods = {pid: p.enclosing_method for pid, p in probes.items()}
        tree.probe_excerpts = {pid: p.source_excerpt for pid, p in probes.items()}
    return tree


# -- simple aggregations --------------------------------------------------


def procedure_set(tree):
    """Invocation counts per method; the synthetic root is not a procedure."""
    counts = {}
    for inv in tree.invocations:
        if inv is tree.root:
            continue
        counts[inv.method] = counts.get(inv.method, 0) + 1
    return counts


def annotation_set(tree, probes=None):
    """Hit counts per probe_id; probes known statically start at 0."""
    counts = {}
    if probes is not None:
        for pid in probes:
            counts[pid] = 0
    for hit in tree.hits:
        counts[hit.probe_id] = counts.get(hit.probe_id, 0) + 1
    return counts


# -- paths ----------------------------------------------------------------


def _frame_chain(node):
    """[(frame_id, method)] from root down to `node` (an Invocation)."""
    chain = []
    while node is not None:
        chain.append((node.frame_id, node.method))
        node = node.parent
    chain.reverse()
    return chain


def _occurrences(tree, target):
    if isinstance(target, ProbeTarget):
        return tree.hits_by_probe.get(target.probe_id, [])
    if isinstance(target, MethodTarget):
        return [inv for inv in tree.invocations if inv.method == target.method]
    raise TypeError(f"not a target: {target!r}")


def detailed_paths(tree, target):
    """One path per occurrence, in seq order."""
    paths = []
    for occ in _occurrences(tree, target):
        frame = occ.parent if occ.is_hit else occ
        paths.append(DetailedPath(_frame_chain(frame), occ))
    return paths


def summarize_paths(tree, target):
    """Group detailed paths by method sequence; frame identities erased.

    Zero occurrences give an empty summary (paths=[], depth 0, ancestor
    = root frame) so uncovered targets render as a "no hits" state.
    """
    detailed = detailed_paths(tree, target)
    groups = {}
    for dp in detailed:
        key = tuple(m for _, m in dp.frames)
        groups.setdefault(key, []).append(dp)

    paths = []
    for color, (methods, members) in enumerate(groups.items()):
        paths.append(
            SummarizedPath(
                methods=methods,
                hit_count=len(members),
                member_seqs=frozenset(dp.terminal_seq for dp in members),
                color_index=color,
                first_seq=members[0].terminal_seq,
            )
        )

    if not paths:
        root_frame = tree.root.frame_id if tree.root is not None else None
        return PathSummary(paths=[], common_ancestor_depth=0, context_sensitive_ancestor=root_frame)

    depth = 0
    min_len = min(len(p.methods) for p in paths)
    for i in range(min_len):
        column = {p.methods[i] for p in paths}
        if len(column) == 1:
            depth = i + 1
        else:
            break

    chains = [[fid for fid, _ in dp.frames] for dp in detailed]
    lca_prefix = 0
    min_chain = min(len(c) for c in chains)
    for i in range(min_chain):
        column = {c[i] for c in chains}
        if len(column) == 1:
            lca_prefix = i + 1
        else:
            break
    ancestor = chains[0][lca_prefix - 1]

    return PathSummary(paths=paths, common_ancestor_depth=depth, context_sensitive_ancestor=ancestor)


def assign_path_indices(tree):
    """Stamp every hit's path_index from its probe's path summary."""
    for probe_id in tree.hits_by_probe:
        summary = summarize_paths(tree, ProbeTarget(probe_id))
        for path in summary.paths:
            for seq in path.member_seqs:
                tree.node_by_seq[seq].path_index = path.color_index
    return tree


# -- navigation -------------------------------------------------------------


def find_invocation(tree, from_seq, method, direction):
    if direction == "next":
        for inv in tree.invocations:
            if inv.enter_seq > from_seq and inv.method == method:
                return inv
        return None
    if direction == "prev":
        found = None
        for inv in tree.invocations:
            if inv.enter_seq >= from_seq:
                break
            if inv.method == method:
                found = inv
        return found
    raise ValueError(f"direction must be 'next' or 'prev', got {direction!r}")


def first_invocation(tree, method):
    for inv in tree.invocations:
        if inv.method == method:
            return inv
    return None


def locate_hit(tree, probe_id, ordinal):
    hits = tree.hits_by_probe.get(probe_id, [])
    if not isinstance(ordinal, int) or ordinal < 0 or ordinal >= len(hits):
        raise OrdinalOutOfRange(f"probe {probe_id} has {len(hits)} hits, asked for #{ordinal}")
    return hits[ordinal]


def callees_recursive(tree, node):
    """Methods of all invocations beneath `node`, excluding node itself."""
    out = set()
    work = [c for c in node.children if not c.is_hit]
    while work:
        inv = work.pop()
        out.add(inv.method)
        work.extend(c for c in inv.children if not c.is_hit)
    return out


# -- probe-centric views ----------------------------------------------------


def _hit_method(tree, hit):
    if tree.probe_methods is not None and hit.probe_id in tree.probe_methods:
        return tree.probe_methods[hit.probe_id]
    return hit.parent.method


def value_succession(tree, hit):
    """Nearest hit before/after within the same enclosing method."""
    method = _hit_method(tree, hit)
    pool = [h for h in tree.hits if _hit_method(tree, h) == method]
    idx = pool.index(hit)
    prev_hit = pool[idx - 1] if idx > 0 else None
    next_hit = pool[idx + 1] if idx + 1 < len(pool) else None
    return {"prev": prev_hit, "next": next_hit}


def probe_values(tree, probe_id, summary):
    seq_to_color = {}
    for path in summary.paths:
        for seq in path.member_seqs:
            seq_to_color[seq] = path.color_index
    return [
        {"value": h.value, "seq": h.seq, "path_color_index": seq_to_color.get(h.seq)}
        for h in tree.hits_by_probe.get(probe_id, [])
    ]


def probe_log(tree):
    return [{"probe_id": h.probe_id, "seq": h.seq, "value": h.value} for h in tree.hits]


# -- filtering ---------------------------------------------------------------


def filter_visibility(tree, query):
    """Returns (matching, visible) sets of node seqs.

    A node matches on a case-insensitive substring of "module.name"
    (invocations) or probe_id/source excerpt (hits). A node is visible
    iff it matches or any descendant matches.
    """
    q = query.lower()
    matching = set()
    visible = set()
    if tree.root is None:
        return matching, visible

    excerpts = tree.probe_excerpts or {}

    def match_hit(hit):
        if q in hit.probe_id.lower():
            return True
        excerpt = excerpts.get(hit.probe_id)
        return excerpt is not None and q in excerpt.lower()

    def walk(node):
        # returns visibility of node
        if node.is_hit:
            if match_hit(node):
                matching.add(node.seq)
                visible.add(node.seq)
                return True
            return False
        node_matches = q in node.method.match_text()
        if node_matches:
            matching.add(node.seq)
        any_child = False
        for child in node.children:
            if walk(child):
                any_child = True
        if node_matches or any_child:
            visible.add(node.seq)
            return True
        return False

    walk(tree.root)
    return matching, visible
