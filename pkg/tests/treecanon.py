"""Canonical forms for comparing the engine's call trees against the
reference interpreter's, and brute-force re-implementations of the
path/filter queries used as oracles in the acceptance suite."""

from __future__ import annotations

from reference_interp import RefHit


def canon_snapshot(snap):
    """Error markers carry implementation-worded messages; reduce them
    to their kind so the two implementations stay comparable."""
    if isinstance(snap, dict):
        if "$error" in snap and isinstance(snap["$error"], dict):
            return {"$error": snap["$error"].get("kind")}
        return {k: canon_snapshot(v) for k, v in snap.items()}
    if isinstance(snap, list):
        return [canon_snapshot(x) for x in snap]
    return snap


def canon_real_tree(tree):
    """analysis.CallTree -> nested plain dicts."""

    def node(n):
        if n.is_hit:
            return {"hit": n.probe_id, "value": canon_snapshot(n.value)}
        return {
            "frame": n.frame_id,
            "method": (n.method.module_path, n.method.function_name),
            "site": n.call_site_node,
            "args": [canon_snapshot(a) for a in n.args],
            "exit": n.exit_kind,
            "result": canon_snapshot(n.result),
            "children": [node(c) for c in n.children],
        }

    return {
        "status": tree.status,
        "error": tree.error["kind"] if tree.error else None,
        "root": node(tree.root) if tree.root is not None else None,
    }


def canon_ref_tree(rtree):
    """reference_interp.RefTree -> the same nested shape."""

    def node(n):
        if isinstance(n, RefHit):
            return {"hit": n.probe_id, "value": canon_snapshot(n.value)}
        return {
            "frame": n.frame_id,
            "method": n.method,
            "site": n.site,
            "args": [canon_snapshot(a) for a in n.args],
            "exit": n.exit_kind,
            "result": canon_snapshot(n.result),
            "children": [node(c) for c in n.children],
        }

    return {
        "status": rtree.status,
        "error": rtree.error_kind,
        "root": node(rtree.root) if rtree.root is not None else None,
    }


# -- brute-force path oracle -------------------------------------------------


def brute_detailed(tree, target):
    """Recursive walk of the real CallTree collecting ancestor chains.

    target: ("probe", probe_id) or ("method", MethodId). Returns a list
    of (methods_tuple, frames_tuple, terminal_seq).
    """
    kind, key = target
    out = []

    def walk(node, chain):
        chain = chain + [node]
        if kind == "method" and node.method == key:
            out.append(
                (
                    tuple((n.method.module_path, n.method.function_name) for n in chain),
                    tuple(n.frame_id for n in chain),
                    node.enter_seq,
                )
            )
        for child in node.children:
            if child.is_hit:
                if kind == "probe" and child.probe_id == key:
                    out.append(
                        (
                            tuple((n.method.module_path, n.method.function_name) for n in chain),
                            tuple(n.frame_id for n in chain),
                            child.seq,
                        )
                    )
            else:
                walk(child, chain)

    if tree.root is not None:
        walk(tree.root, [])
    out.sort(key=lambda item: item[2])
    return out


def brute_summarize(tree, target):
    """Group brute_detailed by method tuple; naive pairwise LCA walk."""
    detailed = brute_detailed(tree, target)
    groups = {}
    order = []
    for methods, frames, seq in detailed:
        if methods not in groups:
            groups[methods] = []
            order.append(methods)
        groups[methods].append((frames, seq))

    paths = []
    for color, methods in enumerate(order):
        members = groups[methods]
        paths.append(
            {
                "methods": methods,
                "hit_count": len(members),
                "member_seqs": frozenset(seq for _, seq in members),
                "color_index": color,
            }
        )

    if not paths:
        root_frame = tree.root.frame_id if tree.root is not None else None
        return {"paths": [], "depth": 0, "lca": root_frame}

    depth = 0
    for i in range(min(len(p["methods"]) for p in paths)):
        if len({p["methods"][i] for p in paths}) == 1:
            depth = i + 1
        else:
            break

    # context-sensitive ancestor: repeated pairwise ancestor-walk over
    # the occurrences' enclosing frames
    def ancestors(frame_id):
        node = tree.by_frame[frame_id]
        chain = []
        while node is not None:
            chain.append(node.frame_id)
            node = node.parent
        return chain  # self first, root last

    def pair_lca(a, b):
        aa = ancestors(a)
        bb = set(ancestors(b))
        for fid in aa:
            if fid in bb:
                return fid
        raise AssertionError("no common ancestor")

    frames = [f[-1] for _, f, _ in detailed]
    lca = frames[0]
    for fid in frames[1:]:
        lca = pair_lca(lca, fid)
    return {"paths": paths, "depth": depth, "lca": lca}


def brute_filter(tree, query):
    """The visibility law, evaluated the slow way: for every node test
    matches(n) or any-descendant-matches via a fresh full subtree scan."""
    q = query.lower()
    excerpts = tree.probe_excerpts or {}

    def matches(node):
        if node.is_hit:
            if q in node.probe_id.lower():
                return True
            ex = excerpts.get(node.probe_id)
            return ex is not None and q in ex.lower()
        return q in f"{node.method.module_path}.{node.method.function_name}".lower()

    def descendants(node):
        if node.is_hit:
            return
        for child in node.children:
            yield child
            yield from descendants(child)

    matching = set()
    visible = set()

    def every(node):
        if matches(node):
            matching.add(node.seq)
        if matches(node) or any(matches(d) for d in descendants(node)):
            visible.add(node.seq)
        if not node.is_hit:
            for child in node.children:
                every(child)

    if tree.root is not None:
        every(tree.root)
    return matching, visible
