"""Example and probe discovery.

Examples are identified as "module_path#name". Probes are identified by
the source position of their `@{` marker, "module_path:line:col", which
stays stable across runs as long as the file text does.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnknownExample
from .nodes import ExampleDecl, FunctionDecl, MethodId, Probe as ProbeNode


@dataclass
class Example:
    id: str
    module_path: str
    name: str
    decl: ExampleDecl
    active: bool = True

    @property
    def has_setup(self):
        return self.decl.setup is not None

    @property
    def has_teardown(self):
        return self.decl.teardown is not None


@dataclass
class Probe:
    probe_id: str
    module_path: str
    node: ProbeNode
    enclosing_method: MethodId
    source_excerpt: str


@dataclass
class Annotations:
    examples: dict = field(default_factory=dict)  # id -> Example, declaration order
    probes: dict = field(default_factory=dict)  # probe_id -> Probe, position order


def example_id(module_path, name):
    return f"{module_path}#{name}"


def _excerpt(source, span):
    lines = source.split("\n")
    if span.start_line == span.end_line:
        text = lines[span.start_line - 1][span.start_col - 1 : span.end_col - 1]
    else:
        parts = [lines[span.start_line - 1][span.start_col - 1 :]]
        parts.extend(lines[span.start_line : span.end_line - 1])
        parts.append(lines[span.end_line - 1][: span.end_col - 1])
        text = " ".join(parts)
    return " ".join(text.split())


def _collect_probes(node, owner, module_path, source, out):
    if isinstance(node, ProbeNode):
        out.append(
            Probe(
                probe_id=node.probe_id,
                module_path=module_path,
                node=node,
                enclosing_method=owner,
                source_excerpt=_excerpt(source, node.inner.span),
            )
        )
        # probes can nest; the inner one keeps the same owner
    if isinstance(node, FunctionDecl):
        # lambdas do not shift ownership: a probe belongs to the
        # innermost named function (or the example body)
        owner = MethodId(module_path, node.name)
    for child in node.children():
        _collect_probes(child, owner, module_path, source, out)


def extract_annotations(program):
    ann = Annotations()
    for path in sorted(program.modules):
        root = program.modules[path]
        source = program.sources[path]
        for decl in root.statements:
            if isinstance(decl, ExampleDecl):
                eid = example_id(path, decl.name)
                ann.examples[eid] = Example(eid, path, decl.name, decl)
                owner = MethodId(path, "#" + decl.name)
                probes = []
                for child in decl.children():
                    _collect_probes(child, owner, path, source, probes)
                for p in probes:
                    ann.probes[p.probe_id] = p
            elif isinstance(decl, FunctionDecl):
                probes = []
                _collect_probes(decl, None, path, source, probes)
                for p in probes:
                    ann.probes[p.probe_id] = p
    return ann


def set_active(annotations, eid, active):
    ex = annotations.examples.get(eid)
    if ex is None:
        raise UnknownExample(eid)
    ex.active = bool(active)
    return ex
