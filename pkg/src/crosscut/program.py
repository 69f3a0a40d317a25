"""Assembling parsed modules into one program with global node ids."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParseError
from .nodes import ExampleDecl, FunctionDecl, MethodId, walk
from .parser import parse_module


@dataclass
class SourceProgram:
    """All parsed modules of a root directory, numbered as one id space.

    Node ids are pre-order, dense from 0 within each module; modules are
    laid out one after another in sorted-path order, so every id is
    globally unique and stable for a given set of sources.
    """

    modules: dict  # module_path -> ModuleRoot
    sources: dict  # module_path -> raw text
    functions: dict = field(default_factory=dict)  # MethodId -> FunctionDecl
    imports: dict = field(default_factory=dict)  # module_path -> {qualifier: module_path}
    nodes_by_id: dict = field(default_factory=dict)  # node_id -> Node

    def module_of_node(self, node):
        return node.span.module_path


def build_program(modules, sources):
    """Link parsed ModuleRoots into a SourceProgram.

    `modules` maps module_path -> ModuleRoot (ids dense from 0 each);
    ids are renumbered globally here. Unresolvable imports raise
    ParseError so broken wiring surfaces at load time, not mid-run.
    """
    renumber_modules(modules)
    return _index_program(SourceProgram(modules=dict(modules), sources=dict(sources)))


def _index_program(program):
    for path, root in program.modules.items():
        qual_map = {}
        for imp in root.imports:
            if imp.path not in program.modules:
                raise ParseError(f"import of unknown module \"{imp.path}\"", imp.span)
            qual_map[imp.qualifier] = imp.path
        program.imports[path] = qual_map
        for decl in root.statements:
            if isinstance(decl, FunctionDecl):
                program.functions[MethodId(path, decl.name)] = decl
        for node in walk(root):
            program.nodes_by_id[node.node_id] = node
    return program


def load_program(sources):
    """Parse and link a {module_path: text} mapping. Raises ParseError."""
    modules = {}
    for path in sorted(sources):
        modules[path] = parse_module(sources[path], path)
    renumber_modules(modules)
    return _index_program(SourceProgram(modules=modules, sources=dict(sources)))


def renumber_modules(modules):
    """Shift per-module dense ids into one global space (sorted path order)."""
    offset = 0
    for path in sorted(modules):
        root = modules[path]
        nodes = list(walk(root))
        for node in nodes:
            node.node_id += offset
        offset += len(nodes)


def program_examples(program):
    """All ExampleDecls in module-path order, as (module_path, decl) pairs."""
    out = []
    for path in sorted(program.modules):
        for decl in program.modules[path].statements:
            if isinstance(decl, ExampleDecl):
                out.append((path, decl))
    return out
