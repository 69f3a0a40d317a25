"""Syntax tree node types for .cc scripts.

Every node carries a span and a node_id. Ids are assigned in pre-order,
dense from 0 per module; assembling several modules into one program
renumbers them globally (see program.py).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import ClassVar, Optional


@dataclass(frozen=True, slots=True)
class SourceSpan:
    module_path: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int


@dataclass(frozen=True, slots=True)
class MethodId:
    module_path: str
    function_name: str

    def qualified(self):
        return f"{self.module_path}/{self.function_name}"

    def match_text(self):
        # filter queries match against "module.name", case-insensitive
        return f"{self.module_path}.{self.function_name}".lower()


def lambda_name(span):
    return f"<lambda>@{span.start_line}:{span.start_col}"


@dataclass(slots=True)
class Node:
    span: SourceSpan
    node_id: int = field(default=-1, kw_only=True, compare=False)

    kind: ClassVar[str] = "node"

    def children(self):
        return ()


@dataclass(slots=True)
class Literal(Node):
    value: object  # None | bool | int | float | str
    kind: ClassVar[str] = "literal"


@dataclass(slots=True)
class Identifier(Node):
    name: str
    kind: ClassVar[str] = "identifier"


@dataclass(slots=True)
class ListLiteral(Node):
    items: list
    kind: ClassVar[str] = "list"

    def children(self):
        return self.items


@dataclass(slots=True)
class RecordLiteral(Node):
    entries: list  # list of (key, Node), source order
    kind: ClassVar[str] = "record"

    def children(self):
        return [v for _, v in self.entries]


@dataclass(slots=True)
class Index(Node):
    base: Node
    index: Node
    kind: ClassVar[str] = "index"

    def children(self):
        return (self.base, self.index)


@dataclass(slots=True)
class FieldAccess(Node):
    base: Node
    field_name: str
    kind: ClassVar[str] = "field"

    def children(self):
        return (self.base,)


@dataclass(slots=True)
class Call(Node):
    callee: Node
    args: list
    kind: ClassVar[str] = "call"

    def children(self):
        return [self.callee, *self.args]


@dataclass(slots=True)
class Unary(Node):
    op: str  # "!" | "-"
    operand: Node
    kind: ClassVar[str] = "unary"

    def children(self):
        return (self.operand,)


@dataclass(slots=True)
class Binary(Node):
    op: str
    left: Node
    right: Node
    kind: ClassVar[str] = "binary"

    def children(self):
        return (self.left, self.right)


@dataclass(slots=True)
class ParamList(Node):
    names: list
    kind: ClassVar[str] = "params"


@dataclass(slots=True)
class Block(Node):
    statements: list
    kind: ClassVar[str] = "block"

    def children(self):
        return self.statements


@dataclass(slots=True)
class Lambda(Node):
    params: ParamList
    body: Block
    kind: ClassVar[str] = "lambda"

    def children(self):
        return (self.params, self.body)


@dataclass(slots=True)
class Probe(Node):
    """A probed expression `@{ e }`; probe_id is "module:line:col" of the `@{`."""

    inner: Node
    probe_id: str
    kind: ClassVar[str] = "probe"

    def children(self):
        return (self.inner,)


@dataclass(slots=True)
class Let(Node):
    name: str
    value: Node
    kind: ClassVar[str] = "let"

    def children(self):
        return (self.value,)


@dataclass(slots=True)
class Assign(Node):
    target: Node  # Identifier | Index | FieldAccess
    value: Node
    kind: ClassVar[str] = "assign"

    def children(self):
        return (self.target, self.value)


@dataclass(slots=True)
class If(Node):
    cond: Node
    then_block: Block
    else_block: Optional[Block]
    kind: ClassVar[str] = "if"

    def children(self):
        if self.else_block is None:
            return (self.cond, self.then_block)
        return (self.cond, self.then_block, self.else_block)


@dataclass(slots=True)
class While(Node):
    cond: Node
    body: Block
    kind: ClassVar[str] = "while"

    def children(self):
        return (self.cond, self.body)


@dataclass(slots=True)
class Return(Node):
    value: Optional[Node]
    kind: ClassVar[str] = "return"

    def children(self):
        return () if self.value is None else (self.value,)


@dataclass(slots=True)
class Throw(Node):
    value: Node
    kind: ClassVar[str] = "throw"

    def children(self):
        return (self.value,)


@dataclass(slots=True)
class TryCatch(Node):
    body: Block
    catch_name: str
    handler: Block
    kind: ClassVar[str] = "try"

    def children(self):
        return (self.body, self.handler)


@dataclass(slots=True)
class FunctionDecl(Node):
    name: str
    params: ParamList
    body: Block
    kind: ClassVar[str] = "fn"

    def children(self):
        return (self.params, self.body)


@dataclass(slots=True)
class ExampleDecl(Node):
    name: str
    setup: Optional[Block]
    body: Block
    teardown: Optional[Block]
    kind: ClassVar[str] = "example"

    def children(self):
        out = []
        if self.setup is not None:
            out.append(self.setup)
        out.append(self.body)
        if self.teardown is not None:
            out.append(self.teardown)
        return out


@dataclass(frozen=True, slots=True)
class ImportInfo:
    path: str  # module path as written in the import string
    qualifier: str  # basename stem, used as `qualifier.fn` prefix
    span: SourceSpan


@dataclass(slots=True)
class ModuleRoot(Block):
    """Top-level node of one parsed module; statements are its declarations."""

    imports: list
    kind: ClassVar[str] = "block"


def walk(node):
    """Pre-order traversal."""
    yield node
    for child in node.children():
        yield from walk(child)


def assign_ids(root, start=0):
    """Number nodes in pre-order starting at `start`; returns the next free id."""
    next_id = start
    for node in walk(root):
        node.node_id = next_id
        next_id += 1
    return next_id
