"""Recursive-descent parser for .cc scripts.

Produces one ModuleRoot per source file with node ids numbered in
pre-order, dense from 0. Grammar sketch:

    program   := import* (fnDecl | exampleDecl)*
    import    := "import" STRING ";"
    fnDecl    := "fn" IDENT "(" params? ")" block
    example   := "#example" STRING ["setup" block] block ["teardown" block]
    block     := "{" statement* "}"
    statement := "let" IDENT "=" expr ";" | lvalue "=" expr ";"
               | "if" expr block ["else" block] | "while" expr block
               | "return" [expr] ";" | "throw" expr ";"
               | "try" block "catch" "(" IDENT ")" block | expr ";"

Expressions use the usual precedence ladder (|| && == != < <= > >= + -
* / % unary ! -) with postfix call/index/field. `@{ expr }` probes and
`fn (params) block` lambdas are primary expressions. A `{` directly
after an if/while keyword always opens the block, never a record
literal; parenthesize the condition to compare records there.
"""

from __future__ import annotations

from .errors import ParseError
from .lexer import tokenize
from .nodes import (
    Assign,
    Binary,
    Block,
    Call,
    ExampleDecl,
    FieldAccess,
    FunctionDecl,
    Identifier,
    If,
    ImportInfo,
    Index,
    Lambda,
    Let,
    ListLiteral,
    Literal,
    ModuleRoot,
    ParamList,
    Probe,
    RecordLiteral,
    Return,
    SourceSpan,
    Throw,
    TryCatch,
    Unary,
    While,
    assign_ids,
)

_STMT_KEYWORDS = frozenset(["let", "if", "while", "return", "throw", "try"])


def _import_qualifier(path):
    base = path.rsplit("/", 1)[-1]
    if base.endswith(".cc"):
        base = base[:-3]
    return base


class Parser:
    def __init__(self, tokens, module_path):
        self.tokens = tokens
        self.pos = 0
        self.module = module_path

    # -- token plumbing -------------------------------------------------

    def peek(self):
        return self.tokens[self.pos]

    def at(self, ttype):
        return self.tokens[self.pos].type == ttype

    def advance(self):
        tok = self.tokens[self.pos]
        if tok.type != "eof":
            self.pos += 1
        return tok

    def expect(self, ttype, what=None):
        tok = self.peek()
        if tok.type != ttype:
            want = what or f"'{ttype}'"
            raise ParseError(f"expected {want}, found {self._describe(tok)}", tok.span(self.module))
        return self.advance()

    def _describe(self, tok):
        if tok.type == "eof":
            return "end of file"
        if tok.type in ("ident", "int", "float"):
            return f"{tok.type} '{tok.value}'"
        if tok.type == "string":
            return "string literal"
        return f"'{tok.type}'"

    def _span_from(self, start_tok):
        prev = self.tokens[self.pos - 1]
        return SourceSpan(self.module, start_tok.line, start_tok.col, prev.end_line, prev.end_col)

    # -- top level ------------------------------------------------------

    def parse_module(self):
        start = self.peek()
        imports = []
        seen_quals = {}
        while self.at("import"):
            tok = self.advance()
            path_tok = self.expect("string", "module path string")
            self.expect(";")
            qual = _import_qualifier(path_tok.value)
            span = SourceSpan(self.module, tok.line, tok.col, path_tok.end_line, path_tok.end_col)
            if qual in seen_quals:
                raise ParseError(f"duplicate import qualifier '{qual}'", span)
            seen_quals[qual] = path_tok.value
            imports.append(ImportInfo(path_tok.value, qual, span))

        decls = []
        fn_names = set()
        example_names = set()
        while not self.at("eof"):
            if self.at("fn"):
                decl = self.parse_fn_decl()
                if decl.name in fn_names:
                    raise ParseError(f"duplicate function '{decl.name}'", decl.span)
                fn_names.add(decl.name)
                decls.append(decl)
            elif self.at("#example"):
                decl = self.parse_example_decl()
                if decl.name in example_names:
                    raise ParseError(f"duplicate example \"{decl.name}\"", decl.span)
                example_names.add(decl.name)
                decls.append(decl)
            elif self.at("import"):
                tok = self.peek()
                raise ParseError("imports must come before declarations", tok.span(self.module))
            else:
                tok = self.peek()
                raise ParseError(
                    f"expected 'fn' or '#example' at top level, found {self._describe(tok)}",
                    tok.span(self.module),
                )

        root = ModuleRoot(self._span_from(start), decls, imports)
        assign_ids(root)
        return root

    def parse_fn_decl(self):
        start = self.expect("fn")
        name = self.expect("ident", "function name")
        params = self.parse_params()
        body = self.parse_block()
        return FunctionDecl(self._span_from(start), name.value, params, body)

    def parse_params(self):
        start = self.expect("(")
        names = []
        if not self.at(")"):
            while True:
                tok = self.expect("ident", "parameter name")
                if tok.value in names:
                    raise ParseError(f"duplicate parameter '{tok.value}'", tok.span(self.module))
                names.append(tok.value)
                if self.at(","):
                    self.advance()
                    continue
                break
        self.expect(")")
        return ParamList(self._span_from(start), names)

    def parse_example_decl(self):
        start = self.expect("#example")
        name = self.expect("string", "example name string")
        setup = None
        teardown = None
        if self.at("ident") and self.peek().value == "setup":
            self.advance()
            setup = self.parse_block()
        body = self.parse_block()
        if self.at("ident") and self.peek().value == "teardown":
            self.advance()
            teardown = self.parse_block()
        return ExampleDecl(self._span_from(start), name.value, setup, body, teardown)

    # -- statements -----------------------------------------------------

    def parse_block(self):
        start = self.expect("{")
        stmts = []
        while not self.at("}"):
            if self.at("eof"):
                raise ParseError("unterminated block", self.peek().span(self.module))
            stmts.append(self.parse_statement())
        self.expect("}")
        return Block(self._span_from(start), stmts)

    def parse_statement(self):
        t = self.peek().type
        if t == "let":
            start = self.advance()
            name = self.expect("ident", "variable name")
            self.expect("=")
            value = self.parse_expr()
            self.expect(";")
            return Let(self._span_from(start), name.value, value)
        if t == "if":
            start = self.advance()
            cond = self.parse_expr(no_record=True)
            then_block = self.parse_block()
            else_block = None
            if self.at("else"):
                self.advance()
                else_block = self.parse_block()
            return If(self._span_from(start), cond, then_block, else_block)
        if t == "while":
            start = self.advance()
            cond = self.parse_expr(no_record=True)
            body = self.parse_block()
            return While(self._span_from(start), cond, body)
        if t == "return":
            start = self.advance()
            value = None
            if not self.at(";"):
                value = self.parse_expr()
            self.expect(";")
            return Return(self._span_from(start), value)
        if t == "throw":
            start = self.advance()
            value = self.parse_expr()
            self.expect(";")
            return Throw(self._span_from(start), value)
        if t == "try":
            start = self.advance()
            body = self.parse_block()
            self.expect("catch")
            self.expect("(")
            name = self.expect("ident", "catch variable name")
            self.expect(")")
            handler = self.parse_block()
            return TryCatch(self._span_from(start), body, name.value, handler)

        start = self.peek()
        expr = self.parse_expr()
        if self.at("="):
            eq = self.peek()
            if not isinstance(expr, (Identifier, Index, FieldAccess)):
                raise ParseError("invalid assignment target", eq.span(self.module))
            self.advance()
            value = self.parse_expr()
            self.expect(";")
            return Assign(self._span_from(start), expr, value)
        self.expect(";")
        return expr

    # -- expressions ----------------------------------------------------

    def parse_expr(self, no_record=False):
        return self._parse_or(no_record)

    def _parse_or(self, nr):
        start = self.peek()
        left = self._parse_and(nr)
        while self.at("||"):
            self.advance()
            right = self._parse_and(nr)
            left = Binary(self._span_from(start), "||", left, right)
        return left

    def _parse_and(self, nr):
        start = self.peek()
        left = self._parse_equality(nr)
        while self.at("&&"):
            self.advance()
            right = self._parse_equality(nr)
            left = Binary(self._span_from(start), "&&", left, right)
        return left

    def _parse_equality(self, nr):
        start = self.peek()
        left = self._parse_comparison(nr)
        while self.peek().type in ("==", "!="):
            op = self.advance().type
            right = self._parse_comparison(nr)
            left = Binary(self._span_from(start), op, left, right)
        return left

    def _parse_comparison(self, nr):
        start = self.peek()
        left = self._parse_additive(nr)
        while self.peek().type in ("<", "<=", ">", ">="):
            op = self.advance().type
            right = self._parse_additive(nr)
            left = Binary(self._span_from(start), op, left, right)
        return left

    def _parse_additive(self, nr):
        start = self.peek()
        left = self._parse_multiplicative(nr)
        while self.peek().type in ("+", "-"):
            op = self.advance().type
            right = self._parse_multiplicative(nr)
            left = Binary(self._span_from(start), op, left, right)
        return left

    def _parse_multiplicative(self, nr):
        start = self.peek()
        left = self._parse_unary(nr)
        while self.peek().type in ("*", "/", "%"):
            op = self.advance().type
            right = self._parse_unary(nr)
            left = Binary(self._span_from(start), op, left, right)
        return left

    def _parse_unary(self, nr):
        t = self.peek().type
        if t in ("!", "-"):
            start = self.advance()
            operand = self._parse_unary(nr)
            return Unary(self._span_from(start), t, operand)
        return self._parse_postfix(nr)

    def _parse_postfix(self, nr):
        start = self.peek()
        expr = self._parse_primary(nr)
        while True:
            t = self.peek().type
            if t == "(":
                self.advance()
                args = []
                if not self.at(")"):
                    while True:
                        args.append(self.parse_expr())
                        if self.at(","):
                            self.advance()
                            continue
                        break
                self.expect(")")
                expr = Call(self._span_from(start), expr, args)
            elif t == "[":
                self.advance()
                index = self.parse_expr()
                self.expect("]")
                expr = Index(self._span_from(start), expr, index)
            elif t == ".":
                self.advance()
                name = self.expect("ident", "field name")
                expr = FieldAccess(self._span_from(start), expr, name.value)
            else:
                return expr

    def _parse_primary(self, nr):
        tok = self.peek()
        t = tok.type
        if t == "int" or t == "float" or t == "string":
            self.advance()
            return Literal(tok.span(self.module), tok.value)
        if t == "true":
            self.advance()
            return Literal(tok.span(self.module), True)
        if t == "false":
            self.advance()
            return Literal(tok.span(self.module), False)
        if t == "nil":
            self.advance()
            return Literal(tok.span(self.module), None)
        if t == "ident":
            self.advance()
            return Identifier(tok.span(self.module), tok.value)
        if t == "(":
            self.advance()
            expr = self.parse_expr()
            self.expect(")")
            return expr
        if t == "[":
            start = self.advance()
            items = []
            if not self.at("]"):
                while True:
                    items.append(self.parse_expr())
                    if self.at(","):
                        self.advance()
                        continue
                    break
            self.expect("]")
            return ListLiteral(self._span_from(start), items)
        if t == "{" and not nr:
            start = self.advance()
            entries = []
            keys = set()
            if not self.at("}"):
                while True:
                    key = self.expect("ident", "record key")
                    if key.value in keys:
                        raise ParseError(f"duplicate record key '{key.value}'", key.span(self.module))
                    keys.add(key.value)
                    self.expect(":")
                    entries.append((key.value, self.parse_expr()))
                    if self.at(","):
                        self.advance()
                        continue
                    break
            self.expect("}")
            return RecordLiteral(self._span_from(start), entries)
        if t == "@{":
            start = self.advance()
            inner = self.parse_expr()
            self.expect("}")
            probe_id = f"{self.module}:{start.line}:{start.col}"
            return Probe(self._span_from(start), inner, probe_id)
        if t == "fn":
            start = self.advance()
            params = self.parse_params()
            body = self.parse_block()
            return Lambda(self._span_from(start), params, body)
        raise ParseError(f"expected expression, found {self._describe(tok)}", tok.span(self.module))


def parse_module(text, module_path):
    """Parse one source file. Raises ParseError."""
    tokens = tokenize(text, module_path)
    return Parser(tokens, module_path).parse_module()
