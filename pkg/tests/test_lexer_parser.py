import pytest

from crosscut.errors import ParseError
from crosscut.lexer import tokenize
from crosscut.nodes import (
    Assign,
    Block,
    Call,
    ExampleDecl,
    FieldAccess,
    FunctionDecl,
    If,
    Index,
    Lambda,
    Let,
    Probe,
    RecordLiteral,
    While,
    walk,
)
from crosscut.parser import parse_module


def types(src):
    return [t.type for t in tokenize(src, "m.cc")]


def test_tokenize_kinds():
    toks = tokenize('let x = 12 + 3.5; // note\n"hi" fn', "m.cc")
    assert [t.type for t in toks] == [
        "let", "ident", "=", "int", "+", "float", ";", "string", "fn", "eof",
    ]
    assert toks[3].value == 12
    assert toks[5].value == 3.5
    assert toks[7].value == "hi"


def test_tokenize_positions():
    toks = tokenize("ab\n  cd", "m.cc")
    assert (toks[0].line, toks[0].col) == (1, 1)
    assert (toks[1].line, toks[1].col) == (2, 3)
    assert (toks[1].end_line, toks[1].end_col) == (2, 5)


def test_tokenize_two_char_operators():
    assert types("== != <= >= && ||")[:-1] == ["==", "!=", "<=", ">=", "&&", "||"]


def test_tokenize_string_escapes():
    toks = tokenize(r'"a\nb\t\"\\"', "m.cc")
    assert toks[0].value == 'a\nb\t"\\'


def test_tokenize_example_marker():
    assert types('#example "n" {}')[0] == "#example"


@pytest.mark.parametrize(
    "src,needle",
    [
        ('"unterminated', "unterminated string"),
        ('"bad\\q"', "escape"),
        ("let x = 1 ~ 2;", "~"),
        ("@x", "expected '{' after '@'"),
        ('"two\nlines"', "unterminated string"),
    ],
)
def test_tokenize_errors(src, needle):
    with pytest.raises(ParseError) as exc:
        tokenize(src, "m.cc")
    assert needle in str(exc.value)


def test_comments_skipped_to_end_of_line():
    assert types("1 // 2 + 3 ~~~\n4")[:-1] == ["int", "int"]


# -- declarations ------------------------------------------------------------


def test_parse_function_and_example():
    root = parse_module('fn add(a, b) { return a + b; } #example "e" { add(1, 2); }', "m.cc")
    fn, ex = root.statements
    assert isinstance(fn, FunctionDecl) and fn.name == "add" and fn.params.names == ["a", "b"]
    assert isinstance(ex, ExampleDecl) and ex.name == "e"
    assert ex.setup is None and ex.teardown is None


def test_parse_example_setup_teardown():
    root = parse_module(
        '#example "e" setup { let a = 1; } { a; } teardown { let b = 2; }', "m.cc"
    )
    (ex,) = root.statements
    assert isinstance(ex.setup, Block) and isinstance(ex.teardown, Block)


def test_imports_must_come_first():
    with pytest.raises(ParseError) as exc:
        parse_module('fn f() { return 1; } import "lib.cc";', "m.cc")
    assert "imports must come before" in str(exc.value)


def test_duplicate_import_qualifier():
    with pytest.raises(ParseError) as exc:
        parse_module('import "a/lib.cc"; import "b/lib.cc"; fn f() { return 1; }', "m.cc")
    assert "lib" in str(exc.value)


@pytest.mark.parametrize(
    "src,needle",
    [
        ("fn f() { return 1; } fn f() { return 2; }", "duplicate function"),
        ('#example "e" {} #example "e" {}', 'duplicate example'),
        ("fn f(a, a) { return a; }", "duplicate parameter"),
        ("let x = 1;", "top level"),
        ("fn f() { let x = 1; ", "unterminated block"),
        ("fn f() { 1 + ; }", "expected expression"),
        ("fn f() { if 1 { } }", None),  # parses; type error only at runtime
    ],
)
def test_declaration_errors(src, needle):
    if needle is None:
        parse_module(src, "m.cc")
        return
    with pytest.raises(ParseError) as exc:
        parse_module(src, "m.cc")
    assert needle in str(exc.value)


# -- statements and expressions ------------------------------------------------


def body(src):
    root = parse_module(f"fn f() {{ {src} }}", "m.cc")
    return root.statements[0].body.statements


def test_assignment_targets():
    let, a1, a2, a3 = body("let x = [1]; x = 2; x[0] = 3; x.f = 4;")
    assert isinstance(let, Let)
    assert isinstance(a1, Assign) and a1.target.__class__.__name__ == "Identifier"
    assert isinstance(a2, Assign) and isinstance(a2.target, Index)
    assert isinstance(a3, Assign) and isinstance(a3.target, FieldAccess)


def test_invalid_assignment_target():
    with pytest.raises(ParseError) as exc:
        body("1 + 2 = 3;")
    assert "invalid assignment target" in str(exc.value)


def test_if_else_and_while():
    stmts = body("if a > 0 { b; } else { c; } while d { e; }")
    assert isinstance(stmts[0], If) and stmts[0].else_block is not None
    assert isinstance(stmts[1], While)


def test_brace_after_condition_is_block_not_record():
    (stmt,) = body("if x { 1; }")
    assert isinstance(stmt, If)
    assert not isinstance(stmt.cond, RecordLiteral)


def test_record_literal_in_parens_after_if():
    (stmt,) = body("if ({a: 1}.a > 0) { 1; }")
    assert isinstance(stmt, If)


def test_precedence_shape():
    (ret,) = body("return 1 + 2 * 3 == 7 && true;")
    top = ret.value
    assert top.op == "&&"
    assert top.left.op == "=="
    assert top.left.left.op == "+"
    assert top.left.left.right.op == "*"


def test_unary_and_postfix():
    (ret,) = body("return -a.b[0](c);")
    assert ret.value.op == "-"
    call = ret.value.operand
    assert isinstance(call, Call)
    assert isinstance(call.callee, Index)


def test_probe_id_is_at_token_position():
    root = parse_module("fn f(x) { return @{ x }; }", "m.cc")
    probes = [n for n in walk(root) if isinstance(n, Probe)]
    assert len(probes) == 1
    assert probes[0].probe_id == "m.cc:1:18"


def test_probe_id_multiline():
    root = parse_module("fn f(x) {\n  return @{ x };\n}", "m.cc")
    (probe,) = [n for n in walk(root) if isinstance(n, Probe)]
    assert probe.probe_id == "m.cc:2:10"


def test_lambda_expression():
    (let,) = body("let f = fn(a) { return a; };")
    assert isinstance(let.value, Lambda) and let.value.params.names == ["a"]


def test_duplicate_record_key():
    with pytest.raises(ParseError) as exc:
        body("let r = {a: 1, a: 2};")
    assert "duplicate record key" in str(exc.value)


def test_node_ids_dense_and_preorder():
    root = parse_module('fn f(x) { return @{ x + 1 }; } #example "e" { f(2); }', "m.cc")
    ids = [n.node_id for n in walk(root)]
    assert ids[0] == 0
    assert sorted(ids) == list(range(len(ids)))
    assert ids == sorted(ids)  # pre-order assignment


def test_parse_error_carries_location():
    with pytest.raises(ParseError) as exc:
        parse_module("fn f() {\n  let = 1;\n}", "m.cc")
    err = exc.value
    assert err.span is not None
    assert err.span.start_line == 2
    assert "m.cc:2" in str(err)
