import pytest

from crosscut.annotations import extract_annotations, set_active
from crosscut.errors import UnknownExample
from crosscut.nodes import Probe as ProbeNode, walk
from crosscut.program import load_program


def annotate(*sources):
    program = load_program(dict(sources))
    return program, extract_annotations(program)


def test_examples_discovered_in_order():
    src = '#example "b" { 1; } #example "a" { 2; }'
    _, ann = annotate(("m.cc", src))
    assert list(ann.examples) == ["m.cc#b", "m.cc#a"]  # declaration order
    ex = ann.examples["m.cc#b"]
    assert ex.module_path == "m.cc" and ex.name == "b" and ex.active


def test_setup_teardown_flags():
    src = '#example "e" setup { let a = 1; } { a; } teardown { let b = 1; } #example "f" { 1; }'
    _, ann = annotate(("m.cc", src))
    assert ann.examples["m.cc#e"].has_setup and ann.examples["m.cc#e"].has_teardown
    assert not ann.examples["m.cc#f"].has_setup and not ann.examples["m.cc#f"].has_teardown


def test_probe_count_matches_ast_scan():
    src = 'fn f(x) { return @{ x } + @{ x * 2 }; } #example "e" { @{ f(1) }; }'
    program, ann = annotate(("m.cc", src))
    ast_probes = [n for n in walk(program.modules["m.cc"]) if isinstance(n, ProbeNode)]
    assert len(ann.probes) == len(ast_probes) == 3
    assert set(ann.probes) == {n.probe_id for n in ast_probes}


def test_probe_owner_is_enclosing_function():
    src = "fn f(x) { return @{ x }; }\nfn g(y) { return @{ y }; }"
    _, ann = annotate(("m.cc", src))
    owners = {p.enclosing_method.function_name for p in ann.probes.values()}
    assert owners == {"f", "g"}


def test_probe_owner_in_example_body_is_hash_name():
    src = '#example "run" { @{ 1 + 1 }; }'
    _, ann = annotate(("m.cc", src))
    (probe,) = ann.probes.values()
    assert probe.enclosing_method.function_name == "#run"
    assert probe.enclosing_method.module_path == "m.cc"


def test_lambda_does_not_shift_probe_ownership():
    src = "fn outer(x) { let f = fn(y) { return @{ y * 2 }; }; return f(x); }"
    _, ann = annotate(("m.cc", src))
    (probe,) = ann.probes.values()
    assert probe.enclosing_method.function_name == "outer"


def test_lambda_in_example_body_keeps_example_owner():
    src = '#example "e" { let f = fn(y) { return @{ y }; }; f(3); }'
    _, ann = annotate(("m.cc", src))
    (probe,) = ann.probes.values()
    assert probe.enclosing_method.function_name == "#e"


def test_nested_probe_keeps_owner():
    src = "fn f(x) { return @{ @{ x } + 1 }; }"
    _, ann = annotate(("m.cc", src))
    assert len(ann.probes) == 2
    assert all(p.enclosing_method.function_name == "f" for p in ann.probes.values())


def test_probe_excerpt_is_normalized():
    src = "fn f(x) {\n  return @{ x   +\n      1 };\n}"
    _, ann = annotate(("m.cc", src))
    (probe,) = ann.probes.values()
    assert probe.source_excerpt == "x + 1"


def test_probe_ids_are_positions():
    src = "fn f(x) { return @{ x }; }"
    _, ann = annotate(("m.cc", src))
    assert list(ann.probes) == ["m.cc:1:18"]


def test_probes_collected_across_modules():
    a = "fn fa(x) { return @{ x }; }"
    b = 'import "a.cc"; fn fb(y) { return @{ y }; } #example "e" { fb(1); }'
    _, ann = annotate(("a.cc", a), ("b.cc", b))
    assert {p.module_path for p in ann.probes.values()} == {"a.cc", "b.cc"}


def test_set_active_toggles_and_validates():
    _, ann = annotate(("m.cc", '#example "e" { 1; }'))
    ex = set_active(ann, "m.cc#e", False)
    assert ex.active is False
    set_active(ann, "m.cc#e", True)
    assert ann.examples["m.cc#e"].active is True
    with pytest.raises(UnknownExample):
        set_active(ann, "m.cc#missing", False)


def test_fixture_probe_ids(f1, f2, f3):
    for fixture, pid in ((f1, "m.cc:1:17"), (f2, "m.cc:1:17"), (f3, "m.cc:1:48")):
        _, ann, _ = fixture
        assert list(ann.probes) == [pid]
