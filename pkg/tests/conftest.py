import pytest

from crosscut.analysis import build_call_tree
from crosscut.annotations import extract_annotations
from crosscut.program import load_program
from crosscut.tracer import trace_run

F1_SRC = 'fn g(x){ return @{ x * 2 }; }  fn f(a){ if a > 0 { return g(a); } else { return g(0 - a); } }  #example "ex1" { f(3); f(-2); }'
F2_SRC = 'fn g(x){ return @{ x * 2 }; }  fn f(a){ return g(a); }  fn h(a){ return g(a + 1); }  #example "ex1" { f(3); h(3); g(10); }'
F3_SRC = 'fn fact(n){ if n <= 1 { return 1; } return n * @{ fact(n - 1) }; }  #example "fact3" { fact(3); }'

F1_PROBE = "m.cc:1:17"
F2_PROBE = "m.cc:1:17"
F3_PROBE = "m.cc:1:48"


def make_fixture(src):
    program = load_program({"m.cc": src})
    ann = extract_annotations(program)
    example = next(iter(ann.examples.values()))
    return program, ann, example


@pytest.fixture
def f1():
    return make_fixture(F1_SRC)


@pytest.fixture
def f2():
    return make_fixture(F2_SRC)


@pytest.fixture
def f3():
    return make_fixture(F3_SRC)


@pytest.fixture
def run_one():
    """Trace the first example of a one-module source; returns the CallTree."""

    def _run(src, module="m.cc", **kwargs):
        program = load_program({module: src})
        ann = extract_annotations(program)
        example = next(iter(ann.examples.values()))
        trace = trace_run(program, example, **kwargs)
        return build_call_tree(trace, ann.probes)

    return _run
