"""Tree-walking evaluator for .cc programs.

Values are plain Python objects: nil=None, bool, int (64-bit checked),
float, str, list, record=dict, Closure, Builtin. Lists and records are
mutable with referential identity; `==` compares primitives by value
and compound values by identity.

The evaluator takes an optional `hooks` object with three methods
(call_enter, call_exit, probe_hit); passing hooks=None runs the exact
same code path minus the notifications, which is what keeps traced and
untraced results identical.
"""

from __future__ import annotations

import math

from .errors import EvalError
from .nodes import (
    Assign,
    Binary,
    Block,
    Call,
    FieldAccess,
    FunctionDecl,
    Identifier,
    If,
    Index,
    Lambda,
    Let,
    ListLiteral,
    Literal,
    MethodId,
    Probe,
    RecordLiteral,
    Return,
    Throw,
    TryCatch,
    Unary,
    While,
    lambda_name,
)

INT_MIN = -(1 << 63)
INT_MAX = (1 << 63) - 1

DEFAULT_STEP_LIMIT = 10_000_000
# cap on .cc call nesting; the evaluator recurses on the host stack, so
# unbounded script recursion would otherwise die as a host RecursionError
DEFAULT_DEPTH_LIMIT = 100


class ScriptThrow(Exception):
    """A `throw` in flight; caught by try/catch or surfaces as uncaught-throw."""

    __slots__ = ("value", "span")

    def __init__(self, value, span):
        self.value = value
        self.span = span


class ReturnSignal(Exception):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value


class Env:
    __slots__ = ("vars", "parent")

    def __init__(self, vars=None, parent=None):
        self.vars = vars if vars is not None else {}
        self.parent = parent

    def lookup(self, name):
        env = self
        while env is not None:
            v = env.vars
            if name in v:
                return v[name]
            env = env.parent
        raise KeyError(name)

    def contains(self, name):
        env = self
        while env is not None:
            if name in env.vars:
                return True
            env = env.parent
        return False

    def set_existing(self, name, value):
        env = self
        while env is not None:
            if name in env.vars:
                env.vars[name] = value
                return True
            env = env.parent
        return False


class Closure:
    __slots__ = ("params", "body", "env", "module_path", "method_id")

    def __init__(self, params, body, env, module_path, method_id):
        self.params = params  # list of names
        self.body = body  # Block
        self.env = env  # Env | None (None for top-level fns)
        self.module_path = module_path
        self.method_id = method_id


class Builtin:
    __slots__ = ("name", "arity", "fn")

    def __init__(self, name, arity, fn):
        self.name = name
        self.arity = arity
        self.fn = fn


def type_name(v):
    t = type(v)
    if v is None:
        return "nil"
    if t is bool:
        return "bool"
    if t is int:
        return "int"
    if t is float:
        return "float"
    if t is str:
        return "string"
    if t is list:
        return "list"
    if t is dict:
        return "record"
    if t is Closure or t is Builtin:
        return "function"
    return t.__name__


def values_equal(a, b):
    ta, tb = type(a), type(b)
    if ta is bool or tb is bool:
        return ta is tb and a == b
    if (ta is int or ta is float) and (tb is int or tb is float):
        return a == b
    if ta is not tb:
        return False
    if ta is str:
        return a == b
    return a is b  # nil, lists, records, functions


def render_value(v, quote_strings=False):
    """Human-oriented rendering used by print and CLI output."""
    t = type(v)
    if v is None:
        return "nil"
    if t is bool:
        return "true" if v else "false"
    if t is int:
        return str(v)
    if t is float:
        if v != v:
            return "nan"
        if v == math.inf:
            return "inf"
        if v == -math.inf:
            return "-inf"
        return repr(v)
    if t is str:
        if quote_strings:
            return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
        return v
    if t is list:
        return "[" + ", ".join(render_value(x, True) for x in v) + "]"
    if t is dict:
        return "{" + ", ".join(f"{k}: {render_value(x, True)}" for k, x in v.items()) + "}"
    if t is Closure:
        return f"<fn {v.method_id.qualified()}>"
    if t is Builtin:
        return f"<builtin {v.name}>"
    return repr(v)


class Interpreter:
    def __init__(self, program, hooks=None, step_limit=DEFAULT_STEP_LIMIT, depth_limit=DEFAULT_DEPTH_LIMIT):
        self.program = program
        self.hooks = hooks
        self.step_limit = step_limit
        self.depth_limit = depth_limit
        self.depth = 0
        self.steps = 0
        self.print_log = []
        # Closures for top-level functions, prebuilt per module so
        # identifier lookup stays a couple of dict probes.
        self.module_fns = {}
        for mid, decl in program.functions.items():
            self.module_fns.setdefault(mid.module_path, {})[mid.function_name] = Closure(
                decl.params.names, decl.body, None, mid.module_path, mid
            )
        self.builtins = {
            "len": Builtin("len", 1, self._builtin_len),
            "push": Builtin("push", 2, self._builtin_push),
            "print": Builtin("print", 1, self._builtin_print),
        }
        self._dispatch = {
            Literal: Interpreter._eval_literal,
            Identifier: Interpreter._eval_identifier,
            Binary: Interpreter._eval_binary,
            Unary: Interpreter._eval_unary,
            Call: Interpreter._eval_call,
            Index: Interpreter._eval_index,
            FieldAccess: Interpreter._eval_field,
            ListLiteral: Interpreter._eval_list,
            RecordLiteral: Interpreter._eval_record,
            Probe: Interpreter._eval_probe,
            Lambda: Interpreter._eval_lambda,
            Let: Interpreter._exec_let,
            Assign: Interpreter._exec_assign,
            If: Interpreter._exec_if,
            While: Interpreter._exec_while,
            Return: Interpreter._exec_return,
            Throw: Interpreter._exec_throw,
            TryCatch: Interpreter._exec_try,
        }

    # -- entry points ---------------------------------------------------

    def run_block(self, block, env=None):
        """Run a top-level block (an example body); returns its value.

        `return` inside the block ends it like a function body would.
        An uncaught `throw` becomes EvalError("uncaught-throw").
        """
        if env is None:
            env = Env()
        try:
            return self.exec_block(block, env)
        except ReturnSignal as r:
            return r.value
        except ScriptThrow as t:
            raise EvalError(
                "uncaught-throw",
                f"uncaught throw: {render_value(t.value, True)}",
                t.span,
                value=t.value,
            ) from None

    # -- core loop ------------------------------------------------------

    def eval(self, node, env):
        self.steps += 1
        if self.steps > self.step_limit:
            raise EvalError("step-limit", f"step limit of {self.step_limit} exceeded", node.span)
        return self._dispatch[type(node)](self, node, env)

    def exec_block(self, block, env):
        """Runs statements; the block's value is the value of its last
        statement when that statement is an expression, nil otherwise."""
        result = None
        stmts = block.statements
        last = len(stmts) - 1
        for i, st in enumerate(stmts):
            v = self.eval(st, env)
            if i == last and type(st) not in _STMT_TYPES:
                result = v
        return result

    # -- expressions ----------------------------------------------------

    def _eval_literal(self, node, env):
        return node.value

    def _eval_identifier(self, node, env):
        name = node.name
        e = env
        while e is not None:
            v = e.vars
            if name in v:
                return v[name]
            e = e.parent
        fns = self.module_fns.get(node.span.module_path)
        if fns is not None and name in fns:
            return fns[name]
        b = self.builtins.get(name)
        if b is not None:
            return b
        raise EvalError("undefined-name", f"undefined name '{name}'", node.span)

    def _eval_lambda(self, node, env):
        module = node.span.module_path
        return Closure(
            node.params.names,
            node.body,
            env,
            module,
            MethodId(module, lambda_name(node.span)),
        )

    def _eval_probe(self, node, env):
        value = self.eval(node.inner, env)
        if self.hooks is not None:
            self.hooks.probe_hit(node.probe_id, value)
        return value

    def _eval_list(self, node, env):
        return [self.eval(item, env) for item in node.items]

    def _eval_record(self, node, env):
        return {k: self.eval(v, env) for k, v in node.entries}

    def _eval_index(self, node, env):
        base = self.eval(node.base, env)
        index = self.eval(node.index, env)
        return self._index_get(base, index, node)

    def _index_get(self, base, index, node):
        tb = type(base)
        if tb is list:
            if type(index) is not int:
                raise EvalError(
                    "type-mismatch", f"list index must be int, got {type_name(index)}", node.span
                )
            if 0 <= index < len(base):
                return base[index]
            raise EvalError(
                "undefined-name", f"list index {index} out of range (len {len(base)})", node.span
            )
        if tb is dict:
            if type(index) is not str:
                raise EvalError(
                    "type-mismatch", f"record index must be string, got {type_name(index)}", node.span
                )
            if index in base:
                return base[index]
            raise EvalError("undefined-name", f"record has no field '{index}'", node.span)
        if tb is str:
            if type(index) is not int:
                raise EvalError(
                    "type-mismatch", f"string index must be int, got {type_name(index)}", node.span
                )
            if 0 <= index < len(base):
                return base[index]
            raise EvalError(
                "undefined-name", f"string index {index} out of range (len {len(base)})", node.span
            )
        raise EvalError("type-mismatch", f"cannot index {type_name(base)}", node.span)

    def _eval_field(self, node, env):
        base = node.base
        # `qual.fn` reaches into an imported module when `qual` is not a
        # local variable; otherwise it is a record field access.
        if type(base) is Identifier and not env.contains(base.name):
            module = node.span.module_path
            target = self.program.imports.get(module, {}).get(base.name)
            if target is not None:
                fns = self.module_fns.get(target)
                if fns is not None and node.field_name in fns:
                    return fns[node.field_name]
                raise EvalError(
                    "undefined-name",
                    f"module '{base.name}' has no function '{node.field_name}'",
                    node.span,
                )
        value = self.eval(base, env)
        if type(value) is dict:
            if node.field_name in value:
                return value[node.field_name]
            raise EvalError(
                "undefined-name", f"record has no field '{node.field_name}'", node.span
            )
        raise EvalError(
            "type-mismatch", f"cannot access field of {type_name(value)}", node.span
        )

    def _eval_unary(self, node, env):
        v = self.eval(node.operand, env)
        if node.op == "!":
            if type(v) is bool:
                return not v
            raise EvalError("type-mismatch", f"'!' needs bool, got {type_name(v)}", node.span)
        # "-"
        t = type(v)
        if t is int:
            r = -v
            if r < INT_MIN or r > INT_MAX:
                raise EvalError("integer-overflow", "integer overflow in negation", node.span)
            return r
        if t is float:
            return -v
        raise EvalError("type-mismatch", f"'-' needs a number, got {type_name(v)}", node.span)

    def _eval_binary(self, node, env):
        op = node.op
        if op == "&&":
            left = self.eval(node.left, env)
            if type(left) is not bool:
                raise EvalError(
                    "type-mismatch", f"'&&' needs bool, got {type_name(left)}", node.left.span
                )
            if not left:
                return False
            right = self.eval(node.right, env)
            if type(right) is not bool:
                raise EvalError(
                    "type-mismatch", f"'&&' needs bool, got {type_name(right)}", node.right.span
                )
            return right
        if op == "||":
            left = self.eval(node.left, env)
            if type(left) is not bool:
                raise EvalError(
                    "type-mismatch", f"'||' needs bool, got {type_name(left)}", node.left.span
                )
            if left:
                return True
            right = self.eval(node.right, env)
            if type(right) is not bool:
                raise EvalError(
                    "type-mismatch", f"'||' needs bool, got {type_name(right)}", node.right.span
                )
            return right

        left = self.eval(node.left, env)
        right = self.eval(node.right, env)

        if op == "==":
            return values_equal(left, right)
        if op == "!=":
            return not values_equal(left, right)

        tl, tr = type(left), type(right)
        l_num = tl is int or tl is float
        r_num = tr is int or tr is float

        if op == "+" and tl is str and tr is str:
            return left + right

        if op in ("<", "<=", ">", ">="):
            if (l_num and r_num) or (tl is str and tr is str):
                if op == "<":
                    return left < right
                if op == "<=":
                    return left <= right
                if op == ">":
                    return left > right
                return left >= right
            raise EvalError(
                "type-mismatch",
                f"'{op}' needs two numbers or two strings, got {type_name(left)} and {type_name(right)}",
                node.span,
            )

        if not (l_num and r_num):
            raise EvalError(
                "type-mismatch",
                f"'{op}' needs numbers, got {type_name(left)} and {type_name(right)}",
                node.span,
            )

        if tl is int and tr is int:
            if op == "+":
                r = left + right
            elif op == "-":
                r = left - right
            elif op == "*":
                r = left * right
            elif op == "/":
                if right == 0:
                    raise EvalError("division-by-zero", "division by zero", node.span)
                q = abs(left) // abs(right)
                r = -q if (left < 0) != (right < 0) else q
            else:  # "%"
                if right == 0:
                    raise EvalError("division-by-zero", "modulo by zero", node.span)
                m = abs(left) % abs(right)
                r = -m if left < 0 else m
            if r < INT_MIN or r > INT_MAX:
                raise EvalError("integer-overflow", f"integer overflow in '{op}'", node.span)
            return r

        # at least one float: float arithmetic, ints promoted
        lf, rf = float(left), float(right)
        if op == "+":
            return lf + rf
        if op == "-":
            return lf - rf
        if op == "*":
            return lf * rf
        if op == "/":
            if rf == 0.0:
                raise EvalError("division-by-zero", "division by zero", node.span)
            return lf / rf
        # "%"
        if rf == 0.0:
            raise EvalError("division-by-zero", "modulo by zero", node.span)
        return math.fmod(lf, rf)

    def _eval_call(self, node, env):
        fn = self.eval(node.callee, env)
        args = [self.eval(a, env) for a in node.args]
        return self.call_value(fn, args, node)

    def call_value(self, fn, args, site):
        """Invoke a closure or builtin; `site` is the Call node or None."""
        t = type(fn)
        span = site.span if site is not None else None
        if t is Closure:
            if len(args) != len(fn.params):
                raise EvalError(
                    "arity",
                    f"{fn.method_id.qualified()} takes {len(fn.params)} argument(s), got {len(args)}",
                    span,
                )
            if self.depth >= self.depth_limit:
                raise EvalError(
                    "step-limit", f"call depth limit of {self.depth_limit} exceeded", span
                )
            hooks = self.hooks
            if hooks is not None:
                token = hooks.call_enter(
                    fn.method_id, site.node_id if site is not None else None, args
                )
            else:
                token = None
            env2 = Env(dict(zip(fn.params, args)), fn.env)
            self.depth += 1
            try:
                try:
                    result = self.exec_block(fn.body, env2)
                except ReturnSignal as r:
                    result = r.value
            except ScriptThrow as exc:
                if token is not None:
                    hooks.call_exit(token, "exception", thrown=exc.value)
                raise
            except EvalError as exc:
                if token is not None:
                    hooks.call_exit(token, "exception", error=exc)
                raise
            finally:
                self.depth -= 1
            if token is not None:
                hooks.call_exit(token, "normal", result=result)
            return result
        if t is Builtin:
            if len(args) != fn.arity:
                raise EvalError(
                    "arity", f"{fn.name} takes {fn.arity} argument(s), got {len(args)}", span
                )
            return fn.fn(args, span)
        raise EvalError("type-mismatch", f"{type_name(fn)} is not callable", span)

    # -- statements -----------------------------------------------------

    def _exec_let(self, node, env):
        env.vars[node.name] = self.eval(node.value, env)
        return None

    def _exec_assign(self, node, env):
        target = node.target
        t = type(target)
        if t is Identifier:
            value = self.eval(node.value, env)
            if not env.set_existing(target.name, value):
                raise EvalError(
                    "undefined-name",
                    f"assignment to undefined name '{target.name}'",
                    target.span,
                )
            return None
        if t is Index:
            base = self.eval(target.base, env)
            index = self.eval(target.index, env)
            value = self.eval(node.value, env)
            tb = type(base)
            if tb is list:
                if type(index) is not int:
                    raise EvalError(
                        "type-mismatch",
                        f"list index must be int, got {type_name(index)}",
                        target.span,
                    )
                if not (0 <= index < len(base)):
                    raise EvalError(
                        "undefined-name",
                        f"list index {index} out of range (len {len(base)})",
                        target.span,
                    )
                base[index] = value
                return None
            if tb is dict:
                if type(index) is not str:
                    raise EvalError(
                        "type-mismatch",
                        f"record index must be string, got {type_name(index)}",
                        target.span,
                    )
                base[index] = value  # records grow on indexed assignment
                return None
            raise EvalError(
                "type-mismatch", f"cannot index-assign {type_name(base)}", target.span
            )
        # FieldAccess
        base = self.eval(target.base, env)
        value = self.eval(node.value, env)
        if type(base) is dict:
            base[target.field_name] = value
            return None
        raise EvalError(
            "type-mismatch", f"cannot assign field of {type_name(base)}", target.span
        )

    def _exec_if(self, node, env):
        cond = self.eval(node.cond, env)
        if type(cond) is not bool:
            raise EvalError(
                "type-mismatch", f"if condition must be bool, got {type_name(cond)}", node.cond.span
            )
        if cond:
            self.exec_block(node.then_block, Env(None, env))
        elif node.else_block is not None:
            self.exec_block(node.else_block, Env(None, env))
        return None

    def _exec_while(self, node, env):
        while True:
            cond = self.eval(node.cond, env)
            if type(cond) is not bool:
                raise EvalError(
                    "type-mismatch",
                    f"while condition must be bool, got {type_name(cond)}",
                    node.cond.span,
                )
            if not cond:
                return None
            self.exec_block(node.body, Env(None, env))

    def _exec_return(self, node, env):
        value = None if node.value is None else self.eval(node.value, env)
        raise ReturnSignal(value)

    def _exec_throw(self, node, env):
        raise ScriptThrow(self.eval(node.value, env), node.span)

    def _exec_try(self, node, env):
        try:
            self.exec_block(node.body, Env(None, env))
        except ScriptThrow as exc:
            handler_env = Env({node.catch_name: exc.value}, env)
            self.exec_block(node.handler, handler_env)
        return None

    # -- builtins ---------------------------------------------------------

    def _builtin_len(self, args, span):
        v = args[0]
        if type(v) in (str, list, dict):
            return len(v)
        raise EvalError("type-mismatch", f"len() needs string/list/record, got {type_name(v)}", span)

    def _builtin_push(self, args, span):
        lst, value = args
        if type(lst) is not list:
            raise EvalError("type-mismatch", f"push() needs a list, got {type_name(lst)}", span)
        lst.append(value)
        return lst

    def _builtin_print(self, args, span):
        self.print_log.append(render_value(args[0]))
        return None


_STMT_TYPES = frozenset([Let, Assign, If, While, Return, Throw, TryCatch])


def evaluate(program, block, env=None, step_limit=DEFAULT_STEP_LIMIT):
    """Run a block untraced; returns its value or raises EvalError."""
    interp = Interpreter(program, hooks=None, step_limit=step_limit)
    return interp.run_block(block, env)
