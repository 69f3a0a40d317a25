"""Seeded random .cc program generator.

Every generated program terminates by construction:
  - the call graph is layered; functions only call into deeper layers
  - self-recursive functions count an explicit parameter down to zero
  - while loops run a literal number of iterations
  - divisors are nonzero literals

Operand magnitudes stay small so arithmetic rarely overflows. A slice
of seeds deliberately plants a failing statement (division by zero or
an int+string clash) so the corpus also covers failed runs.
"""

from __future__ import annotations

import random

MAX_LAYERS = 4
MAX_PROBES = 5

_DIVISORS = (2, 3, 5, 7)
_THROW_VALUES = ('"boom"', "42", "[1, 2]", "{code: 7}", "nil")


class _Fn:
    def __init__(self, name, params, layer, recursive):
        self.name = name
        self.params = params
        self.layer = layer
        self.recursive = recursive
        self.body_lines = []


class _Gen:
    def __init__(self, seed, inject_throw=False):
        self.rng = random.Random(seed)
        self.inject_throw = inject_throw
        self.probe_budget = MAX_PROBES

    # -- expressions --------------------------------------------------------

    def _var_or_lit(self, vars_):
        if vars_ and self.rng.random() < 0.6:
            return self.rng.choice(vars_)
        return str(self.rng.randint(0, 9))

    def int_expr(self, vars_, depth, calls=None):
        """An int-typed expression over int variables `vars_`; `calls`
        is a list of ready-made call strings that may be spliced in."""
        r = self.rng
        if depth <= 0:
            return self._var_or_lit(vars_)
        roll = r.random()
        if calls and roll < 0.3:
            return calls.pop(0)
        a = self.int_expr(vars_, depth - 1, calls)
        b = self.int_expr(vars_, depth - 1)
        op = r.choice(["+", "-", "*", "/", "%"])
        if op in ("/", "%"):
            return f"({a} {op} {r.choice(_DIVISORS)})"
        if op == "*":
            # keep one side tiny so products stay small
            return f"({a} * {r.randint(0, 3)})"
        return f"({a} {op} {b})"

    def maybe_probe(self, expr):
        if self.probe_budget > 0 and self.rng.random() < 0.4:
            self.probe_budget -= 1
            return f"@{{ {expr} }}"
        return expr

    def bool_expr(self, vars_):
        r = self.rng
        a = self.int_expr(vars_, 1)
        b = self.int_expr(vars_, 1)
        cmp_ = f"{a} {r.choice(['<', '>', '<=', '>=', '==', '!='])} {b}"
        roll = r.random()
        if roll < 0.15:
            c = self.int_expr(vars_, 1)
            return f"({cmp_}) {r.choice(['&&', '||'])} ({c} > 0)"
        if roll < 0.25:
            return f"!({cmp_})"
        return cmp_

    # -- feature templates (type-correct by construction) --------------------

    def feature_lines(self, vars_, fresh):
        r = self.rng
        kind = r.choice(["string", "list", "record", "lambda", "float"])
        v = fresh()
        if kind == "string":
            s = fresh()
            return [
                f'let {s} = "{r.choice("abc")}" + "{r.choice("xyz")}{r.choice("pq")}";',
                f"let {v} = len({s}) + {self._var_or_lit(vars_)};",
            ], v
        if kind == "list":
            xs = fresh()
            items = ", ".join(self.int_expr(vars_, 1) for _ in range(3))
            lines = [f"let {xs} = [{items}];"]
            if r.random() < 0.5:
                lines.append(f"push({xs}, {self.int_expr(vars_, 1)});")
            lines.append(f"let {v} = {xs}[{r.randint(0, 2)}] + len({xs});")
            return lines, v
        if kind == "record":
            rec = fresh()
            lines = [
                f"let {rec} = {{u: {self.int_expr(vars_, 1)}, w: {self._var_or_lit(vars_)}}};"
            ]
            if r.random() < 0.5:
                lines.append(f"{rec}.u = {rec}.u + 1;")
            lines.append(f"let {v} = {rec}.u * 2 + {rec}.w;")
            return lines, v
        if kind == "lambda":
            f = fresh()
            return [
                f"let {f} = fn(q) {{ return q + {r.randint(1, 4)}; }};",
                f"let {v} = {f}({self._var_or_lit(vars_)});",
            ], v
        fl = fresh()
        return [
            f"let {fl} = {self._var_or_lit(vars_)} * {r.choice(['0.5', '1.5', '2.0'])};",
            f"let {v} = 0; if {fl} > 2.0 {{ {v} = 1; }}",
        ], v

    # -- functions -----------------------------------------------------------

    def build_function(self, fn, deeper):
        """deeper: list of (_Fn) callable from this body."""
        r = self.rng
        vars_ = list(fn.params)
        counter = iter(range(100))

        def fresh():
            return f"v{next(counter)}"

        lines = []

        if fn.recursive:
            n = fn.params[0]
            base = self.maybe_probe(self.int_expr(vars_, 1))
            step = self.int_expr(vars_, 1)
            lines.append(f"if {n} <= 0 {{ return {base}; }}")
            rest = ", ".join(self._var_or_lit(vars_) for _ in fn.params[1:])
            rest = f", {rest}" if rest else ""
            lines.append(f"return {fn.name}({n} - 1{rest}) + {step};")
            fn.body_lines = lines
            return

        # up to two call sites into deeper layers
        call_strs = []
        if deeper:
            for target in r.sample(deeper, k=min(len(deeper), r.randint(1, 2))):
                args = []
                for p in target.params:
                    if target.recursive and not args:
                        args.append(str(r.randint(1, 3)))  # recursion depth
                    else:
                        args.append(self.int_expr(vars_, 1))
                call_strs.append(f"{target.name}({', '.join(args)})")

        acc = fresh()
        lines.append(f"let {acc} = {self.maybe_probe(self.int_expr(vars_, 1, call_strs))};")
        vars_.append(acc)

        if r.random() < 0.45:
            extra, v = self.feature_lines(vars_, fresh)
            lines.extend(extra)
            vars_.append(v)

        if r.random() < 0.5:
            t = fresh()
            lines.append(f"let {t} = {self.int_expr(vars_, 1, call_strs)};")
            lines.append(
                f"if {self.bool_expr(vars_)} {{ {t} = {t} + {self.int_expr(vars_, 1)}; }}"
                f" else {{ {t} = {t} - 1; }}"
            )
            vars_.append(t)

        if r.random() < 0.4:
            i, total = fresh(), fresh()
            bound = r.randint(1, 3)
            leaf_calls = [f for f in deeper if f.layer == MAX_LAYERS - 1 and not f.recursive]
            if leaf_calls and r.random() < 0.5:
                target = r.choice(leaf_calls)
                args = ", ".join(self.int_expr([i], 1) for _ in target.params)
                body_term = f"{target.name}({args})"
            else:
                body_term = self.int_expr(vars_ + [i], 1)
            lines.append(f"let {i} = 0;")
            lines.append(f"let {total} = 0;")
            lines.append(
                f"while {i} < {bound} {{ {total} = {total} + {body_term}; {i} = {i} + 1; }}"
            )
            vars_.append(total)

        while call_strs:
            u = fresh()
            lines.append(f"let {u} = {call_strs.pop(0)};")
            vars_.append(u)

        ret = self.maybe_probe(self.int_expr(vars_, 2))
        lines.append(f"return {ret};")
        fn.body_lines = lines

    # -- hazards --------------------------------------------------------------

    def plant_hazard(self, fns):
        r = self.rng
        fn = r.choice(fns)
        at = r.randint(0, max(0, len(fn.body_lines) - 1))
        if self.inject_throw:
            stmt = f"throw {r.choice(_THROW_VALUES)};"
        elif r.random() < 0.5:
            stmt = "let hz = 1 / (2 - 2);"
        else:
            stmt = 'let hz = 1 + "s";'
        fn.body_lines.insert(at, stmt)

    # -- whole program ----------------------------------------------------------

    def build(self):
        r = self.rng
        layers = r.randint(2, MAX_LAYERS)
        fns = []
        for layer in range(layers):
            for i in range(1 if layer == 0 else r.randint(1, 2)):
                n_params = r.randint(1, 3)
                recursive = layer > 0 and r.random() < 0.25
                params = [f"p{j}" for j in range(n_params)]
                fns.append(_Fn(f"f{layer}_{i}", params, layer, recursive))

        for fn in fns:
            deeper = [g for g in fns if g.layer > fn.layer]
            self.build_function(fn, deeper)

        if self.inject_throw:
            # entry is always reached; deeper functions only sometimes
            self.plant_hazard([fns[0]] if r.random() < 0.3 else fns)
        elif r.random() < 0.15:
            self.plant_hazard(fns)

        out = []
        for fn in fns:
            out.append(f"fn {fn.name}({', '.join(fn.params)}) {{")
            out.extend(f"  {line}" for line in fn.body_lines)
            out.append("}")
            out.append("")

        entry = fns[0]
        setup = r.random() < 0.3
        teardown = r.random() < 0.15
        body_args = []
        for p in entry.params:
            if entry.recursive and not body_args:
                body_args.append(str(r.randint(1, 3)))
            elif setup and r.random() < 0.5:
                body_args.append("base")
            else:
                body_args.append(str(r.randint(0, 6)))

        out.append('#example "main"')
        if setup:
            out.append(f"setup {{ let base = {r.randint(1, 5)}; }}")
        out.append("{")
        call = f"{entry.name}({', '.join(body_args)})"
        if self.probe_budget > 0 and r.random() < 0.3:
            self.probe_budget -= 1
            out.append(f"  let r = {call};")
            out.append("  @{ r + 1 };")
        else:
            out.append(f"  {call};")
        out.append("}")
        if teardown:
            out.append("teardown { let done = 1; }")
        out.append("")
        return "\n".join(out)


def generate_source(seed):
    return _Gen(seed).build()


def throwing_source(seed):
    return _Gen(seed, inject_throw=True).build()
