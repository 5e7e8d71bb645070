"""Canonical, fully parenthesized text for ASTs.

``parse(unparse(x)) == x`` holds for every tree the parsers produce.
"""
from __future__ import annotations

from functools import singledispatch

from . import ast as A


def value_text(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def unparse(node) -> str:
    if isinstance(node, A.Spec):
        return unparse_spec(node)
    return _u(node)


def unparse_spec(spec: A.Spec) -> str:
    lines = []
    for s in spec.sorts:
        lines.append(f"sort {s.name} = {s.target};")
    for a in spec.actions:
        sig = f": {' # '.join(str(s) for s in a.sorts)}" if a.sorts else ""
        lines.append(f"act {a.name}{sig};")
    for f in spec.functions:
        if f.result is not None:
            dom = " # ".join(str(p.param_sort) for p in f.params)
            lines.append(f"map {f.name}: {dom + ' -> ' if dom else ''}{f.result};")
        params = ", ".join(f"{p.name}: {p.param_sort}" for p in f.params)
        lhs = f"{f.name}({params})" if f.params else f.name
        lines.append(f"eqn {lhs} = {_u(f.body)};")
    for p in spec.processes:
        params = ", ".join(f"{q.name}: {q.param_sort}" for q in p.params)
        head = f"{p.name}({params})" if p.params else p.name
        lines.append(f"proc {head} = {_u(p.body)};")
    lines.append(f"init {_u(spec.init)};")
    return "\n".join(lines) + "\n"


def _args(args) -> str:
    return "(" + ", ".join(_u(a) for a in args) + ")" if args else ""


@singledispatch
def _u(node) -> str:
    raise TypeError(f"cannot unparse {type(node).__name__}")


# -- data --
@_u.register
def _(e: A.Const):
    return value_text(e.value)


@_u.register
def _(e: A.Var):
    return e.name


@_u.register
def _(e: A.Unary):
    return f"{e.op}{_u(e.arg)}" if isinstance(e.arg, (A.Const, A.Var, A.Call)) \
        else f"{e.op}({_u(e.arg)})"


@_u.register
def _(e: A.Binary):
    return f"({_u(e.left)} {e.op} {_u(e.right)})"


@_u.register
def _(e: A.Call):
    return f"{e.name}({', '.join(_u(a) for a in e.args)})"


# -- processes --
@_u.register
def _(a: A.Action):
    return a.name + _args(a.args)


@_u.register
def _(p: A.Deadlock):
    return "delta"


@_u.register
def _(p: A.Prefix):
    return f"({'|'.join(_u(a) for a in p.actions)} . {_u(p.cont)})"


@_u.register
def _(p: A.Choice):
    return f"({_u(p.left)} + {_u(p.right)})"


@_u.register
def _(p: A.Sum):
    return f"(sum {p.var}:{p.var_sort}. {_u(p.body)})"


@_u.register
def _(p: A.IfThenElse):
    return f"({_u(p.cond)} -> {_u(p.then)} <> {_u(p.else_)})"


@_u.register
def _(p: A.ProcCall):
    return f"{p.name}({', '.join(_u(a) for a in p.args)})"


@_u.register
def _(p: A.Parallel):
    return f"({_u(p.left)} || {_u(p.right)})"


@_u.register
def _(p: A.Comm):
    rules = ", ".join(f"{r.send}|{r.receive} -> {r.result}" for r in p.rules)
    return f"comm({{{rules}}}, {_u(p.operand)})"


@_u.register
def _(p: A.Allow):
    sets = ", ".join("|".join(s) for s in p.sets)
    return f"allow({{{sets}}}, {_u(p.operand)})"


# -- action and regular formulas --
@_u.register
def _(af: A.AnyAction):
    return "true"


@_u.register
def _(af: A.ActMatch):
    return "(" + "|".join(_u(a) for a in af.actions) + ")"


@_u.register
def _(af: A.ActNot):
    return f"!{_u(af.arg)}"


@_u.register
def _(af: A.ActAnd):
    return f"({_u(af.left)} && {_u(af.right)})"


@_u.register
def _(af: A.ActOr):
    return f"({_u(af.left)} || {_u(af.right)})"


@_u.register
def _(af: A.ActExists):
    return f"(exists {af.var}:{af.var_sort}. {_u(af.body)})"


@_u.register
def _(r: A.RegAct):
    return _u(r.action)


@_u.register
def _(r: A.RegStar):
    return f"{_u(r.action)}*"


# -- state formulas --
@_u.register
def _(f: A.TrueF):
    return "true"


@_u.register
def _(f: A.FalseF):
    return "false"


@_u.register
def _(f: A.Not):
    return f"!{_u(f.arg)}"


@_u.register
def _(f: A.And):
    return f"({_u(f.left)} && {_u(f.right)})"


@_u.register
def _(f: A.Or):
    return f"({_u(f.left)} || {_u(f.right)})"


@_u.register
def _(f: A.Implies):
    return f"({_u(f.left)} => {_u(f.right)})"


@_u.register
def _(f: A.Val):
    return f"val({_u(f.expr)})"


@_u.register
def _(f: A.Forall):
    return f"(forall {f.var}:{f.var_sort}. {_u(f.body)})"


@_u.register
def _(f: A.Exists):
    return f"(exists {f.var}:{f.var_sort}. {_u(f.body)})"


@_u.register
def _(f: A.Box):
    return f"[{_u(f.reg)}]{_u(f.body)}"


@_u.register
def _(f: A.Diamond):
    return f"<{_u(f.reg)}>{_u(f.body)}"


def _fix(kw, f):
    params = ", ".join(f"{p.name}:{p.param_sort} = {_u(p.init)}" for p in f.params)
    head = f"{f.name}({params})" if f.params else f.name
    return f"({kw} {head}. {_u(f.body)})"


@_u.register
def _(f: A.Mu):
    return _fix("mu", f)


@_u.register
def _(f: A.Nu):
    return _fix("nu", f)


@_u.register
def _(f: A.FixVar):
    return f.name + _args(f.args)
