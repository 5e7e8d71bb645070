"""Sort checking for whole models and for formulas against a model."""
from __future__ import annotations

from . import ast as A
from .data import check_assign, typecheck_functions
from .errors import TypeCheckError

Sort = A.Sort


def typecheck_spec(spec: A.Spec) -> A.Spec:
    ctx = typecheck_functions(spec.functions)
    ctx.actions = {a.name: a for a in spec.actions}
    procs = {p.name: p for p in spec.processes}
    for p in spec.processes:
        scope = {q.name: q.param_sort for q in p.params}
        _proc(p.body, scope, ctx, procs)
    _proc(spec.init, {}, ctx, procs)
    return spec


def _action(a: A.Action, scope, ctx):
    decl = ctx.actions.get(a.name)
    if decl is None:
        raise TypeCheckError(f"unknown action {a.name!r}", a.span)
    if len(decl.sorts) != len(a.args):
        raise TypeCheckError(f"action {a.name!r} expects {len(decl.sorts)} arguments, "
                             f"got {len(a.args)}", a.span)
    for arg, s in zip(a.args, decl.sorts):
        check_assign(arg, s, scope, ctx, f"argument of {a.name!r}")


def _proc(p, scope, ctx, procs):
    if isinstance(p, A.Deadlock):
        return
    if isinstance(p, A.Prefix):
        for a in p.actions:
            _action(a, scope, ctx)
        _proc(p.cont, scope, ctx, procs)
    elif isinstance(p, (A.Choice, A.Parallel)):
        _proc(p.left, scope, ctx, procs)
        _proc(p.right, scope, ctx, procs)
    elif isinstance(p, A.Sum):
        _proc(p.body, {**scope, p.var: p.var_sort}, ctx, procs)
    elif isinstance(p, A.IfThenElse):
        check_assign(p.cond, Sort.BOOL, scope, ctx, "condition")
        _proc(p.then, scope, ctx, procs)
        _proc(p.else_, scope, ctx, procs)
    elif isinstance(p, A.ProcCall):
        decl = procs[p.name]
        for arg, q in zip(p.args, decl.params):
            check_assign(arg, q.param_sort, scope, ctx, f"argument {q.name!r} of {p.name!r}")
    elif isinstance(p, A.Comm):
        _check_comm(p, ctx)
        _proc(p.operand, scope, ctx, procs)
    elif isinstance(p, A.Allow):
        _proc(p.operand, scope, ctx, procs)
    else:
        raise TypeCheckError(f"unexpected process term {type(p).__name__}", p.span)


def _check_comm(p: A.Comm, ctx):
    lhs, results = set(), set()
    for r in p.rules:
        sorts = [ctx.actions[n].sorts for n in (r.send, r.receive, r.result)]
        if not (sorts[0] == sorts[1] == sorts[2]):
            raise TypeCheckError(f"communication {r.send}|{r.receive} -> {r.result} "
                                 "joins actions of different sorts", r.span)
        if r.send == r.receive:
            raise TypeCheckError("communication needs two distinct actions", r.span)
        for n in (r.send, r.receive):
            if n in lhs:
                raise TypeCheckError(f"action {n!r} occurs in two communications", r.span)
            lhs.add(n)
        results.add(r.result)
    if lhs & results:
        raise TypeCheckError("communication result feeds another communication", p.span)


# -- formulas ---------------------------------------------------------------

def typecheck_formula(f: A.StateFormula, spec: A.Spec) -> A.StateFormula:
    ctx = typecheck_functions(spec.functions)
    ctx.actions = {a.name: a for a in spec.actions}
    _formula(f, {}, {}, ctx)
    return f


def _formula(f, scope, fixsig, ctx):
    if isinstance(f, (A.TrueF, A.FalseF)):
        return
    if isinstance(f, A.Val):
        check_assign(f.expr, Sort.BOOL, scope, ctx, "val argument")
    elif isinstance(f, A.Not):
        _formula(f.arg, scope, fixsig, ctx)
    elif isinstance(f, (A.And, A.Or, A.Implies)):
        _formula(f.left, scope, fixsig, ctx)
        _formula(f.right, scope, fixsig, ctx)
    elif isinstance(f, (A.Forall, A.Exists)):
        _formula(f.body, {**scope, f.var: f.var_sort}, fixsig, ctx)
    elif isinstance(f, (A.Box, A.Diamond)):
        _af(f.reg.action, scope, ctx)
        _formula(f.body, scope, fixsig, ctx)
    elif isinstance(f, (A.Mu, A.Nu)):
        inner = dict(scope)
        for p in f.params:
            check_assign(p.init, p.param_sort, scope, ctx, f"initial value of {p.name!r}")
            inner[p.name] = p.param_sort
        _formula(f.body, inner, {**fixsig, f.name: [p.param_sort for p in f.params]}, ctx)
    elif isinstance(f, A.FixVar):
        for arg, s in zip(f.args, fixsig[f.name]):
            check_assign(arg, s, scope, ctx, f"argument of {f.name!r}")
    else:
        raise TypeCheckError(f"unexpected formula {type(f).__name__}", f.span)


def _af(af, scope, ctx):
    if isinstance(af, A.AnyAction):
        return
    if isinstance(af, A.ActMatch):
        for a in af.actions:
            _action(a, scope, ctx)
    elif isinstance(af, A.ActNot):
        _af(af.arg, scope, ctx)
    elif isinstance(af, (A.ActAnd, A.ActOr)):
        _af(af.left, scope, ctx)
        _af(af.right, scope, ctx)
    elif isinstance(af, A.ActExists):
        _af(af.body, {**scope, af.var: af.var_sort}, ctx)
