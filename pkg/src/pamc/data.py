"""Data values, type checking, evaluation and finite enumeration.

Values are plain Python ``bool`` and ``int``; which of Nat/Int an integer
belongs to is tracked statically by the type checker.  Environments are
immutable mappings from names to values.
"""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType

from . import ast as A
from .errors import EvalError, TypeCheckError, UnboundedDomain, UnboundVariable
from .unparse import value_text

Sort = A.Sort
NUMERIC = (Sort.NAT, Sort.INT)


@dataclass(frozen=True)
class QuantConfig:
    """Range used when a ``sum`` or state-formula quantifier ranges over Nat/Int.

    ``nat_bound=None`` means unbounded, which makes enumeration an error.
    """
    nat_bound: int | None = 1


class Env:
    """Immutable variable binding; ``extend`` returns a new environment."""

    __slots__ = ("_d",)

    def __init__(self, bindings=None):
        self._d = MappingProxyType(dict(bindings or {}))

    def __getitem__(self, name):
        try:
            return self._d[name]
        except KeyError:
            raise UnboundVariable(f"unbound variable {name!r}") from None

    def __contains__(self, name):
        return name in self._d

    def extend(self, **kw) -> Env:
        d = dict(self._d)
        d.update(kw)
        return Env(d)

    def extend_map(self, m) -> Env:
        d = dict(self._d)
        d.update(m)
        return Env(d)

    def restrict(self, names) -> tuple:
        """Canonical hashable key of the bindings for ``names``."""
        return tuple((n, self._d[n]) for n in sorted(names) if n in self._d)

    def items(self):
        return self._d.items()

    def __eq__(self, other):
        return isinstance(other, Env) and dict(self._d) == dict(other._d)

    def __repr__(self):
        return "Env(" + ", ".join(f"{k}={value_text(v)}" for k, v in sorted(self._d.items())) + ")"


EMPTY_ENV = Env()


def enumerate_sort(sort: Sort, cfg: QuantConfig | None = None) -> list:
    if sort is Sort.BOOL:
        return [False, True]
    bound = cfg.nat_bound if cfg is not None else None
    if bound is None:
        raise UnboundedDomain(f"enumerating {sort} needs a configured bound")
    if sort is Sort.NAT:
        return list(range(0, bound + 1))
    return list(range(-bound, bound + 1))


def values_equal(a, b) -> bool:
    # bool is a subclass of int in Python, so compare types explicitly
    return type(a) is type(b) and a == b


# -- type checking ----------------------------------------------------------

def _assignable(actual: Sort, declared: Sort) -> bool:
    return actual == declared or (actual is Sort.NAT and declared is Sort.INT)


class TypeContext:
    def __init__(self, functions=(), actions=()):
        self.functions = {f.name: f for f in functions}
        self.actions = {a.name: a for a in actions}


def typecheck_expr(e: A.Expr, scope: dict, ctx: TypeContext) -> Sort:
    """Annotate ``e`` (in place) with sorts and return the sort of ``e``."""
    s = _tc(e, scope, ctx)
    e.sort = s
    return s


def _tc(e, scope, ctx) -> Sort:
    if isinstance(e, A.Const):
        return e.const_sort
    if isinstance(e, A.Var):
        if e.name not in scope:
            raise TypeCheckError(f"unbound variable {e.name!r}", e.span)
        return scope[e.name]
    if isinstance(e, A.Unary):
        s = typecheck_expr(e.arg, scope, ctx)
        if e.op == "!":
            _want(s, (Sort.BOOL,), e)
            return Sort.BOOL
        _want(s, NUMERIC, e)
        return Sort.INT
    if isinstance(e, A.Binary):
        ls = typecheck_expr(e.left, scope, ctx)
        rs = typecheck_expr(e.right, scope, ctx)
        op = e.op
        if op in ("&&", "||", "=>"):
            _want(ls, (Sort.BOOL,), e.left)
            _want(rs, (Sort.BOOL,), e.right)
            return Sort.BOOL
        if op in ("+", "-"):
            _want(ls, NUMERIC, e.left)
            _want(rs, NUMERIC, e.right)
            if op == "+" and ls is Sort.NAT and rs is Sort.NAT:
                return Sort.NAT
            return Sort.INT
        if op in ("<", "<=", ">", ">="):
            _want(ls, NUMERIC, e.left)
            _want(rs, NUMERIC, e.right)
            return Sort.BOOL
        if op in ("==", "!="):
            if (ls in NUMERIC) != (rs in NUMERIC):
                raise TypeCheckError(f"cannot compare {ls} with {rs}", e.span)
            return Sort.BOOL
        raise TypeCheckError(f"unknown operator {op!r}", e.span)
    if isinstance(e, A.Call):
        arg_sorts = [typecheck_expr(a, scope, ctx) for a in e.args]
        if e.name == "Int2Nat":
            if len(arg_sorts) != 1:
                raise TypeCheckError("Int2Nat takes one argument", e.span)
            _want(arg_sorts[0], NUMERIC, e.args[0])
            return Sort.NAT
        f = ctx.functions.get(e.name)
        if f is None:
            raise TypeCheckError(f"unknown function {e.name!r}", e.span)
        if len(f.params) != len(arg_sorts):
            raise TypeCheckError(f"{e.name!r} expects {len(f.params)} arguments, "
                                 f"got {len(arg_sorts)}", e.span)
        for p, s, a in zip(f.params, arg_sorts, e.args):
            if not _assignable(s, p.param_sort):
                raise TypeCheckError(f"argument of sort {s} where {p.param_sort} expected",
                                     a.span or e.span)
        return f.result
    raise TypeCheckError(f"not an expression: {e!r}", getattr(e, "span", None))


def _want(s, allowed, node):
    if s not in allowed:
        want = "/".join(str(a) for a in allowed)
        raise TypeCheckError(f"expected {want}, found {s}", node.span)


def check_assign(e: A.Expr, declared: Sort, scope, ctx, what="value"):
    s = typecheck_expr(e, scope, ctx)
    if not _assignable(s, declared):
        raise TypeCheckError(f"{what} of sort {s} where {declared} expected", e.span)


def typecheck_functions(functions) -> TypeContext:
    """Check equation bodies in order; a function may only call earlier ones."""
    ctx = TypeContext()
    for f in functions:
        scope = {p.name: p.param_sort for p in f.params}
        if len(scope) != len(f.params):
            raise TypeCheckError(f"repeated parameter in {f.name!r}", f.span)
        s = typecheck_expr(f.body, scope, ctx)
        if f.result is None:
            f.result = s
        elif not _assignable(s, f.result):
            raise TypeCheckError(f"body of {f.name!r} has sort {s}, declared {f.result}",
                                 f.body.span)
        ctx.functions[f.name] = f
    return ctx


# -- evaluation -------------------------------------------------------------

def eval_expr(e: A.Expr, env: Env, functions=None):
    if isinstance(e, A.Const):
        return e.value
    if isinstance(e, A.Var):
        if e.name not in env:
            raise UnboundVariable(f"unbound variable {e.name!r}", e.span)
        return env[e.name]
    if isinstance(e, A.Unary):
        v = eval_expr(e.arg, env, functions)
        return (not v) if e.op == "!" else -v
    if isinstance(e, A.Binary):
        op = e.op
        if op == "&&":
            return bool(eval_expr(e.left, env, functions)) and bool(eval_expr(e.right, env, functions))
        if op == "||":
            return bool(eval_expr(e.left, env, functions)) or bool(eval_expr(e.right, env, functions))
        if op == "=>":
            return (not eval_expr(e.left, env, functions)) or bool(eval_expr(e.right, env, functions))
        a = eval_expr(e.left, env, functions)
        b = eval_expr(e.right, env, functions)
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "==":
            return a == b
        if op == "!=":
            return a != b
        if op == "<":
            return a < b
        if op == "<=":
            return a <= b
        if op == ">":
            return a > b
        if op == ">=":
            return a >= b
        raise EvalError(f"unknown operator {op!r}", e.span)
    if isinstance(e, A.Call):
        args = [eval_expr(a, env, functions) for a in e.args]
        if e.name == "Int2Nat":
            if args[0] < 0:
                raise EvalError(f"Int2Nat applied to negative value {args[0]}", e.span)
            return args[0]
        f = (functions or {}).get(e.name)
        if f is None:
            raise EvalError(f"unknown function {e.name!r}", e.span)
        return eval_expr(f.body, Env({p.name: v for p, v in zip(f.params, args)}), functions)
    raise EvalError(f"not an expression: {e!r}")
