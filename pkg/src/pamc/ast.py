"""Abstract syntax for models, data expressions and modal formulas.

Every node carries an optional ``span`` that is ignored by equality, so two
trees parsed from differently formatted text compare equal.  Data expression
nodes also get a ``sort`` slot filled in by the type checker.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import SourceSpan


class Sort(enum.Enum):
    BOOL = "Bool"
    NAT = "Nat"
    INT = "Int"

    def __str__(self):
        return self.value


def _span():
    return field(default=None, compare=False, repr=False, kw_only=True)


@dataclass
class Node:
    span: SourceSpan | None = _span()


# -- data expressions -------------------------------------------------------

@dataclass
class Expr(Node):
    sort: Sort | None = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass
class Const(Expr):
    value: bool | int
    const_sort: Sort


@dataclass
class Var(Expr):
    name: str


@dataclass
class Unary(Expr):
    op: str  # '!' or '-'
    arg: Expr


@dataclass
class Binary(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass
class Call(Expr):
    """Application of a builtin (``Int2Nat``) or an ``eqn``-defined function."""
    name: str
    args: list[Expr]


# -- process expressions ----------------------------------------------------

@dataclass
class Action(Node):
    name: str
    args: list[Expr] = field(default_factory=list)


@dataclass
class ProcExpr(Node):
    pass


@dataclass
class Deadlock(ProcExpr):
    pass


@dataclass
class Prefix(ProcExpr):
    actions: list[Action]
    cont: ProcExpr


@dataclass
class Choice(ProcExpr):
    left: ProcExpr
    right: ProcExpr


@dataclass
class Sum(ProcExpr):
    var: str
    var_sort: Sort
    body: ProcExpr


@dataclass
class IfThenElse(ProcExpr):
    cond: Expr
    then: ProcExpr
    else_: ProcExpr


@dataclass
class ProcCall(ProcExpr):
    name: str
    args: list[Expr]


@dataclass
class Parallel(ProcExpr):
    left: ProcExpr
    right: ProcExpr


@dataclass
class CommRule(Node):
    send: str
    receive: str
    result: str


@dataclass
class Comm(ProcExpr):
    rules: list[CommRule]
    operand: ProcExpr


@dataclass
class Allow(ProcExpr):
    # each entry is a sorted tuple of action names (a multiset)
    sets: list[tuple[str, ...]]
    operand: ProcExpr


# -- declarations -----------------------------------------------------------

@dataclass
class Param(Node):
    name: str
    param_sort: Sort


@dataclass
class SortDecl(Node):
    name: str
    target: Sort


@dataclass
class ActDecl(Node):
    name: str
    sorts: list[Sort]


@dataclass
class FuncDef(Node):
    name: str
    params: list[Param]
    result: Sort | None
    body: Expr


@dataclass
class ProcDef(Node):
    name: str
    params: list[Param]
    body: ProcExpr


@dataclass
class Spec(Node):
    sorts: list[SortDecl]
    actions: list[ActDecl]
    functions: list[FuncDef]
    processes: list[ProcDef]
    init: ProcExpr

    def action(self, name):
        for a in self.actions:
            if a.name == name:
                return a
        return None

    def process(self, name):
        for p in self.processes:
            if p.name == name:
                return p
        return None

    def function(self, name):
        for f in self.functions:
            if f.name == name:
                return f
        return None


# -- action formulas --------------------------------------------------------

@dataclass
class ActionFormula(Node):
    pass


@dataclass
class AnyAction(ActionFormula):
    pass


@dataclass
class ActMatch(ActionFormula):
    actions: list[Action]


@dataclass
class ActNot(ActionFormula):
    arg: ActionFormula


@dataclass
class ActAnd(ActionFormula):
    left: ActionFormula
    right: ActionFormula


@dataclass
class ActOr(ActionFormula):
    left: ActionFormula
    right: ActionFormula


@dataclass
class ActExists(ActionFormula):
    var: str
    var_sort: Sort
    body: ActionFormula


@dataclass
class RegularFormula(Node):
    action: ActionFormula


@dataclass
class RegAct(RegularFormula):
    pass


@dataclass
class RegStar(RegularFormula):
    pass


# -- state formulas ---------------------------------------------------------

@dataclass
class StateFormula(Node):
    pass


@dataclass
class TrueF(StateFormula):
    pass


@dataclass
class FalseF(StateFormula):
    pass


@dataclass
class Not(StateFormula):
    arg: StateFormula


@dataclass
class And(StateFormula):
    left: StateFormula
    right: StateFormula


@dataclass
class Or(StateFormula):
    left: StateFormula
    right: StateFormula


@dataclass
class Implies(StateFormula):
    left: StateFormula
    right: StateFormula


@dataclass
class Val(StateFormula):
    expr: Expr


@dataclass
class Forall(StateFormula):
    var: str
    var_sort: Sort
    body: StateFormula


@dataclass
class Exists(StateFormula):
    var: str
    var_sort: Sort
    body: StateFormula


@dataclass
class Box(StateFormula):
    reg: RegularFormula
    body: StateFormula


@dataclass
class Diamond(StateFormula):
    reg: RegularFormula
    body: StateFormula


@dataclass
class FixParam(Node):
    name: str
    param_sort: Sort
    init: Expr


@dataclass
class Mu(StateFormula):
    name: str
    params: list[FixParam]
    body: StateFormula


@dataclass
class Nu(StateFormula):
    name: str
    params: list[FixParam]
    body: StateFormula


@dataclass
class FixVar(StateFormula):
    name: str
    args: list[Expr] = field(default_factory=list)
