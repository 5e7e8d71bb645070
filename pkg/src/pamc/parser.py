"""Recursive descent parsers for model (``.pmx``) and formula (``.mcf``) files.

The grammar is documented in ``docs/grammar.md``.  Both entry points accept an
optional ``consts`` mapping; free data identifiers found in it are replaced by
literal constants while parsing (this is how ``--const B=2`` works).
"""
from __future__ import annotations

from dataclasses import dataclass

from . import ast as A
from .errors import (DuplicateDeclaration, NonMonotoneFixpoint, ParseError,
                     UnboundFixpointVariable, UnknownName)
from .lexer import Token, tokenize

BUILTIN_FUNCTIONS = {"Int2Nat"}
_BASE_SORTS = {"Bool": A.Sort.BOOL, "Nat": A.Sort.NAT, "Int": A.Sort.INT}
_CMP_OPS = ("==", "!=", "<", "<=", ">", ">=")


@dataclass
class _NameApp(A.ProcExpr):
    # `name(args)` whose role (action or process call) is decided after parsing
    name: str
    args: list


class _Parser:
    def __init__(self, text, filename):
        self.toks = tokenize(text, filename)
        self.pos = 0
        self.sort_aliases: dict[str, A.Sort] = {}

    # -- token helpers --
    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k=1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def at(self, *texts) -> bool:
        t = self.tok
        return t.kind in ("sym", "keyword") and t.text in texts

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.pos += 1
        return t

    def accept(self, text):
        if self.at(text):
            return self.advance()
        return None

    def expect(self, text) -> Token:
        if not self.at(text):
            self.fail(expected=(text,))
        return self.advance()

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            self.fail(expected=("identifier",))
        return self.advance()

    def fail(self, message=None, expected=(), tok=None):
        tok = tok or self.tok
        if message is None:
            message = f"unexpected {tok.text!r}"
        raise ParseError(message, tok.span, expected)

    # -- sorts --
    def sort(self) -> A.Sort:
        t = self.tok
        if t.text in _BASE_SORTS and t.kind == "keyword":
            self.advance()
            return _BASE_SORTS[t.text]
        if t.kind == "ident" and t.text in self.sort_aliases:
            self.advance()
            return self.sort_aliases[t.text]
        if t.kind == "ident":
            raise UnknownName(f"unknown sort {t.text!r}", t.span)
        self.fail(expected=("Bool", "Nat", "Int"))

    def binders(self) -> list[tuple[str, A.Sort, Token]]:
        """``x, y: Nat, b: Bool`` as a flat list."""
        out = []
        while True:
            names = [self.ident()]
            while self.accept(","):
                names.append(self.ident())
            self.expect(":")
            s = self.sort()
            out.extend((n.text, s, n) for n in names)
            if not self.accept(","):
                return out

    # -- data expressions --
    def expr(self) -> A.Expr:
        left = self.expr_or()
        if self.at("=>"):
            op = self.advance()
            right = self.expr()
            return A.Binary("=>", left, right, span=op.span)
        return left

    def expr_or(self):
        left = self.expr_and()
        while self.at("||"):
            op = self.advance()
            left = A.Binary("||", left, self.expr_and(), span=op.span)
        return left

    def expr_and(self):
        left = self.expr_cmp()
        while self.at("&&"):
            op = self.advance()
            left = A.Binary("&&", left, self.expr_cmp(), span=op.span)
        return left

    def expr_cmp(self):
        left = self.expr_add()
        if self.at(*_CMP_OPS):
            op = self.advance()
            left = A.Binary(op.text, left, self.expr_add(), span=op.span)
        return left

    def expr_add(self):
        left = self.expr_unary()
        while self.at("+", "-"):
            op = self.advance()
            left = A.Binary(op.text, left, self.expr_unary(), span=op.span)
        return left

    def expr_unary(self):
        if self.at("!", "-"):
            op = self.advance()
            return A.Unary(op.text, self.expr_unary(), span=op.span)
        return self.expr_atom()

    def expr_atom(self):
        t = self.tok
        if t.kind == "number":
            self.advance()
            return A.Const(int(t.text), A.Sort.NAT, span=t.span)
        if self.at("true", "false"):
            self.advance()
            return A.Const(t.text == "true", A.Sort.BOOL, span=t.span)
        if t.kind == "ident":
            self.advance()
            if self.at("("):
                return A.Call(t.text, self.arg_list(), span=t.span)
            return A.Var(t.text, span=t.span)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        self.fail(expected=("number", "identifier", "true", "false", "("))

    def arg_list(self) -> list[A.Expr]:
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.expr())
            while self.accept(","):
                args.append(self.expr())
        self.expect(")")
        return args

    def action(self) -> A.Action:
        t = self.ident()
        args = self.arg_list() if self.at("(") else []
        return A.Action(t.text, args, span=t.span)

    def multi_action(self) -> list[A.Action]:
        acts = [self.action()]
        while self.accept("|"):
            acts.append(self.action())
        return acts


class ModelParser(_Parser):
    def spec(self) -> A.Spec:
        sorts, acts, maps, eqns, procs, init = [], [], [], [], [], None
        while self.tok.kind != "eof":
            kw = self.tok
            if self.accept("sort"):
                sorts.extend(self._block(self.sort_decl))
            elif self.accept("act"):
                for group in self._block(self.act_decl):
                    acts.extend(group)
            elif self.accept("map"):
                maps.extend(self._block(self.map_decl))
            elif self.accept("eqn"):
                eqns.extend(self._block(self.eqn_decl))
            elif self.accept("proc"):
                procs.extend(self._block(self.proc_decl))
            elif self.accept("init"):
                if init is not None:
                    raise DuplicateDeclaration("second init section", kw.span)
                init = self.proc_expr()
                self.expect(";")
            else:
                self.fail(expected=("sort", "act", "map", "eqn", "proc", "init"))
        if init is None:
            raise ParseError("missing init section", self.tok.span, ("init",))
        functions = _merge_functions(maps, eqns)
        return A.Spec(sorts, acts, functions, procs, init, span=self.toks[0].span)

    def _block(self, item):
        out = [item()]
        while self.tok.kind == "ident":
            out.append(item())
        return out

    def sort_decl(self):
        name = self.ident()
        self.expect("=")
        target = self.sort()
        self.expect(";")
        if name.text in self.sort_aliases:
            raise DuplicateDeclaration(f"sort {name.text!r} declared twice", name.span)
        self.sort_aliases[name.text] = target
        return A.SortDecl(name.text, target, span=name.span)

    def act_decl(self):
        names = [self.ident()]
        while self.accept(","):
            names.append(self.ident())
        sorts = []
        if self.accept(":"):
            sorts.append(self.sort())
            while self.accept("#"):
                sorts.append(self.sort())
        self.expect(";")
        return [A.ActDecl(n.text, list(sorts), span=n.span) for n in names]

    def map_decl(self):
        name = self.ident()
        self.expect(":")
        sorts = [self.sort()]
        while self.accept("#"):
            sorts.append(self.sort())
        if self.accept("->"):
            result = self.sort()
        else:
            result, sorts = sorts.pop(), sorts
            if sorts:
                self.fail(expected=("->",))
        self.expect(";")
        return name, sorts, result

    def eqn_decl(self):
        name = self.ident()
        params = []
        if self.accept("("):
            while True:
                p = self.ident()
                s = self.sort() if self.accept(":") else None
                params.append((p, s))
                if not self.accept(","):
                    break
            self.expect(")")
        self.expect("=")
        body = self.expr()
        self.expect(";")
        return name, params, body

    def proc_decl(self):
        name = self.ident()
        params = []
        if self.accept("("):
            if not self.at(")"):
                params = [A.Param(n, s, span=t.span) for n, s, t in self.binders()]
            self.expect(")")
        self.expect("=")
        body = self.proc_expr()
        self.expect(";")
        return A.ProcDef(name.text, params, body, span=name.span)

    # -- process expressions --
    def proc_expr(self):
        left = self.proc_sum()
        while self.at("+"):
            op = self.advance()
            left = A.Choice(left, self.proc_sum(), span=op.span)
        return left

    def proc_sum(self):
        if self.at("sum"):
            self.advance()
            bs = self.binders()
            self.expect(".")
            body = self.proc_sum()
            for name, s, t in reversed(bs):
                body = A.Sum(name, s, body, span=t.span)
            return body
        return self.proc_par()

    def proc_par(self):
        left = self.proc_cond()
        while self.at("||"):
            op = self.advance()
            left = A.Parallel(left, self.proc_cond(), span=op.span)
        return left

    def proc_cond(self):
        start = self.pos
        cond, data_err = None, None
        try:
            cond = self.expr()
        except ParseError as e:
            data_err = e
        if cond is not None and self.at("->"):
            arrow = self.advance()
            then = self.proc_seq()
            else_ = self.proc_seq() if self.accept("<>") else A.Deadlock(span=arrow.span)
            return A.IfThenElse(cond, then, else_, span=arrow.span)
        self.pos = start
        try:
            return self.proc_seq()
        except ParseError as e:
            if data_err is not None and _later(data_err, e):
                raise data_err from None
            raise

    def proc_seq(self):
        t = self.tok
        if t.kind == "ident":
            acts = self.multi_action()
            if self.at("."):
                self.advance()
                cont = self.proc_cont()
                return A.Prefix(acts, cont, span=t.span)
            if len(acts) > 1:
                return A.Prefix(acts, A.Deadlock(span=t.span), span=t.span)
            return _NameApp(acts[0].name, acts[0].args, span=t.span)
        return self.proc_atom()

    def proc_cont(self):
        if self.at("sum"):
            return self.proc_sum()
        return self.proc_cond_or_seq()

    def proc_cond_or_seq(self):
        return self.proc_cond()

    def proc_atom(self):
        t = self.tok
        if self.accept("delta"):
            return A.Deadlock(span=t.span)
        if self.accept("tau"):
            self.fail("tau is not supported", tok=t)
        if self.accept("("):
            p = self.proc_expr()
            self.expect(")")
            return p
        if self.accept("allow"):
            self.expect("(")
            self.expect("{")
            sets = [tuple(sorted(a.name for a in self.multi_action()))]
            while self.accept(","):
                sets.append(tuple(sorted(a.name for a in self.multi_action())))
            self.expect("}")
            self.expect(",")
            operand = self.proc_expr()
            self.expect(")")
            return A.Allow(sets, operand, span=t.span)
        if self.accept("comm"):
            self.expect("(")
            self.expect("{")
            rules = [self.comm_rule()]
            while self.accept(","):
                rules.append(self.comm_rule())
            self.expect("}")
            self.expect(",")
            operand = self.proc_expr()
            self.expect(")")
            return A.Comm(rules, operand, span=t.span)
        self.fail(expected=("identifier", "delta", "(", "allow", "comm"))

    def comm_rule(self):
        s = self.ident()
        self.expect("|")
        r = self.ident()
        self.expect("->")
        res = self.ident()
        return A.CommRule(s.text, r.text, res.text, span=s.span)


class FormulaParser(_Parser):
    def formula(self) -> A.StateFormula:
        left = self.f_or()
        if self.at("=>"):
            op = self.advance()
            return A.Implies(left, self.formula(), span=op.span)
        return left

    def f_or(self):
        left = self.f_and()
        while self.at("||"):
            op = self.advance()
            left = A.Or(left, self.f_and(), span=op.span)
        return left

    def f_and(self):
        left = self.f_unary()
        while self.at("&&"):
            op = self.advance()
            left = A.And(left, self.f_unary(), span=op.span)
        return left

    def f_unary(self):
        t = self.tok
        if self.accept("!"):
            return A.Not(self.f_unary(), span=t.span)
        if self.accept("["):
            reg = self.regular()
            self.expect("]")
            return A.Box(reg, self.f_unary(), span=t.span)
        if self.accept("<"):
            reg = self.regular()
            self.expect(">")
            return A.Diamond(reg, self.f_unary(), span=t.span)
        if self.at("forall", "exists"):
            self.advance()
            bs = self.binders()
            self.expect(".")
            body = self.formula()
            cls = A.Forall if t.text == "forall" else A.Exists
            for name, s, bt in reversed(bs):
                body = cls(name, s, body, span=bt.span)
            return body
        if self.at("mu", "nu"):
            self.advance()
            name = self.ident()
            params = []
            if self.accept("("):
                while True:
                    p = self.ident()
                    self.expect(":")
                    s = self.sort()
                    self.expect("=")
                    params.append(A.FixParam(p.text, s, self.expr(), span=p.span))
                    if not self.accept(","):
                        break
                self.expect(")")
            self.expect(".")
            body = self.formula()
            cls = A.Mu if t.text == "mu" else A.Nu
            return cls(name.text, params, body, span=t.span)
        return self.f_atom()

    def f_atom(self):
        t = self.tok
        if self.accept("true"):
            return A.TrueF(span=t.span)
        if self.accept("false"):
            return A.FalseF(span=t.span)
        if self.accept("val"):
            self.expect("(")
            e = self.expr()
            self.expect(")")
            return A.Val(e, span=t.span)
        if t.kind == "ident":
            self.advance()
            args = self.arg_list() if self.at("(") else []
            return A.FixVar(t.text, args, span=t.span)
        if self.accept("("):
            f = self.formula()
            self.expect(")")
            return f
        self.fail(expected=("true", "false", "val", "identifier", "(", "!", "[", "<",
                            "forall", "exists", "mu", "nu"))

    def regular(self) -> A.RegularFormula:
        t = self.tok
        af = self.af()
        if self.accept("*"):
            return A.RegStar(af, span=t.span)
        return A.RegAct(af, span=t.span)

    def af(self):
        left = self.af_and()
        while self.at("||"):
            op = self.advance()
            left = A.ActOr(left, self.af_and(), span=op.span)
        return left

    def af_and(self):
        left = self.af_unary()
        while self.at("&&"):
            op = self.advance()
            left = A.ActAnd(left, self.af_unary(), span=op.span)
        return left

    def af_unary(self):
        t = self.tok
        if self.accept("!"):
            return A.ActNot(self.af_unary(), span=t.span)
        if self.accept("exists"):
            bs = self.binders()
            self.expect(".")
            body = self.af()
            for name, s, bt in reversed(bs):
                body = A.ActExists(name, s, body, span=bt.span)
            return body
        if self.accept("true"):
            return A.AnyAction(span=t.span)
        if self.accept("false"):
            return A.ActNot(A.AnyAction(span=t.span), span=t.span)
        if self.accept("("):
            f = self.af()
            self.expect(")")
            return f
        if t.kind == "ident":
            return A.ActMatch(self.multi_action(), span=t.span)
        self.fail(expected=("identifier", "true", "false", "!", "exists", "("))


def _later(e1: ParseError, e2: ParseError) -> bool:
    s1, s2 = e1.span, e2.span
    return (s1.line, s1.column) > (s2.line, s2.column)


def _merge_functions(maps, eqns) -> list[A.FuncDef]:
    sigs = {}
    for name, sorts, result in maps:
        if name.text in sigs:
            raise DuplicateDeclaration(f"function {name.text!r} declared twice", name.span)
        sigs[name.text] = (sorts, result, name)
    out, seen = [], set()
    for name, params, body in eqns:
        if name.text in seen:
            raise DuplicateDeclaration(f"function {name.text!r} defined twice", name.span)
        seen.add(name.text)
        sig = sigs.get(name.text)
        if sig is not None and len(sig[0]) != len(params):
            raise ParseError(f"equation for {name.text!r} has {len(params)} parameters, "
                             f"declared {len(sig[0])}", name.span)
        typed = []
        for k, (p, s) in enumerate(params):
            if s is None:
                if sig is None:
                    raise ParseError(f"parameter {p.text!r} needs a sort", p.span, (":",))
                s = sig[0][k]
            elif sig is not None and s != sig[0][k]:
                raise ParseError(f"parameter {p.text!r} sort disagrees with map declaration",
                                 p.span)
            typed.append(A.Param(p.text, s, span=p.span))
        out.append(A.FuncDef(name.text, typed, sig[1] if sig else None, body, span=name.span))
    for fname, (_, _, tok) in sigs.items():
        if fname not in seen:
            raise ParseError(f"function {fname!r} has no equation", tok.span, ("eqn",))
    return out


# -- name resolution --------------------------------------------------------

class _SpecResolver:
    def __init__(self, spec: A.Spec, consts):
        self.spec = spec
        self.consts = consts or {}
        self.actions = {}
        self.procs = {}
        self.funcs = {}
        for a in spec.actions:
            self._declare(self.actions, a, "action")
        for f in spec.functions:
            if f.name in BUILTIN_FUNCTIONS:
                raise DuplicateDeclaration(f"{f.name!r} is a builtin", f.span)
            self._declare(self.funcs, f, "function")
        for p in spec.processes:
            if p.name in self.actions:
                raise DuplicateDeclaration(f"{p.name!r} is both an action and a process", p.span)
            self._declare(self.procs, p, "process")
            names = [q.name for q in p.params]
            if len(set(names)) != len(names):
                raise DuplicateDeclaration(f"repeated parameter in {p.name!r}", p.span)

    @staticmethod
    def _declare(table, item, what):
        if item.name in table:
            raise DuplicateDeclaration(f"{what} {item.name!r} declared twice", item.span)
        table[item.name] = item

    def run(self):
        for f in self.spec.functions:
            f.body = self.expr(f.body, {p.name for p in f.params})
        for p in self.spec.processes:
            p.body = self.proc(p.body, {q.name for q in p.params}, p)
        self.spec.init = self.proc(self.spec.init, set(), None)
        return self.spec

    def expr(self, e, scope):
        return resolve_expr(e, scope, self.consts, self.funcs)

    def action(self, a: A.Action, scope):
        decl = self.actions.get(a.name)
        if decl is None:
            raise UnknownName(f"unknown action {a.name!r}", a.span)
        if len(a.args) != len(decl.sorts):
            raise ParseError(f"action {a.name!r} expects {len(decl.sorts)} arguments, "
                             f"got {len(a.args)}", a.span)
        a.args = [self.expr(x, scope) for x in a.args]
        return a

    def proc(self, p, scope, owner):
        if isinstance(p, _NameApp):
            if p.name in self.actions:
                act = self.action(A.Action(p.name, p.args, span=p.span), scope)
                return A.Prefix([act], A.Deadlock(span=p.span), span=p.span)
            p = A.ProcCall(p.name, p.args, span=p.span)
        if isinstance(p, A.ProcCall):
            decl = self.procs.get(p.name)
            if decl is None:
                raise UnknownName(f"unknown process or action {p.name!r}", p.span)
            if not p.args and decl.params and owner is decl:
                # `P()` inside P keeps the current parameter values
                p.args = [A.Var(q.name, span=p.span) for q in decl.params]
            if len(p.args) != len(decl.params):
                raise ParseError(f"process {p.name!r} expects {len(decl.params)} arguments, "
                                 f"got {len(p.args)}", p.span)
            p.args = [self.expr(x, scope) for x in p.args]
            return p
        if isinstance(p, A.Prefix):
            p.actions = [self.action(a, scope) for a in p.actions]
            p.cont = self.proc(p.cont, scope, owner)
            return p
        if isinstance(p, (A.Choice, A.Parallel)):
            p.left = self.proc(p.left, scope, owner)
            p.right = self.proc(p.right, scope, owner)
            return p
        if isinstance(p, A.Sum):
            p.body = self.proc(p.body, scope | {p.var}, owner)
            return p
        if isinstance(p, A.IfThenElse):
            p.cond = self.expr(p.cond, scope)
            p.then = self.proc(p.then, scope, owner)
            p.else_ = self.proc(p.else_, scope, owner)
            return p
        if isinstance(p, A.Comm):
            results = set()
            for r in p.rules:
                for n in (r.send, r.receive, r.result):
                    if n not in self.actions:
                        raise UnknownName(f"unknown action {n!r}", r.span)
                if r.result in results:
                    raise ParseError(f"communication result {r.result!r} used twice", r.span)
                results.add(r.result)
            p.operand = self.proc(p.operand, scope, owner)
            return p
        if isinstance(p, A.Allow):
            for names in p.sets:
                for n in names:
                    if n not in self.actions:
                        raise UnknownName(f"unknown action {n!r}", p.span)
            p.operand = self.proc(p.operand, scope, owner)
            return p
        return p


def resolve_expr(e, scope, consts, funcs=None):
    """Substitute constants for free identifiers and check function names."""
    if isinstance(e, A.Var):
        if e.name not in scope and e.name in consts:
            return _const(consts[e.name], e.span)
        return e
    if isinstance(e, A.Unary):
        e.arg = resolve_expr(e.arg, scope, consts, funcs)
    elif isinstance(e, A.Binary):
        e.left = resolve_expr(e.left, scope, consts, funcs)
        e.right = resolve_expr(e.right, scope, consts, funcs)
    elif isinstance(e, A.Call):
        if funcs is not None and e.name not in BUILTIN_FUNCTIONS and e.name not in funcs:
            raise UnknownName(f"unknown function {e.name!r}", e.span)
        e.args = [resolve_expr(x, scope, consts, funcs) for x in e.args]
    return e


def _const(value, span):
    if isinstance(value, bool):
        return A.Const(value, A.Sort.BOOL, span=span)
    if value < 0:
        return A.Unary("-", A.Const(-value, A.Sort.NAT, span=span), span=span)
    return A.Const(value, A.Sort.NAT, span=span)


def _resolve_formula(f, scope, fixvars, consts, negs=None):
    """Substitute constants, check fixpoint variable binding and monotonicity.

    ``fixvars`` maps a fixpoint name to (arity, negation count at its binder).
    """
    negs = negs or 0
    rec = _resolve_formula
    if isinstance(f, A.Val):
        f.expr = resolve_expr(f.expr, scope, consts)
    elif isinstance(f, A.Not):
        f.arg = rec(f.arg, scope, fixvars, consts, negs + 1)
    elif isinstance(f, A.Implies):
        f.left = rec(f.left, scope, fixvars, consts, negs + 1)
        f.right = rec(f.right, scope, fixvars, consts, negs)
    elif isinstance(f, (A.And, A.Or)):
        f.left = rec(f.left, scope, fixvars, consts, negs)
        f.right = rec(f.right, scope, fixvars, consts, negs)
    elif isinstance(f, (A.Forall, A.Exists)):
        f.body = rec(f.body, scope | {f.var}, fixvars, consts, negs)
    elif isinstance(f, (A.Box, A.Diamond)):
        f.reg.action = _resolve_af(f.reg.action, scope, consts)
        f.body = rec(f.body, scope, fixvars, consts, negs)
    elif isinstance(f, (A.Mu, A.Nu)):
        names = [p.name for p in f.params]
        if len(set(names)) != len(names):
            raise DuplicateDeclaration(f"repeated parameter in fixpoint {f.name!r}", f.span)
        for p in f.params:
            p.init = resolve_expr(p.init, scope, consts)
        inner = dict(fixvars)
        inner[f.name] = (len(f.params), negs)
        f.body = rec(f.body, scope | set(names), inner, consts, negs)
    elif isinstance(f, A.FixVar):
        if f.name not in fixvars:
            raise UnboundFixpointVariable(f"unbound fixpoint variable {f.name!r}", f.span)
        arity, bound_negs = fixvars[f.name]
        if len(f.args) != arity:
            raise ParseError(f"fixpoint variable {f.name!r} expects {arity} arguments, "
                             f"got {len(f.args)}", f.span)
        if (negs - bound_negs) % 2:
            raise NonMonotoneFixpoint(
                f"{f.name!r} occurs under an odd number of negations", f.span)
        f.args = [resolve_expr(x, scope, consts) for x in f.args]
    return f


def _resolve_af(af, scope, consts):
    if isinstance(af, A.ActMatch):
        for a in af.actions:
            a.args = [resolve_expr(x, scope, consts) for x in a.args]
    elif isinstance(af, A.ActNot):
        af.arg = _resolve_af(af.arg, scope, consts)
    elif isinstance(af, (A.ActAnd, A.ActOr)):
        af.left = _resolve_af(af.left, scope, consts)
        af.right = _resolve_af(af.right, scope, consts)
    elif isinstance(af, A.ActExists):
        af.body = _resolve_af(af.body, scope | {af.var}, consts)
    return af


# -- public API -------------------------------------------------------------

def parse_spec(text: str, filename: str = "<model>", consts=None) -> A.Spec:
    p = ModelParser(text, filename)
    spec = p.spec()
    return _SpecResolver(spec, consts).run()


def parse_formula(text: str, filename: str = "<formula>", consts=None) -> A.StateFormula:
    p = FormulaParser(text, filename)
    f = p.formula()
    if p.tok.kind != "eof":
        p.fail(expected=("end of input", "&&", "||", "=>"))
    return _resolve_formula(f, frozenset(), {}, consts or {})


def parse_expr(text: str, filename: str = "<expr>", consts=None) -> A.Expr:
    p = _Parser(text, filename)
    e = p.expr()
    if p.tok.kind != "eof":
        p.fail(expected=("end of input",))
    return resolve_expr(e, frozenset(), consts or {})
