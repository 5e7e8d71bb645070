"""Formula normalization and on-the-fly instantiation into a parity game."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import ast as A
from .data import Env, QuantConfig, enumerate_sort, eval_expr
from .errors import InstantiationLimitExceeded, NonMonotoneFixpoint
from .game import REFUTER, VERIFIER, ParityGame
from .lts import Lts
from .semantics import expr_vars, match, moved_components
from .unparse import unparse

Sort = A.Sort


# -- normalization ----------------------------------------------------------

def normalize(f: A.StateFormula) -> A.StateFormula:
    """Positive normal form without Kleene stars.

    Implications become disjunctions, negations are pushed to ``val`` leaves
    and action formulas, ``[A*]phi`` becomes ``nu Z.(phi && [A]Z)`` and
    ``<A*>phi`` becomes ``mu Z.(phi || <A>Z)`` with a fresh ``Z``.  Fixpoint
    variables and data binders are renamed apart so that every binder name
    is unique.
    """
    return _Normalizer(f).run()


class _Normalizer:
    def __init__(self, f):
        self.root = f
        self.used = set()
        _collect_names(f, self.used)

    def fresh(self, base):
        name = base
        k = 1
        while name in self.used:
            name = f"{base}{k}"
            k += 1
        self.used.add(name)
        return name

    def run(self):
        self.used_binders = set()
        return self.push(self.root, False, {}, {}, frozenset())

    def binder(self, name):
        # first occurrence keeps its name, later ones get a fresh one
        if name not in self.used_binders:
            self.used_binders.add(name)
            return name
        new = self.fresh(name)
        self.used_binders.add(new)
        return new

    def push(self, f, neg, fix, data, dual):
        """Normal form of ``f`` (negated if ``neg``).

        ``fix`` and ``data`` rename bound fixpoint/data variables; ``dual``
        holds the (renamed) fixpoint variables whose binder was negated.
        """
        if isinstance(f, A.TrueF):
            return A.FalseF(span=f.span) if neg else A.TrueF(span=f.span)
        if isinstance(f, A.FalseF):
            return A.TrueF(span=f.span) if neg else A.FalseF(span=f.span)
        if isinstance(f, A.Val):
            e = _rename_expr(f.expr, data)
            if neg:
                e = A.Unary("!", e, span=e.span, sort=Sort.BOOL)
            return A.Val(e, span=f.span)
        if isinstance(f, A.Not):
            return self.push(f.arg, not neg, fix, data, dual)
        if isinstance(f, A.Implies):
            return self.push(A.Or(A.Not(f.left, span=f.span), f.right, span=f.span),
                             neg, fix, data, dual)
        if isinstance(f, (A.And, A.Or)):
            conj = isinstance(f, A.And) != neg
            cls = A.And if conj else A.Or
            return cls(self.push(f.left, neg, fix, data, dual),
                       self.push(f.right, neg, fix, data, dual), span=f.span)
        if isinstance(f, (A.Forall, A.Exists)):
            univ = isinstance(f, A.Forall) != neg
            cls = A.Forall if univ else A.Exists
            var = self.binder(f.var)
            body = self.push(f.body, neg, fix, {**data, f.var: var}, dual)
            return cls(var, f.var_sort, body, span=f.span)
        if isinstance(f, (A.Box, A.Diamond)):
            if isinstance(f.reg, A.RegStar):
                return self.push(self.expand_star(f), neg, fix, data, dual)
            box = isinstance(f, A.Box) != neg
            cls = A.Box if box else A.Diamond
            af = _rename_af(f.reg.action, data, self)
            return cls(A.RegAct(af, span=f.reg.span),
                       self.push(f.body, neg, fix, data, dual), span=f.span)
        if isinstance(f, (A.Mu, A.Nu)):
            least = isinstance(f, A.Mu) != neg
            cls = A.Mu if least else A.Nu
            name = self.binder(f.name)
            params = []
            inner = dict(data)
            for p in f.params:
                pname = self.binder(p.name)
                params.append(A.FixParam(pname, p.param_sort, _rename_expr(p.init, data),
                                         span=p.span))
                inner[p.name] = pname
            new_dual = (dual | {name}) if neg else (dual - {name})
            body = self.push(f.body, neg, {**fix, f.name: name}, inner, new_dual)
            return cls(name, params, body, span=f.span)
        if isinstance(f, A.FixVar):
            name = fix[f.name]
            if neg != (name in dual):
                raise NonMonotoneFixpoint(
                    f"fixpoint variable {f.name!r} occurs under an odd number of negations",
                    f.span)
            return A.FixVar(name, [_rename_expr(a, data) for a in f.args], span=f.span)
        raise TypeError(f"not a state formula: {f!r}")

    def expand_star(self, f):
        z = self.fresh("Z")
        # the fresh name is already unique, so mark it used as a binder too
        self.used_binders.add(z)
        step = A.RegAct(f.reg.action, span=f.reg.span)
        var = A.FixVar(z, [], span=f.span)
        if isinstance(f, A.Box):
            return A.Nu(z, [], A.And(f.body, A.Box(step, var, span=f.span), span=f.span),
                        span=f.span)
        return A.Mu(z, [], A.Or(f.body, A.Diamond(step, var, span=f.span), span=f.span),
                    span=f.span)


def _collect_names(node, out):
    if isinstance(node, (A.Mu, A.Nu)):
        out.add(node.name)
        out.update(p.name for p in node.params)
    elif isinstance(node, (A.Forall, A.Exists, A.ActExists)):
        out.add(node.var)
    elif isinstance(node, A.Var):
        out.add(node.name)
    if hasattr(node, "__dataclass_fields__"):
        for name in node.__dataclass_fields__:
            if name in ("span", "sort"):
                continue
            val = getattr(node, name)
            for child in (val if isinstance(val, list) else [val]):
                if isinstance(child, A.Node):
                    _collect_names(child, out)


def _rename_expr(e, data):
    if not data:
        return e
    if isinstance(e, A.Var):
        new = data.get(e.name, e.name)
        return e if new == e.name else A.Var(new, span=e.span, sort=e.sort)
    if isinstance(e, A.Unary):
        return A.Unary(e.op, _rename_expr(e.arg, data), span=e.span, sort=e.sort)
    if isinstance(e, A.Binary):
        return A.Binary(e.op, _rename_expr(e.left, data), _rename_expr(e.right, data),
                        span=e.span, sort=e.sort)
    if isinstance(e, A.Call):
        return A.Call(e.name, [_rename_expr(a, data) for a in e.args], span=e.span, sort=e.sort)
    return e


def _rename_af(af, data, norm):
    if isinstance(af, A.AnyAction):
        return af
    if isinstance(af, A.ActMatch):
        return A.ActMatch([A.Action(a.name, [_rename_expr(x, data) for x in a.args], span=a.span)
                           for a in af.actions], span=af.span)
    if isinstance(af, A.ActNot):
        return A.ActNot(_rename_af(af.arg, data, norm), span=af.span)
    if isinstance(af, (A.ActAnd, A.ActOr)):
        return type(af)(_rename_af(af.left, data, norm), _rename_af(af.right, data, norm),
                        span=af.span)
    if isinstance(af, A.ActExists):
        var = norm.binder(af.var)
        return A.ActExists(var, af.var_sort, _rename_af(af.body, {**data, af.var: var}, norm),
                           span=af.span)
    raise TypeError(f"not an action formula: {af!r}")


def is_existential(f: A.StateFormula) -> bool:
    """No box modality and no universal quantifier (after normalization)."""
    if isinstance(f, (A.Box, A.Forall)):
        return False
    return all(is_existential(c) for c in _subformulas(f))


def _subformulas(f):
    if isinstance(f, (A.And, A.Or, A.Implies)):
        return [f.left, f.right]
    if isinstance(f, (A.Not,)):
        return [f.arg]
    if isinstance(f, (A.Forall, A.Exists, A.Box, A.Diamond, A.Mu, A.Nu)):
        return [f.body]
    return []


# -- instantiation ----------------------------------------------------------

_RANK = {A.Val: 0, A.TrueF: 0, A.FalseF: 0, A.Box: 1, A.Diamond: 1,
         A.Mu: 3, A.Nu: 3, A.FixVar: 3}


@dataclass
class _Info:
    node: A.StateFormula
    free: tuple            # sorted free data variables
    children: list = None  # flattened operands for And/Or
    binder: int = -1       # for FixVar: id of its Mu/Nu
    priority: int = 0      # for Mu/Nu


class FormulaTable:
    """Node numbering and static information for a normalized formula."""

    def __init__(self, nf: A.StateFormula):
        self.root = nf
        self.info: list[_Info] = []
        self._ids = {}
        self._texts = {}
        binders = {}
        depths = []
        self._outer = {}
        self._visit(nf, binders, 0, depths, frozenset())
        top = max((d for _, d in depths), default=0)
        for nid, d in depths:
            self.info[nid].priority = 2 * (top - d) + (1 if isinstance(self.info[nid].node, A.Mu)
                                                        else 0)

    def id(self, node) -> int:
        return self._ids[id(node)]

    def _visit(self, f, binders, depth, depths, scope):
        nid = len(self.info)
        self._ids[id(f)] = nid
        info = _Info(f, ())
        self.info.append(info)
        if isinstance(f, (A.And, A.Or)):
            ops = []
            _flatten(f, type(f), ops)
            ops.sort(key=lambda g: _RANK.get(type(g), 2))
            info.children = ops
            for g in ops:
                self._visit(g, binders, depth, depths, scope)
            free = set().union(*(self.info[self.id(g)].free for g in ops))
        elif isinstance(f, (A.Forall, A.Exists)):
            self._visit(f.body, binders, depth, depths, scope | {f.var})
            free = set(self.info[self.id(f.body)].free) - {f.var}
        elif isinstance(f, (A.Box, A.Diamond)):
            self._visit(f.body, binders, depth, depths, scope)
            free = set(self.info[self.id(f.body)].free) | af_free_vars(f.reg.action)
        elif isinstance(f, (A.Mu, A.Nu)):
            depths.append((nid, depth))
            # outer data variables the body may need when re-entered via X
            used = set()
            _collect_names(f.body, used)
            self._outer[nid] = scope & used
            params = {p.name for p in f.params}
            self._visit(f.body, {**binders, f.name: nid}, depth + 1, depths, scope | params)
            free = set(self.info[self.id(f.body)].free) - {p.name for p in f.params}
            for p in f.params:
                free |= expr_vars(p.init)
        elif isinstance(f, A.FixVar):
            info.binder = binders[f.name]
            free = set(self._outer[info.binder])
            for a in f.args:
                free |= expr_vars(a)
        elif isinstance(f, A.Val):
            free = expr_vars(f.expr)
        else:
            free = set()
        info.free = tuple(sorted(free))

    def text(self, nid) -> str:
        t = self._texts.get(nid)
        if t is None:
            t = self._texts[nid] = unparse(self.info[nid].node)
        return t


def _flatten(f, cls, out):
    if isinstance(f, cls):
        _flatten(f.left, cls, out)
        _flatten(f.right, cls, out)
    else:
        out.append(f)


def af_free_vars(af) -> set:
    if isinstance(af, A.ActMatch):
        out = set()
        for a in af.actions:
            for x in a.args:
                out |= expr_vars(x)
        return out
    if isinstance(af, A.ActNot):
        return af_free_vars(af.arg)
    if isinstance(af, (A.ActAnd, A.ActOr)):
        return af_free_vars(af.left) | af_free_vars(af.right)
    if isinstance(af, A.ActExists):
        return af_free_vars(af.body) - {af.var}
    return set()


TT, FF = 0, 1


def instantiate(lts: Lts, nf: A.StateFormula, functions=None, quant: QuantConfig | None = None,
                limit: int = 10_000_000) -> ParityGame:
    """Demand-driven game for ``nf`` on ``lts``; the Verifier wins the initial
    vertex iff state 0 satisfies ``nf``.

    Vertices 0 and 1 are the winning terminals of the Verifier and Refuter.
    Other vertices are numbered in breadth-first discovery order.
    """
    return _Builder(lts, FormulaTable(nf), functions or {}, quant or QuantConfig(), limit).run()


class _Builder:
    def __init__(self, lts, table, functions, quant, limit):
        self.lts = lts
        self.table = table
        self.functions = functions
        self.quant = quant
        self.limit = limit
        self.index = {}
        self.keys = [None, None]
        self.queue = deque()

    def run(self):
        init = self.resolve(0, self.table.id(self.table.root), Env())
        owner = [VERIFIER, REFUTER]
        prio = [0, 1]
        succ = [(TT,), (FF,)]
        labels = [(None,), (None,)]
        ranks = [((),), ((),)]
        states = [None, None]
        desc = ["true", "false"]
        while self.queue:
            v = self.queue.popleft()
            state, nid, env_key = self.keys[v]
            o, p, out = self.expand(state, nid, Env(dict(env_key)))
            owner.append(o)
            prio.append(p)
            succ.append(tuple(w for w, _, _ in out))
            labels.append(tuple(step for _, step, _ in out))
            ranks.append(tuple(r for _, _, r in out))
            states.append(state)
            env_text = ", ".join(f"{n}={_vtext(x)}" for n, x in env_key)
            desc.append(f"{state}: {self.table.text(nid)}" + (f" [{env_text}]" if env_text else ""))
        return ParityGame(tuple(owner), tuple(prio), tuple(succ), init,
                          edge_labels=tuple(labels), edge_rank=tuple(ranks),
                          state=tuple(states), desc=tuple(desc))

    # vertex for formula node ``nid`` at ``state`` under ``env``
    def resolve(self, state, nid, env):
        info = self.table.info[nid]
        f = info.node
        if isinstance(f, A.TrueF):
            return TT
        if isinstance(f, A.FalseF):
            return FF
        if isinstance(f, A.Val):
            return TT if eval_expr(f.expr, env, self.functions) else FF
        if isinstance(f, A.FixVar):
            binder = self.table.info[info.binder]
            values = [eval_expr(a, env, self.functions) for a in f.args]
            return self._fix(state, info.binder, binder, env, values)
        if isinstance(f, (A.Mu, A.Nu)):
            values = [eval_expr(p.init, env, self.functions) for p in f.params]
            return self._fix(state, nid, info, env, values)
        return self._vertex((state, nid, env.restrict(info.free)))

    def _fix(self, state, nid, info, env, values):
        f = info.node
        body_free = self.table.info[self.table.id(f.body)].free
        env = env.extend_map({p.name: v for p, v in zip(f.params, values)})
        return self._vertex((state, nid, env.restrict(body_free)))

    def _vertex(self, key):
        v = self.index.get(key)
        if v is None:
            v = len(self.keys)
            if v >= self.limit:
                raise InstantiationLimitExceeded(f"more than {self.limit} game vertices")
            self.index[key] = v
            self.keys.append(key)
            self.queue.append(v)
        return v

    def expand(self, state, nid, env):
        """Owner, priority and ``[(successor, step, rank)]`` of a vertex.

        ``step`` is the LTS move ``(label, dst)`` behind a modality edge and
        None otherwise; ``rank`` orders equally good successors (see
        ``ParityGame.edge_rank``).
        """
        info = self.table.info[nid]
        f = info.node
        if isinstance(f, (A.Mu, A.Nu)):
            return VERIFIER, info.priority, [(self.resolve(state, self.table.id(f.body), env),
                                              None, ())]
        if isinstance(f, (A.And, A.Or)):
            conj = isinstance(f, A.And)
            out = []
            for k, g in enumerate(info.children):
                w = self.resolve(state, self.table.id(g), env)
                if w == (FF if conj else TT):
                    # a decided operand settles the vertex; siblings stay unexpanded
                    if isinstance(g, (A.Val, A.TrueF, A.FalseF)):
                        return (REFUTER if conj else VERIFIER), 0, [(w, None, ())]
                if w == (TT if conj else FF):
                    continue
                out.append((w, None, (k,)))
            if not out:
                out = [(TT if conj else FF, None, ())]
            return (REFUTER if conj else VERIFIER), 0, _dedup(out)
        if isinstance(f, (A.Forall, A.Exists)):
            body = self.table.id(f.body)
            out = [(self.resolve(state, body, env.extend(**{f.var: x})), None, (k,))
                   for k, x in enumerate(enumerate_sort(f.var_sort, self.quant))]
            return (REFUTER if isinstance(f, A.Forall) else VERIFIER), 0, _dedup(out)
        if isinstance(f, (A.Box, A.Diamond)):
            box = isinstance(f, A.Box)
            body = self.table.id(f.body)
            out = []
            src = self.lts.states[state]
            for lab, dst in self.lts.successors[state]:
                if match(f.reg.action, lab, env, self.functions):
                    rank = moved_components(src, self.lts.states[dst])
                    out.append((self.resolve(dst, body, env), (lab, dst), rank))
            if not out:
                out = [(TT if box else FF, None, ())]
            return (REFUTER if box else VERIFIER), 0, _dedup(out)
        raise TypeError(f"unexpected formula node {type(f).__name__}")


def _dedup(triples):
    seen = set()
    out = []
    for t in triples:
        if t[0] not in seen:
            seen.add(t[0])
            out.append(t)
    return out


def _vtext(v):
    from .unparse import value_text
    return value_text(v)
