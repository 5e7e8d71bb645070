"""Structural operational semantics of process terms.

States are hashable tuples:

* ``("delta",)`` - the deadlock
* ``("call", name, values)`` - a process instance ``P(v1, ..., vn)``
* ``("at", node_key, env_key)`` - a residual subterm of a process body with
  its free data variables instantiated
* ``("par", (s1, ..., sn))`` - flattened parallel composition
* ``("comm", node_key, s)`` / ``("allow", node_key, s)``

Transition labels (multi-actions) are tuples of ``(name, values)`` sorted by
their canonical text.
"""
from __future__ import annotations

import sys
from contextlib import contextmanager
from dataclasses import dataclass

from . import ast as A
from .data import Env, QuantConfig, enumerate_sort, eval_expr
from .errors import UnguardedRecursion
from .unparse import value_text

DELTA = ("delta",)


def instance_text(inst) -> str:
    name, values = inst
    if not values:
        return name
    return f"{name}({','.join(value_text(v) for v in values)})"


def make_label(instances) -> tuple:
    return tuple(sorted(instances, key=instance_text))


def label_text(label) -> str:
    return "|".join(instance_text(i) for i in label)


@dataclass(frozen=True)
class SemanticsConfig:
    quant: QuantConfig = QuantConfig()
    unfold_limit: int = 1_000


@contextmanager
def _recursion_room(depth):
    old = sys.getrecursionlimit()
    want = depth * 6 + 2000
    if want > old:
        sys.setrecursionlimit(want)
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


class Semantics:
    """Transition function of a type-checked model."""

    def __init__(self, spec: A.Spec, cfg: SemanticsConfig | None = None):
        self.spec = spec
        self.cfg = cfg or SemanticsConfig()
        self.functions = {f.name: f for f in spec.functions}
        self.procs = {p.name: p for p in spec.processes}
        self._key = {}     # id(node) -> key
        self._node = {}    # key -> node
        self._free = {}    # key -> sorted free data variables
        for p in spec.processes:
            self._index(p.body, p.name, [0])
        self._index(spec.init, "init", [0])
        self._cache = {}

    # -- node bookkeeping --
    def _index(self, node, owner, counter):
        key = f"{owner}@{counter[0]}"
        counter[0] += 1
        self._key[id(node)] = key
        self._node[key] = node
        for child in _children(node):
            self._index(child, owner, counter)
        self._free[key] = tuple(sorted(_free_vars(node)))

    def initial_state(self):
        return self.normalize(self.spec.init, Env())

    def normalize(self, node, env: Env):
        """Canonical state for the closed term ``node`` under ``env``."""
        if isinstance(node, A.Deadlock):
            return DELTA
        if isinstance(node, A.ProcCall):
            return ("call", node.name, tuple(eval_expr(a, env, self.functions) for a in node.args))
        if isinstance(node, A.IfThenElse):
            # a closed condition has no behaviour of its own: keep the branch
            branch = node.then if eval_expr(node.cond, env, self.functions) else node.else_
            return self.normalize(branch, env)
        if isinstance(node, A.Parallel):
            parts = []
            for side in (node.left, node.right):
                s = self.normalize(side, env)
                parts.extend(s[1] if s[0] == "par" else (s,))
            return ("par", tuple(parts))
        key = self._key[id(node)]
        if isinstance(node, (A.Comm, A.Allow)):
            tag = "comm" if isinstance(node, A.Comm) else "allow"
            return (tag, key, self.normalize(node.operand, env))
        return ("at", key, env.restrict(self._free[key]))

    def state_text(self, s) -> str:
        tag = s[0]
        if tag == "delta":
            return "delta"
        if tag == "call":
            return instance_text((s[1], s[2])) if s[2] else f"{s[1]}()"
        if tag == "at":
            env = ",".join(f"{n}={value_text(v)}" for n, v in s[2])
            return f"{s[1]}[{env}]"
        if tag == "par":
            return "(" + " || ".join(self.state_text(c) for c in s[1]) + ")"
        return f"{tag}@{s[1]}({self.state_text(s[2])})"

    # -- transitions --
    def step(self, s) -> list:
        """Sorted list of ``(label, target)`` pairs."""
        cached = self._cache.get(s)
        if cached is None:
            with _recursion_room(self.cfg.unfold_limit):
                out = self._step_state(s, None, frozenset())
            cached = sorted(set(out), key=lambda lt: (label_text(lt[0]), self.state_text(lt[1])))
            self._cache[s] = cached
        return cached

    def _step_state(self, s, limit, path):
        tag = s[0]
        if tag == "delta":
            return []
        if tag == "call":
            if s in path or len(path) >= self.cfg.unfold_limit:
                raise UnguardedRecursion(
                    f"{s[1]!r} can be unfolded {'forever' if s in path else len(path)} "
                    "times without an action", self.procs[s[1]].span)
            decl = self.procs[s[1]]
            env = Env({p.name: v for p, v in zip(decl.params, s[2])})
            return self._step_expr(decl.body, env, limit, path | {s})
        if tag == "at":
            return self._step_expr(self._node[s[1]], Env(dict(s[2])), limit, path)
        if tag == "par":
            return self._step_par(s[1], limit, path)
        node = self._node[s[1]]
        if tag == "allow":
            allowed = {tuple(sorted(names)) for names in node.sets}
            inner_limit = max(len(names) for names in node.sets)
            if limit is not None:
                inner_limit = min(inner_limit, limit)
            inner = self._step_state(s[2], inner_limit, path)
            return [(lab, (tag, s[1], t)) for lab, t in inner
                    if tuple(sorted(n for n, _ in lab)) in allowed]
        # comm
        inner_limit = None if limit is None else 2 * limit
        inner = self._step_state(s[2], inner_limit, path)
        out = []
        for lab, t in inner:
            lab = apply_comm(lab, node.rules)
            if limit is None or len(lab) <= limit:
                out.append((lab, (tag, s[1], t)))
        return out

    def _step_par(self, comps, limit, path):
        per = [self._step_state(c, limit, path) for c in comps]
        # partial combinations: (label instances, successor components, moved?)
        combos = [((), (), False)]
        for comp, steps in zip(comps, per):
            nxt = []
            for inst, succ, moved in combos:
                nxt.append((inst, succ + (comp,), moved))
                for lab, t in steps:
                    if limit is not None and len(inst) + len(lab) > limit:
                        continue
                    nxt.append((inst + lab, succ + (t,), True))
            combos = nxt
        out = []
        for inst, succ, moved in combos:
            if not moved:
                continue
            flat = []
            for c in succ:
                flat.extend(c[1] if c[0] == "par" else (c,))
            out.append((make_label(inst), ("par", tuple(flat))))
        return out

    def _step_expr(self, node, env, limit, path):
        if isinstance(node, A.Prefix):
            lab = make_label((a.name, tuple(eval_expr(x, env, self.functions) for x in a.args))
                             for a in node.actions)
            if limit is not None and len(lab) > limit:
                return []
            return [(lab, self.normalize(node.cont, env))]
        if isinstance(node, A.Choice):
            return (self._step_expr(node.left, env, limit, path)
                    + self._step_expr(node.right, env, limit, path))
        if isinstance(node, A.Sum):
            out = []
            for v in enumerate_sort(node.var_sort, self.cfg.quant):
                out.extend(self._step_expr(node.body, env.extend(**{node.var: v}), limit, path))
            return out
        if isinstance(node, A.IfThenElse):
            branch = node.then if eval_expr(node.cond, env, self.functions) else node.else_
            return self._step_expr(branch, env, limit, path)
        if isinstance(node, A.Deadlock):
            return []
        return self._step_state(self.normalize(node, env), limit, path)


def moved_components(src, dst) -> tuple:
    """Positions of the parallel components that differ between two states.

    Operator wrappers around the outermost parallel composition are looked
    through; for a state without parallel structure the result is ``(0,)``
    when the states differ.
    """
    while src[0] in ("comm", "allow") and dst[0] == src[0]:
        src, dst = src[2], dst[2]
    if src[0] == "par" and dst[0] == "par" and len(src[1]) == len(dst[1]):
        return tuple(k for k, (a, b) in enumerate(zip(src[1], dst[1])) if a != b)
    return () if src == dst else (0,)


def apply_comm(label, rules) -> tuple:
    """Replace matching send/receive pairs by their result, as often as possible."""
    pairs = {}
    for r in rules:
        pairs[r.send] = (r.receive, r.result)
        pairs[r.receive] = (r.send, r.result)
    insts = list(label)
    changed = True
    while changed:
        changed = False
        for i, (n1, v1) in enumerate(insts):
            if n1 not in pairs:
                continue
            partner, result = pairs[n1]
            for j in range(i + 1, len(insts)):
                n2, v2 = insts[j]
                if n2 == partner and _same_values(v1, v2):
                    del insts[j]
                    insts[i] = (result, v1)
                    changed = True
                    break
            if changed:
                break
    return make_label(insts)


def _same_values(a, b):
    return len(a) == len(b) and all(type(x) is type(y) and x == y for x, y in zip(a, b))


def _children(node):
    if isinstance(node, A.Prefix):
        return [node.cont]
    if isinstance(node, (A.Choice, A.Parallel)):
        return [node.left, node.right]
    if isinstance(node, A.Sum):
        return [node.body]
    if isinstance(node, A.IfThenElse):
        return [node.then, node.else_]
    if isinstance(node, (A.Comm, A.Allow)):
        return [node.operand]
    return []


def expr_vars(e) -> set:
    if isinstance(e, A.Var):
        return {e.name}
    if isinstance(e, A.Unary):
        return expr_vars(e.arg)
    if isinstance(e, A.Binary):
        return expr_vars(e.left) | expr_vars(e.right)
    if isinstance(e, A.Call):
        out = set()
        for a in e.args:
            out |= expr_vars(a)
        return out
    return set()


def _free_vars(node) -> set:
    if isinstance(node, A.Prefix):
        out = _free_vars(node.cont)
        for a in node.actions:
            for x in a.args:
                out |= expr_vars(x)
        return out
    if isinstance(node, A.ProcCall):
        out = set()
        for x in node.args:
            out |= expr_vars(x)
        return out
    if isinstance(node, A.Sum):
        return _free_vars(node.body) - {node.var}
    if isinstance(node, A.IfThenElse):
        return expr_vars(node.cond) | _free_vars(node.then) | _free_vars(node.else_)
    out = set()
    for c in _children(node):
        out |= _free_vars(c)
    return out


# -- action formula matching ------------------------------------------------

def match(af: A.ActionFormula, label, env: Env, functions=None) -> bool:
    return match_bindings(af, label, env, functions) is not None


def match_bindings(af, label, env: Env, functions=None):
    """Bindings of action-formula binders that make ``af`` match, else None."""
    if isinstance(af, A.AnyAction):
        return {}
    if isinstance(af, A.ActMatch):
        want = sorted(instance_text((a.name, tuple(eval_expr(x, env, functions) for x in a.args)))
                      for a in af.actions)
        return {} if want == sorted(instance_text(i) for i in label) else None
    if isinstance(af, A.ActNot):
        return {} if match_bindings(af.arg, label, env, functions) is None else None
    if isinstance(af, A.ActAnd):
        left = match_bindings(af.left, label, env, functions)
        if left is None:
            return None
        right = match_bindings(af.right, label, env, functions)
        return None if right is None else {**left, **right}
    if isinstance(af, A.ActOr):
        left = match_bindings(af.left, label, env, functions)
        return left if left is not None else match_bindings(af.right, label, env, functions)
    if isinstance(af, A.ActExists):
        for v in label_candidates(af.var_sort, label):
            inner = match_bindings(af.body, label, env.extend(**{af.var: v}), functions)
            if inner is not None:
                return {af.var: v, **inner}
        return None
    raise TypeError(f"not an action formula: {af!r}")


def label_candidates(sort: A.Sort, label) -> list:
    """Values an action-formula binder can take: those occurring in the label."""
    if sort is A.Sort.BOOL:
        return [False, True]
    vals = {v for _, vs in label for v in vs if not isinstance(v, bool)}
    if sort is A.Sort.NAT:
        vals = {v for v in vals if v >= 0}
    return sorted(vals)
