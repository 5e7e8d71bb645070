"""Reachable state space exploration and Aldebaran (.aut) export."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import StateLimitExceeded
from .semantics import Semantics, SemanticsConfig, label_text


@dataclass(frozen=True)
class Lts:
    states: tuple            # canonical state terms, index 0 is initial
    transitions: tuple       # (src, label, dst) in exploration order
    state_texts: tuple = field(default=(), compare=False)

    @property
    def state_count(self):
        return len(self.states)

    @property
    def transition_count(self):
        return len(self.transitions)

    @property
    def successors(self):
        """Per-state list of ``(label, dst)``, cached on first use."""
        succ = self.__dict__.get("_succ")
        if succ is None:
            succ = [[] for _ in self.states]
            for src, lab, dst in self.transitions:
                succ[src].append((lab, dst))
            object.__setattr__(self, "_succ", succ)
        return succ

    @property
    def deadlocks(self) -> frozenset:
        return deadlock_states(self)


def explore(spec, cfg: SemanticsConfig | None = None, state_limit: int = 1_000_000,
            semantics: Semantics | None = None) -> Lts:
    sem = semantics or Semantics(spec, cfg)
    init = sem.initial_state()
    index = {init: 0}
    states = [init]
    transitions = []
    queue = deque([init])
    while queue:
        s = queue.popleft()
        src = index[s]
        for lab, t in sem.step(s):
            dst = index.get(t)
            if dst is None:
                if len(states) >= state_limit:
                    raise StateLimitExceeded(f"more than {state_limit} states")
                dst = index[t] = len(states)
                states.append(t)
                queue.append(t)
            transitions.append((src, lab, dst))
    return Lts(tuple(states), tuple(transitions), tuple(sem.state_text(s) for s in states))


def deadlock_states(lts: Lts) -> frozenset:
    has_out = {src for src, _, _ in lts.transitions}
    return frozenset(i for i in range(lts.state_count) if i not in has_out)


def aut_text(lts: Lts) -> str:
    lines = [f"des (0,{lts.transition_count},{lts.state_count})"]
    lines.extend(f'({src},"{label_text(lab)}",{dst})' for src, lab, dst in lts.transitions)
    return "\n".join(lines) + "\n"


def export_aut(lts: Lts, sink) -> None:
    """Write ``lts`` to a binary or text stream in Aldebaran format."""
    text = aut_text(lts)
    try:
        sink.write(text.encode("utf-8"))
    except TypeError:
        sink.write(text)
