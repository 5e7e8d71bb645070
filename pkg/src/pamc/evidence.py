"""Linear evidence (trace or lasso) read off a solved verification game."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import NoEvidence
from .game import REFUTER, VERIFIER, ParityGame, Solution
from .lts import Lts
from .semantics import label_text

TRACE, LASSO = "trace", "lasso"


@dataclass(frozen=True)
class Evidence:
    kind: str                  # TRACE or LASSO
    stem: tuple                # ((label, dst state), ...) starting in state 0
    cycle: tuple = ()          # nonempty iff kind == LASSO
    formula: str = ""
    verdict: str = "fails"
    note: str = field(default="", compare=False)

    @property
    def last_state(self) -> int:
        return self.stem[-1][1] if self.stem else 0

    def steps(self):
        """``(src, label, dst, part)`` for every step, stem first."""
        src = 0
        for part, moves in (("stem", self.stem), ("cycle", self.cycle)):
            for lab, dst in moves:
                yield src, lab, dst, part
                src = dst

    def labels(self) -> list[str]:
        return [label_text(lab) for lab, _ in self.stem + self.cycle]


def extract(game: ParityGame, sol: Solution, lts: Lts, formula: str = "") -> Evidence:
    """Follow the winner's strategy from the initial vertex.

    Vertices of the losing player take their preferred successor (see
    ``ParityGame.preferred``).  Only edges
    that follow an LTS transition contribute a step.  A finite play ends in a
    terminal vertex (trace); otherwise the first repeated vertex closes a
    lasso whose cycle starts at its first visit.

    Raises ``NoEvidence`` when the formula holds but the play meets a box or
    universal choice with several options, since a linear witness would not
    cover the other branches.
    """
    winner = sol.winner[game.init]
    verdict = "holds" if winner == VERIFIER else "fails"
    v = game.init
    seen = {}
    moves = []
    branching = None
    while True:
        if v in seen:
            k = seen[v]
            if k == len(moves):
                # the cycle repeats without moving in the LTS
                return Evidence(TRACE, tuple(moves), (), formula, verdict)
            ev = Evidence(LASSO, tuple(moves[:k]), tuple(moves[k:]), formula, verdict)
            break
        seen[v] = len(moves)
        out = game.succ[v]
        if game.owner[v] == sol.winner[v]:
            w = sol.strategy[v]
        else:
            w = game.preferred(v, out)
        if (verdict == "holds" and branching is None and game.owner[v] == REFUTER
                and len(out) > 1):
            branching = len(moves)
        step = game.edge_labels[v][out.index(w)] if game.edge_labels else None
        if step is not None:
            moves.append(step)
        if out == (v,):
            ev = Evidence(TRACE, tuple(moves), (), formula, verdict)
            break
        v = w
    if branching is not None:
        partial = Evidence(TRACE, ev.stem[:branching], (), formula, verdict,
                           note="a witness needs a tree; trace cut at the first branching")
        raise NoEvidence(partial.note, evidence=partial)
    return ev


def replay(ev: Evidence, lts: Lts) -> bool:
    """Does every step of ``ev`` exist in ``lts`` with correctly chained states?"""
    if ev.kind not in (TRACE, LASSO) or (ev.kind == LASSO) != bool(ev.cycle):
        return False
    succ = lts.successors
    for src, lab, dst, _ in ev.steps():
        if not 0 <= src < lts.state_count or (lab, dst) not in succ[src]:
            return False
    if ev.cycle and ev.cycle[-1][1] != ev.last_state:
        return False
    return True


def render(ev: Evidence, sink=None) -> str:
    """Text form: one multi-action per line, ``-- cycle --`` before the
    cycle of a lasso and a closing ``-- verdict: <holds|fails> --`` line."""
    lines = [label_text(lab) for lab, _ in ev.stem]
    if ev.kind == LASSO:
        lines.append("-- cycle --")
        lines.extend(label_text(lab) for lab, _ in ev.cycle)
    lines.append(f"-- verdict: {ev.verdict} --")
    text = "\n".join(lines) + "\n"
    if sink is not None:
        sink.write(text)
    return text


def render_machine(ev: Evidence, sink=None) -> str:
    """One JSON object per step: ``{"src", "label", "dst", "part"}``."""
    lines = [json.dumps({"src": src, "label": label_text(lab), "dst": dst, "part": part})
             for src, lab, dst, part in ev.steps()]
    lines.append(json.dumps({"verdict": ev.verdict, "kind": ev.kind}))
    text = "\n".join(lines) + "\n"
    if sink is not None:
        sink.write(text)
    return text
