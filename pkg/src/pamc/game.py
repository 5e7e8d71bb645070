"""Parity games and a recursive (Zielonka) solver with positional strategies.

Convention: the highest priority occurring infinitely often decides a play;
even means the Verifier (player 0) wins, odd means the Refuter (player 1).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

VERIFIER, REFUTER = 0, 1
PLAYER_NAMES = ("verifier", "refuter")


@dataclass(frozen=True)
class ParityGame:
    owner: tuple          # per vertex: VERIFIER or REFUTER
    priority: tuple       # per vertex: natural number
    succ: tuple           # per vertex: tuple of successor ids
    init: int = 0
    # optional annotations used for evidence extraction and debugging
    edge_labels: tuple = field(default=(), compare=False)   # parallel to succ
    # per edge, a tuple ordering equally good successors (smaller first)
    edge_rank: tuple = field(default=(), compare=False)
    state: tuple = field(default=(), compare=False)         # LTS state index or None
    desc: tuple = field(default=(), compare=False)

    def __post_init__(self):
        n = len(self.owner)
        if len(self.priority) != n or len(self.succ) != n:
            raise ValueError("owner, priority and succ must have equal length")
        for v, out in enumerate(self.succ):
            if not out:
                raise ValueError(f"vertex {v} has no successor")
            for w in out:
                if not 0 <= w < n:
                    raise ValueError(f"edge {v} -> {w} leaves the game")

    @property
    def size(self) -> int:
        return len(self.owner)

    def rank(self, v, w) -> tuple:
        if not self.edge_rank:
            return ()
        return self.edge_rank[v][self.succ[v].index(w)]

    def preferred(self, v, candidates, layer=None):
        """Tie-break: least (layer, edge rank, id) among ``candidates``."""
        if layer is None:
            return min(candidates, key=lambda u: (self.rank(v, u), u))
        return min(candidates, key=lambda u: (layer[u], self.rank(v, u), u))

    def predecessors(self):
        pred = [[] for _ in range(self.size)]
        for v, out in enumerate(self.succ):
            for w in out:
                pred[w].append(v)
        return pred

    def dump(self) -> str:
        """Line-based text form: ``id owner priority succ,succ,...``.

        The first line is ``parity <n> init <id>``; an optional trailing
        ``# description`` names the (state, subformula) pair of the vertex.
        """
        lines = [f"parity {self.size} init {self.init}"]
        for v in range(self.size):
            line = f"{v} {PLAYER_NAMES[self.owner[v]]} {self.priority[v]} " \
                   + ",".join(str(w) for w in self.succ[v])
            if self.desc:
                line += f" # {self.desc[v]}"
            lines.append(line)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Solution:
    winner: tuple      # per vertex: VERIFIER or REFUTER
    strategy: dict     # vertex -> successor, for vertices owned by their winner

    def region(self, player) -> frozenset:
        return frozenset(v for v, w in enumerate(self.winner) if w == player)


# -- solver -----------------------------------------------------------------

def _attractor(game, pred, subgame, target, player, strategy):
    """Vertices of ``subgame`` from which ``player`` forces reaching ``target``.

    Breadth-first layering; ``strategy`` receives, for each attracted vertex
    of ``player``, the successor of least (layer, edge rank, id) among
    earlier layers.
    """
    layer = {v: 0 for v in target}
    count = {}
    frontier = sorted(target)
    k = 0
    while frontier:
        k += 1
        nxt = []
        for w in frontier:
            for v in pred[w]:
                if v not in subgame or v in layer:
                    continue
                if game.owner[v] == player:
                    layer[v] = k
                    strategy[v] = game.preferred(
                        v, [u for u in game.succ[v] if layer.get(u, k) < k], layer)
                    nxt.append(v)
                else:
                    if v not in count:
                        count[v] = sum(1 for u in game.succ[v] if u in subgame)
                    count[v] -= 1
                    if count[v] == 0:
                        layer[v] = k
                        nxt.append(v)
        frontier = sorted(nxt)
    return set(layer)


def _zielonka(game, pred, subgame, strategy):
    """Return (W0, W1) for the subgame; fills ``strategy`` for winners."""
    if not subgame:
        return set(), set()
    d = max(game.priority[v] for v in subgame)
    player = d % 2
    opponent = 1 - player
    top = {v for v in subgame if game.priority[v] == d}
    local = {}
    a = _attractor(game, pred, subgame, top, player, local)
    rest = subgame - a
    sub_strategy = {}
    w = _zielonka(game, pred, rest, sub_strategy)
    if not w[opponent]:
        # player wins everything; on top vertices any move staying inside works
        for v in top:
            if game.owner[v] == player:
                local[v] = game.preferred(v, [u for u in game.succ[v] if u in subgame])
        for v in rest:
            if game.owner[v] == player and v in sub_strategy:
                local[v] = sub_strategy[v]
        strategy.update(local)
        win = [set(), set()]
        win[player] = set(subgame)
        return win[0], win[1]
    opp_strategy = {}
    b = _attractor(game, pred, subgame, w[opponent], opponent, opp_strategy)
    for v in w[opponent]:
        if game.owner[v] == opponent and v in sub_strategy:
            opp_strategy[v] = sub_strategy[v]
    inner = {}
    w2 = _zielonka(game, pred, subgame - b, inner)
    strategy.update(inner)
    strategy.update(opp_strategy)
    win = [set(w2[0]), set(w2[1])]
    win[opponent] |= b
    return win[0], win[1]


def solve(game: ParityGame) -> Solution:
    pred = game.predecessors()
    strategy = {}
    limit = _raise_recursion(game.size)
    try:
        w0, w1 = _zielonka(game, pred, set(range(game.size)), strategy)
    finally:
        limit()
    winner = tuple(VERIFIER if v in w0 else REFUTER for v in range(game.size))
    strat = {v: strategy[v] for v in sorted(strategy) if game.owner[v] == winner[v]}
    return Solution(winner, strat)


def _raise_recursion(n):
    import sys
    old = sys.getrecursionlimit()
    if 4 * n + 1000 > old:
        sys.setrecursionlimit(4 * n + 1000)
    return lambda: sys.setrecursionlimit(old)


# -- independent check --------------------------------------------------------

def verify_solution(game: ParityGame, sol: Solution) -> bool:
    """Re-check a solution by cycle analysis of the strategy-restricted graphs.

    For each player p: every p-owned vertex won by p has a strategy edge into
    p's region, every opponent vertex won by p has all edges into p's region,
    and no cycle of the restricted graph inside p's region has a maximal
    priority of the opponent's parity.
    """
    n = game.size
    if len(sol.winner) != n:
        return False
    for player in (VERIFIER, REFUTER):
        region = sol.region(player)
        edges = {}
        for v in region:
            if game.owner[v] == player:
                w = sol.strategy.get(v)
                if w is None or w not in game.succ[v] or w not in region:
                    return False
                edges[v] = (w,)
            else:
                if any(w not in region for w in game.succ[v]):
                    return False
                edges[v] = game.succ[v]
        if _has_bad_cycle(game, region, edges, 1 - player):
            return False
    return True


def _has_bad_cycle(game, region, edges, bad_parity):
    """Is there a cycle whose maximal priority has ``bad_parity``?"""
    for p in sorted({game.priority[v] for v in region}):
        if p % 2 != bad_parity:
            continue
        allowed = {v for v in region if game.priority[v] <= p}
        for comp in _sccs(allowed, edges):
            if not any(game.priority[v] == p for v in comp):
                continue
            if len(comp) > 1 or any(v in edges[v] for v in comp):
                return True
    return False


def _sccs(nodes, edges):
    """Strongly connected components of ``edges`` restricted to ``nodes``
    (iterative Tarjan)."""
    index, low, on_stack = {}, {}, set()
    stack, out = [], []
    counter = 0
    for root in sorted(nodes):
        if root in index:
            continue
        work = [(root, iter(sorted(w for w in edges[root] if w in nodes)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(u for u in edges[w] if u in nodes))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def attractor_distances(game: ParityGame, region, target, player):
    """Layer index of each vertex in ``player``'s attractor to ``target``
    within ``region`` (used for stable tie-breaking)."""
    pred = game.predecessors()
    dist = {v: 0 for v in target}
    count = {}
    queue = deque(sorted(target))
    while queue:
        w = queue.popleft()
        for v in pred[w]:
            if v not in region or v in dist:
                continue
            if game.owner[v] == player:
                dist[v] = dist[w] + 1
                queue.append(v)
            else:
                if v not in count:
                    count[v] = sum(1 for u in game.succ[v] if u in region)
                count[v] -= 1
                if count[v] == 0:
                    dist[v] = dist[w] + 1
                    queue.append(v)
    return dist
