import io

import networkx as nx
import pytest

from oracles import parse_aut, simulate, simulate_adder
from pamc import corpus
from pamc.checker import RunConfig, explore_spec, load_spec
from pamc.errors import StateLimitExceeded
from pamc.lts import aut_text, deadlock_states, export_aut
from pamc.semantics import label_text

# (states, transitions, deadlocks), frozen after agreeing with the simulators
GOLDEN = {
    "mutex_naive": (25, 44, 0),
    "mutex_improved": (16, 24, 1),
    "dekker": (114, 206, 0),
    "peterson": (32, 54, 0),
    "peterson_bad_init": (35, 59, 0),
    "adder": (4, 7, 0),
}


def lts_of(model):
    return explore_spec(load_spec(corpus.model_text(model)))


@pytest.mark.parametrize("model", sorted(GOLDEN))
def test_golden_counts(model):
    lts = lts_of(model)
    assert (lts.state_count, lts.transition_count, len(lts.deadlocks)) == GOLDEN[model]


def _digraph(n, edges):
    g = nx.MultiDiGraph()
    g.add_nodes_from(range(n))
    g.nodes[0]["init"] = True
    for src, lab, dst in edges:
        g.add_edge(src, dst, label=lab)
    return g


@pytest.mark.parametrize("model", sorted(GOLDEN))
def test_isomorphic_to_simulator(model):
    states, edges = simulate_adder() if model == "adder" else simulate(model)
    lts = lts_of(model)
    mine = _digraph(lts.state_count, [(s, label_text(l), d) for s, l, d in lts.transitions])
    theirs = _digraph(len(states), edges)
    assert nx.is_isomorphic(
        mine, theirs,
        node_match=lambda a, b: a.get("init") == b.get("init"),
        edge_match=lambda a, b: sorted(e["label"] for e in a.values())
        == sorted(e["label"] for e in b.values()))


def test_init_delta():
    lts = explore_spec(load_spec("init delta;"))
    assert aut_text(lts) == "des (0,0,1)\n"
    assert deadlock_states(lts) == {0}


def test_improved_reports_deadlock():
    lts = lts_of("mutex_improved")
    (dead,) = lts.deadlocks
    assert lts.successors[dead] == []


@pytest.mark.parametrize("model", sorted(GOLDEN))
def test_aut_is_well_formed(model):
    lts = lts_of(model)
    init, edges, n = parse_aut(aut_text(lts))
    assert (init, len(edges), n) == (0, lts.transition_count, lts.state_count)
    assert {d for _, _, d in edges} | {0} == set(range(n))


def test_aut_parser_rejects_garbage():
    for bad in ["", "des (0,1,1)\n", 'des (0,1,1)\n(0,"a",3)\n', "hello\n"]:
        with pytest.raises(ValueError):
            parse_aut(bad)


def test_export_to_binary_and_text_streams():
    lts = lts_of("adder")
    b, t = io.BytesIO(), io.StringIO()
    export_aut(lts, b)
    export_aut(lts, t)
    assert b.getvalue().decode() == t.getvalue() == aut_text(lts)


def test_exploration_is_deterministic():
    assert aut_text(lts_of("dekker")) == aut_text(lts_of("dekker"))


def test_breadth_first_numbering():
    lts = lts_of("peterson")
    first_seen = [0]
    seen = {0}
    for src, _, dst in lts.transitions:
        if dst not in seen:
            seen.add(dst)
            first_seen.append(dst)
    assert first_seen == list(range(lts.state_count))


def test_state_limit():
    spec = load_spec(corpus.model_text("dekker"))
    with pytest.raises(StateLimitExceeded):
        explore_spec(spec, RunConfig(state_limit=50))


def test_quant_bound_widens_sums():
    spec = load_spec(corpus.model_text("adder"))
    lts = explore_spec(spec, RunConfig(quant_bound=3))
    _, edges = simulate_adder(values=(0, 1, 2, 3))
    assert lts.transition_count == len(edges)
