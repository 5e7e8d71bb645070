import networkx as nx
import pytest
from hypothesis import given, strategies as st

from pamc import ast as A
from pamc import corpus
from pamc.checker import explore_spec, load_spec
from pamc.errors import UnguardedRecursion
from pamc.semantics import Semantics, apply_comm, label_text, make_label, moved_components

FLAG = """
act set_flag_r, get_flag_s: Nat # Bool;
proc Flag(i: Nat, b: Bool) =
       sum b': Bool. set_flag_r(i, b'). Flag(i, b')
     + get_flag_s(i, b). Flag(i, b);
"""


def steps(spec_text, state=None):
    sem = Semantics(load_spec(spec_text))
    s = sem.initial_state() if state is None else state
    return [(label_text(lab), sem.state_text(t)) for lab, t in sem.step(s)]


def test_flag_steps():
    got = steps(FLAG + "init Flag(0, false);")
    assert got == [("get_flag_s(0,false)", "Flag(0,false)"),
                   ("set_flag_r(0,false)", "Flag(0,false)"),
                   ("set_flag_r(0,true)", "Flag(0,true)")]


def test_naive_initial_steps():
    sem = Semantics(load_spec(corpus.model_text("mutex_naive")))
    labels = [label_text(lab) for lab, _ in sem.step(sem.initial_state())]
    assert labels == ["get_flag(0,false)", "get_flag(1,false)"]


def test_multi_action_prefix_and_sync():
    got = steps("act a, b, c; init a|b.delta || c.delta;")
    assert [lab for lab, _ in got] == ["a|b", "a|b|c", "c"]


def test_choice_sum_and_condition():
    got = steps("act a: Nat; init sum n: Nat. (n > 0) -> a(n) <> a(7);")
    assert sorted(lab for lab, _ in got) == ["a(1)", "a(7)"]


def test_deadlock_has_no_steps():
    assert steps("init delta;") == []


def test_unguarded_recursion_is_reported():
    with pytest.raises(UnguardedRecursion):
        explore_spec(load_spec("proc P = P; init P;"))


def test_comm_merges_pairs():
    rules = [A.CommRule("s", "r", "c")]
    lab = make_label([("r", (1,)), ("s", (1,)), ("x", ())])
    assert label_text(apply_comm(lab, rules)) == "c(1)|x"
    mismatch = make_label([("r", (1,)), ("s", (2,))])
    assert label_text(apply_comm(mismatch, rules)) == "r(1)|s(2)"
    bools = make_label([("r", (1,)), ("s", (True,))])
    assert apply_comm(bools, rules) == bools


_inst = st.tuples(st.sampled_from(["s", "r", "x"]), st.tuples(st.integers(0, 2)))


@given(st.lists(_inst, max_size=6))
def test_comm_is_idempotent(insts):
    rules = [A.CommRule("s", "r", "c")]
    once = apply_comm(make_label(insts), rules)
    assert apply_comm(once, rules) == once
    names = [n for n, _ in once]
    pairs = {v for n, v in once if n == "s"} & {v for n, v in once if n == "r"}
    assert not pairs
    assert len(once) == len(insts) - names.count("c")


@pytest.mark.parametrize("model", ["mutex_naive", "dekker", "peterson"])
def test_allow_soundness(model):
    spec = load_spec(corpus.model_text(model))
    allowed = {tuple(sorted(names)) for names in spec.init.sets}
    lts = explore_spec(spec)
    for _, lab, _ in lts.transitions:
        assert tuple(sorted(n for n, _ in lab)) in allowed


def _graph(lts):
    g = nx.MultiDiGraph()
    g.add_nodes_from(range(lts.state_count))
    for src, lab, dst in lts.transitions:
        g.add_edge(src, dst, label=label_text(lab))
    g.nodes[0]["init"] = True
    return g


def test_parallel_order_does_not_matter():
    text = corpus.model_text("peterson")
    swapped = text.replace("Peterson(0) || Peterson(1)", "Peterson(1) || Peterson(0)")
    assert swapped != text
    a, b = (explore_spec(load_spec(t)) for t in (text, swapped))
    assert nx.is_isomorphic(_graph(a), _graph(b),
                            node_match=lambda x, y: x.get("init") == y.get("init"),
                            edge_match=lambda x, y: sorted(e["label"] for e in x.values())
                            == sorted(e["label"] for e in y.values()))


def test_moved_components():
    a = ("allow", "k", ("par", (("delta",), ("call", "P", (0,)))))
    b = ("allow", "k", ("par", (("delta",), ("call", "P", (1,)))))
    assert moved_components(a, b) == (1,)
    assert moved_components(a, a) == ()
    assert moved_components(("call", "P", (0,)), ("call", "P", (1,))) == (0,)


def test_growing_unguarded_recursion_hits_the_unfold_limit():
    with pytest.raises(UnguardedRecursion):
        explore_spec(load_spec("proc P(n: Nat) = P(n + 1); init P(0);"))


def test_guarded_recursion_through_parallel_copies():
    lts = explore_spec(load_spec("act a; proc P = a.P; init P || P;"))
    assert (lts.state_count, lts.transition_count) == (1, 2)
