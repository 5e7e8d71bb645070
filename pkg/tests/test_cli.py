import io
import json

import pytest

from oracles import parse_aut
from pamc import corpus
from pamc.cli import main, run_corpus


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def m(name):
    return str(corpus.model_path(name))


def p(name):
    return str(corpus.property_path(name))


def test_check_fails_with_trace(tmp_path):
    ev = tmp_path / "naive.txt"
    code, out, err = run("check", m("mutex_naive"), p("mutual_exclusion"), "--evidence", str(ev))
    assert (code, out) == (1, "fails\n")
    lines = ev.read_text().splitlines()
    assert len(lines) == 7 and lines[-1] == "-- verdict: fails --"
    assert "fails" not in err and "holds" not in err


def test_check_holds():
    assert run("check", m("dekker"), p("mutual_exclusion")) == (0, "holds\n", "")


def test_check_with_constant():
    args = ("check", m("peterson"), p("bounded_overtaking"))
    assert run(*args, "--const", "B=2")[0] == 0
    code, out, _ = run(*args, "--const", "B=1")
    assert code == 1 and out.startswith("fails\n") and out.endswith("-- verdict: fails --\n")


def test_machine_evidence():
    code, out, _ = run("check", m("mutex_improved"), p("always_eventually_request"), "--machine")
    recs = [json.loads(x) for x in out.splitlines()[1:]]
    assert code == 1 and recs[-1] == {"verdict": "fails", "kind": "trace"}
    assert [r["label"] for r in recs[:-1]] == ["set_flag(0,true)", "set_flag(1,true)"]


def test_dump_game(tmp_path):
    path = tmp_path / "game.txt"
    run("check", m("adder"), p("adder_bounded_total"), "--const", "M=4", "--dump-game", str(path))
    lines = path.read_text().splitlines()
    n = int(lines[0].split()[1])
    assert lines[0].startswith("parity ") and len(lines) == n + 1


def test_explore(tmp_path):
    aut = tmp_path / "x.aut"
    code, out, _ = run("explore", m("mutex_improved"), "--out", str(aut))
    assert code == 0
    assert out == "states: 16\ntransitions: 24\ndeadlocks: 1\n"
    init, edges, n = parse_aut(aut.read_text())
    assert (init, len(edges), n) == (0, 24, 16)


def test_explore_delta(tmp_path):
    model, aut = tmp_path / "d.pmx", tmp_path / "d.aut"
    model.write_text("init delta;\n")
    run("explore", str(model), "--out", str(aut))
    assert aut.read_text() == "des (0,0,1)\n"


@pytest.mark.parametrize("text", ["init tau;", "act a; init a +;", "init P;"])
def test_tool_errors_exit_2(tmp_path, text):
    model = tmp_path / "bad.pmx"
    model.write_text(text)
    code, out, err = run("explore", str(model))
    assert code == 2 and out == "" and err.startswith("error: ")
    assert "bad.pmx:1:" in err


def test_missing_file_and_bad_flags(tmp_path):
    assert run("check", str(tmp_path / "nope.pmx"), p("mutual_exclusion"))[0] == 2
    assert run("check", m("dekker"), p("mutual_exclusion"), "--const", "B")[0] == 2
    assert run("explore", m("dekker"), "--state-limit", "0")[0] == 2
    assert run("frobnicate")[0] == 2


def test_state_limit_is_a_tool_error():
    code, _, err = run("explore", m("dekker"), "--state-limit", "10")
    assert code == 2 and "more than 10 states" in err


def test_corpus_rows_match_expectations_except_known(runs):
    rows = run_corpus()
    assert len(rows) == sum(len(e.checks) for e in corpus.ENTRIES)
    for model, name, want, got, ok in rows:
        assert got.split()[0] == runs[model, name].verdict
        assert ok == (want == got)


def test_corpus_run_output(tmp_path):
    code, out, err = run("corpus", "run", "--out", str(tmp_path))
    rows = [line.split() for line in out.splitlines()[1:]]
    bad = [r for r in rows if r[-1] == "MISMATCH"]
    assert code == (1 if bad else 0)
    assert err.count("expected") == len(bad)
    assert sorted(f.name for f in tmp_path.glob("*.aut")) == sorted(
        f"{n}.aut" for n in corpus.model_names())
    assert (tmp_path / "dekker__eventual_access_fair.evidence").exists()


def test_bad_init_fails_request_without_cooperation(runs):
    assert runs["peterson_bad_init", "request_without_cooperation"].verdict == "fails"
    assert runs["peterson_bad_init", "request_without_cooperation"].evidence.labels()
