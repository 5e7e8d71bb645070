import pytest
from hypothesis import assume, given, settings, strategies as st

from pamc import corpus
from pamc.errors import (NonMonotoneFixpoint, ParseError, TypeCheckError,
                         UnboundFixpointVariable, UnknownName)
from pamc.checker import load_formula, load_spec
from pamc.data import Env, eval_expr
from pamc.lexer import tokenize
from pamc.parser import parse_expr, parse_formula, parse_spec
from pamc.unparse import unparse

MODELS = corpus.model_names()
PROPS = corpus.property_names()


@pytest.mark.parametrize("name", MODELS)
def test_model_round_trip(name):
    spec = parse_spec(corpus.model_text(name))
    text = unparse(spec)
    again = parse_spec(text)
    assert again == spec
    assert unparse(again) == text


@pytest.mark.parametrize("name", PROPS)
def test_formula_round_trip(name):
    f = parse_formula(corpus.property_text(name), consts={"B": 1, "M": 3})
    text = unparse(f)
    assert parse_formula(text) == f
    assert unparse(parse_formula(text)) == text


def test_every_corpus_file_typechecks():
    specs = {m: load_spec(corpus.model_text(m)) for m in MODELS}
    for p in PROPS:
        target = "adder" if p.startswith("adder") else "peterson"
        load_formula(corpus.property_text(p), specs[target], consts={"B": 1, "M": 3})


def _code_positions(text):
    """(offset, line, column) of every character outside comments."""
    out, line, col, in_comment = [], 1, 1, False
    for k, ch in enumerate(text):
        if ch == "%":
            in_comment = True
        if not in_comment:
            out.append((k, line, col))
        if ch == "\n":
            line, col, in_comment = line + 1, 1, False
        else:
            col += 1
    return out


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(MODELS), st.data())
def test_injected_character_is_reported_where_it_is(name, data):
    text = corpus.model_text(name)
    offset, line, col = data.draw(st.sampled_from(_code_positions(text)))
    bad = text[:offset] + "@" + text[offset:]
    with pytest.raises(ParseError) as info:
        parse_spec(bad, "m.pmx")
    span = info.value.span
    assert (span.file, span.line, span.column) == ("m.pmx", line, col)


@pytest.mark.parametrize("src, line, col", [
    ("act a; init a + ;", 1, 17),
    ("act a;\ninit a. ;", 2, 9),
    ("act a;\n\n  init (a;", 3, 10),
    ("init tau;", 1, 6),
])
def test_parse_error_positions(src, line, col):
    with pytest.raises(ParseError) as info:
        parse_spec(src)
    assert (info.value.span.line, info.value.span.column) == (line, col)


def test_parse_error_lists_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse_formula("true &&")
    assert {"true", "mu", "["} <= info.value.expected


def test_lexer_positions():
    toks = tokenize("ab\n  cd % x\n e", "f")
    pos = [(t.text, t.span.line, t.span.column) for t in toks if t.text in ("ab", "cd", "e")]
    assert pos == [("ab", 1, 1), ("cd", 2, 3), ("e", 3, 2)]


def test_odd_negation_is_rejected():
    with pytest.raises(NonMonotoneFixpoint):
        parse_formula("mu X.!X")
    with pytest.raises(NonMonotoneFixpoint):
        parse_formula("nu X. X => false")


def test_even_negation_is_accepted():
    f = parse_formula("mu X.![a]!X")
    assert unparse(f) == "(mu X. ![(a)]!X)"
    parse_formula("nu X. (X => false) => false")


def test_unbound_fixpoint_variable():
    with pytest.raises(UnboundFixpointVariable):
        parse_formula("[a]!X")


def test_fixpoint_arity():
    with pytest.raises(ParseError):
        parse_formula("mu X(n:Nat=0). X(1,2)")


def test_quantifier_body_extends_right():
    f = parse_formula("forall i:Nat. val(i <= 1) => true")
    assert unparse(f) == "(forall i:Nat. (val((i <= 1)) => true))"


def test_constants_are_substituted():
    f = parse_formula("val(n <= B)", consts={"B": 2})
    assert "2" in unparse(f) and "B" not in unparse(f)
    bound = parse_formula("nu X(B:Nat = 0). val(B <= 1)", consts={"B": 7})
    assert "7" not in unparse(bound)


def test_unknown_action_and_type_errors():
    with pytest.raises(UnknownName):
        load_spec("init a.b;")
    with pytest.raises(TypeCheckError):
        load_spec("act a: Nat; init a(-1);")
    with pytest.raises(TypeCheckError):
        load_spec("act a: Bool; init a(1);")


def test_bare_action_and_call_with_defaults():
    spec = load_spec("act a: Nat; proc P(n: Nat) = a(n). P(); init P(3) || a(1);")
    assert "P(n)" in unparse(spec)


# random data expressions: print, parse back, same value

_leaf = st.one_of(st.integers(0, 20).map(str), st.sampled_from(["x", "y"]))


def _combine(children):
    return st.one_of(
        st.tuples(children, st.sampled_from(["+", "-"]), children).map(
            lambda t: f"({t[0]} {t[1]} {t[2]})"),
        children.map(lambda c: f"(-{c})"),
    )


_arith = st.recursive(_leaf, _combine, max_leaves=12)


@settings(max_examples=200, deadline=None)
@given(_arith, _arith, st.sampled_from(["==", "!=", "<", "<=", ">", ">="]))
def test_expression_print_parse(left, right, op):
    src = f"{left} {op} {right}"
    e = parse_expr(src)
    again = parse_expr(unparse(e))
    assert unparse(again) == unparse(e)
    env = Env({"x": 3, "y": 11})
    assert eval_expr(again, env) == eval_expr(e, env)
    want = eval(src, {}, {"x": 3, "y": 11})
    assume(isinstance(want, bool))
    assert eval_expr(e, env) == want
