"""Expression grammar: parse/serialize round trips and error reporting."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jforge.errors import GrammarError
from jforge.grammar import parse, serialize


def test_precedence_and_unary():
    assert parse("1 + 2*3") == parse("7")
    assert parse("-p^2") == parse("0 - p^2")
    assert parse("(-p)^2") == parse("p^2")
    assert parse("2*p/2") == parse("p")
    assert parse("1 - (m + n)/2*eps") == parse("1 - eps*(m + n)/2")


def test_power_binds_tighter_than_division():
    assert parse("1/p^2") * parse("p^2") == parse("1")


def test_grammar_errors():
    for bad in ("", "p +", "2 **", "p^q", "(p", "p)", "1 @ 2", "p^-1^2"):
        with pytest.raises(GrammarError):
            parse(bad)


def test_serialize_examples_are_reparseable():
    for text in ("(p - 1)/p", "m*n - 2*k", "1", "0", "-m", "(q - p)/(q*p)"):
        f = parse(text)
        assert parse(serialize(f)) == f


@st.composite
def expr_tree(draw, depth=0):
    if depth >= 3 or draw(st.booleans()):
        leaf = draw(st.sampled_from(["p", "q", "m", "n", "k", "2", "3", "1/2"]))
        return leaf
    op = draw(st.sampled_from(["+", "-", "*"]))
    a = draw(expr_tree(depth=depth + 1))
    b = draw(expr_tree(depth=depth + 1))
    return f"({a} {op} {b})"


@given(expr_tree())
@settings(max_examples=80, deadline=None)
def test_roundtrip_is_identity(text):
    f = parse(text)
    assert parse(serialize(f)) == f


@given(expr_tree(), expr_tree())
@settings(max_examples=40, deadline=None)
def test_serialization_respects_arithmetic(a, b):
    fa, fb = parse(a), parse(b)
    assert parse(serialize(fa * fb)) == fa * fb
    assert parse(serialize(fa + fb)) == fa + fb
