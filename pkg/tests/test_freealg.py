"""Noncommutative rewriting: normal forms, critical pairs, tensor layer."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jforge.errors import NonTerminating, OrientationFailure
from jforge.freealg import (
    RewriteRule,
    RewriteSystem,
    nc_add,
    nc_gen,
    nc_is_zero,
    nc_mul,
    nc_one,
    nc_scale,
    nc_str,
    nc_sub,
    nc_substitute_params,
    nc_word,
    t_add,
    t_is_zero,
    t_mul,
    t_scale,
    t_simple,
    tensor_normal_form,
    word_touches,
)
from jforge.grammar import parse


def weyl_like() -> RewriteSystem:
    # y x -> x y + 1: one descending pair with an inhomogeneous tail
    rs = RewriteSystem(("x", "y"))
    rs.add_rule(RewriteRule(("y", "x"), nc_add(nc_word(("x", "y")), nc_one()),
                            "weyl"))
    return rs


def plane_like() -> RewriteSystem:
    # y x -> x y + m x^2, the quadratic-tail pattern used by the main table
    rs = RewriteSystem(("x", "y"))
    rs.add_rule(RewriteRule(
        ("y", "x"),
        nc_add(nc_word(("x", "y")), nc_word(("x", "x"), parse("m"))),
        "plane"))
    return rs


def test_rules_must_be_oriented():
    rs = RewriteSystem(("x", "y"))
    with pytest.raises(OrientationFailure):
        rs.add_rule(RewriteRule(("x", "y"), nc_word(("y", "x")), "backwards"))


def test_rules_reject_unknown_letters():
    rs = RewriteSystem(("x", "y"))
    with pytest.raises(OrientationFailure):
        rs.add_rule(RewriteRule(("y", "z"), nc_word(("x",)), "stray"))


def test_normal_form_idempotent_and_linear():
    rs = plane_like()
    p = nc_mul(nc_word(("y", "y")), nc_word(("x", "x")))
    q = nc_word(("y", "x", "y"))
    nf = rs.normal_form(p)
    assert rs.normal_form(nf) == nf
    left = rs.normal_form(nc_add(nc_scale(p, parse("3")), q))
    right = nc_add(nc_scale(rs.normal_form(p), parse("3")), rs.normal_form(q))
    assert left == right


def test_difference_to_normal_form_is_ideal_member():
    rs = plane_like()
    p = nc_word(("y", "x", "y", "x"))
    assert rs.reduces_to_zero(nc_sub(p, rs.normal_form(p)))


@given(st.lists(st.sampled_from(["x", "y"]), min_size=0, max_size=6))
@settings(max_examples=80, deadline=None)
def test_normal_words_are_sorted(word):
    rs = weyl_like()
    nf = rs.normal_form(nc_word(tuple(word)))
    for w in nf:
        assert list(w) == sorted(w), w


def test_reduction_order_does_not_matter():
    rs = plane_like()
    rule = rs.rules[("y", "x")]
    rng = random.Random(11)
    for _ in range(40):
        word = tuple(rng.choice("xy") for _ in range(rng.randint(2, 5)))
        direct = rs.normal_form(nc_word(word))
        # pre-fire the rule at every matching inner position, then finish
        for pos in range(len(word) - 1):
            if word[pos:pos + 2] == ("y", "x"):
                partial = rs.apply_at(word, pos, rule)
                assert rs.normal_form(partial) == direct


def test_confluence_report_counts_candidates():
    # three pairwise-commuting letters: the z y x overlap is the one candidate
    rs = RewriteSystem(("x", "y", "z"))
    rs.add_rule(RewriteRule(("y", "x"), nc_word(("x", "y")), "t1"))
    rs.add_rule(RewriteRule(("z", "x"), nc_word(("x", "z")), "t2"))
    rs.add_rule(RewriteRule(("z", "y"), nc_word(("y", "z")), "t3"))
    report = rs.confluence_report(max_degree=3)
    assert report.passed
    details = report.checks[0].details
    assert details["candidates"] == 1
    assert details["unresolved"] == []


def test_non_confluent_system_is_detected():
    # z y x resolves two ways that disagree: x*y*y via the first rule pair,
    # x*x*y via the second
    rs = RewriteSystem(("x", "y", "z"))
    rs.add_rule(RewriteRule(("y", "x"), nc_word(("x", "y")), "t1"))
    rs.add_rule(RewriteRule(("z", "x"), nc_word(("x", "x")), "t2"))
    rs.add_rule(RewriteRule(("z", "y"), nc_word(("y", "y")), "t3"))
    report = rs.confluence_report(max_degree=3)
    assert not report.passed
    assert report.checks[0].details["unresolved"]


def test_step_budget_is_enforced():
    rs = weyl_like()
    deep = nc_word(tuple("yx" * 12))
    with pytest.raises(NonTerminating):
        rs.normal_form(deep, max_steps=3)


def test_quotient_drops_rules_and_erases_tails():
    rs = RewriteSystem(("x", "y", "z"))
    rs.add_rule(RewriteRule(("y", "x"), nc_word(("x", "y")), "kept-away"))
    rs.add_rule(RewriteRule(("z", "x"),
                            nc_add(nc_word(("x", "z")), nc_word(("y", "y"))),
                            "tail-trimmed"))
    q = rs.quotient(("y",))
    assert q.generators == ("x", "z")
    assert len(q.rule_list()) == 1
    assert q.normal_form(nc_word(("z", "x"))) == nc_word(("x", "z"))


def test_serialization_roundtrip():
    rs = plane_like()
    clone = RewriteSystem.from_dict(rs.to_dict())
    p = nc_word(("y", "y", "x"))
    assert clone.normal_form(p) == rs.normal_form(p)


def test_word_touches():
    assert word_touches(("a", "theta", "b"), ("theta", "phi"))
    assert not word_touches(("a", "b"), ("theta", "phi"))


def test_parameter_substitution_in_coefficients():
    p = nc_word(("x", "y"), parse("m - n"))
    assert nc_is_zero(nc_substitute_params(p, {"m": parse("n")}))


def test_tensor_product_is_componentwise():
    x, y = nc_gen("x"), nc_gen("y")
    prod = t_mul(t_simple(x, y), t_simple(y, x))
    assert prod == t_simple(nc_mul(x, y), nc_mul(y, x))
    assert t_is_zero(t_add(prod, t_scale(prod, parse("-1"))))


def test_tensor_normal_form_reduces_each_leg():
    rs = plane_like()
    yx = nc_word(("y", "x"))
    nf = tensor_normal_form(t_simple(yx, yx), rs)
    assert nf == t_simple(rs.normal_form(yx), rs.normal_form(yx))


def test_nc_str_orders_terms_deterministically():
    p = nc_add(nc_word(("y", "y")), nc_word(("x",), parse("2")))
    assert nc_str(p, ("x", "y")) == "y*y + 2*x"
