import pytest

from contsem.rules import (
    GrammarTower,
    InvalidPermutation,
    OrderTooLarge,
    apply_combinator,
    base_rules,
    function_application,
    lift,
    lift_rule,
    lower,
    mirror_decoration,
    rule_key,
    tower,
)
from contsem.terms import (
    App,
    Const,
    Forall,
    Lam,
    Var,
    alpha_equal,
    canonicalize,
    parse_term,
)
from contsem.types import E, Fun, T, TVar, braced, canonical_type, unify


def test_base_rules_shapes():
    fa, lift_r, lower_r = base_rules()
    assert fa.premises == (Fun(TVar("a"), TVar("b")), TVar("a"))
    assert fa.conclusion == TVar("b")
    assert lift_r.premises == (TVar("a"),)
    assert lift_r.conclusion == braced(TVar("a"), TVar("g"), TVar("g"))
    assert lower_r.premises == (braced(T, T, TVar("g")),)
    assert lower_r.conclusion == TVar("g")


def test_lift_applied_to_individual():
    got = apply_combinator(lift(), [Const("Alice")])
    assert got == Lam("c", App(Var("c"), Const("Alice")))
    s = unify(lift().premises[0], E)
    assert s.apply(lift().conclusion) == braced(E, TVar("g"), TVar("g"))


def test_lower_recovers_proposition():
    lifted = parse_term(r"\c. forall x. c (Love x Alice)")
    got = apply_combinator(lower(), [lifted])
    assert got == Forall("x", App(App(Const("Love"), Var("x")), Const("Alice")))
    s = unify(lower().premises[0], braced(T, T, T))
    assert s.apply(lower().conclusion) == T


def test_fa_on_transitive_verb():
    got = apply_combinator(function_application(), [Const("Love"), Const("Bob")])
    assert got == App(Const("Love"), Const("Bob"))


def test_lift_fa_function_first_matches_published_rule():
    r = lift_rule(function_application(), (1, 2))
    a, b = TVar("a"), TVar("b")
    g0, g1, g2 = TVar("g0"), TVar("g1"), TVar("g2")
    prem, tail = canonical_type(r.premises[0], r.premises[1], r.conclusion), None
    want = canonical_type(
        braced(Fun(a, b), g1, g0), braced(a, g2, g1), braced(b, g2, g0)
    )
    assert prem == want
    published = parse_term(r"\c. x1 (\f. x2 (\x. c (f x)))")
    assert canonicalize(_closed(r.combinator, 2)) == canonicalize(_closed_term(published, 2))
    assert r.decoration == ">"


def test_lift_fa_argument_first_matches_published_rule():
    r = lift_rule(function_application(), (2, 1))
    a, b = TVar("a"), TVar("b")
    g0, g1, g2 = TVar("g0"), TVar("g1"), TVar("g2")
    got = canonical_type(r.premises[0], r.premises[1], r.conclusion)
    want = canonical_type(
        braced(Fun(a, b), g2, g1), braced(a, g1, g0), braced(b, g2, g0)
    )
    assert got == want
    published = parse_term(r"\c. x2 (\x. x1 (\f. c (f x)))")
    assert canonicalize(_closed(r.combinator, 2)) == canonicalize(_closed_term(published, 2))
    assert r.decoration == "<"


def test_twice_lifted_fa_matches_published_rule():
    r = lift_rule(lift_rule(function_application(), (1, 2)), (1, 2))
    published = parse_term(
        r"\d. x1 (\f1. x2 (\f2. d (\c. f1 (\f. f2 (\x. c (f x))))))"
    )
    assert canonicalize(_closed(r.combinator, 2)) == canonicalize(_closed_term(published, 2))
    assert r.decoration == ">^>"
    # premise 1: (a -> b){g1|g0}{d1|d0}; conclusion b{g2|g0}{d2|d0}
    a, b = TVar("a"), TVar("b")
    g0, g1, g2 = TVar("g0"), TVar("g1"), TVar("g2")
    d0, d1, d2 = TVar("d0"), TVar("d1"), TVar("d2")
    got = canonical_type(r.premises[0], r.premises[1], r.conclusion)
    want = canonical_type(
        braced(braced(Fun(a, b), g1, g0), d1, d0),
        braced(braced(a, g2, g1), d2, d1),
        braced(braced(b, g2, g0), d2, d0),
    )
    assert got == want


def _closed(comb, n):
    return _closed_term(comb, n)


def _closed_term(comb, n):
    out = comb
    for i in range(n, 0, -1):
        out = Lam(f"x{i}", out)
    return out


def test_invalid_permutation():
    with pytest.raises(InvalidPermutation):
        lift_rule(function_application(), (1, 1))
    with pytest.raises(InvalidPermutation):
        lift_rule(function_application(), (1,))


def test_binary_rule_lifts_are_distinct():
    r1 = lift_rule(function_application(), (1, 2))
    r2 = lift_rule(function_application(), (2, 1))
    assert rule_key(r1) != rule_key(r2)


def test_unary_rule_has_single_lift():
    assert rule_key(lift_rule(lift(), (1,))) == rule_key(lift_rule(lift(), (1,)))


def test_tower_counts_match_published_table():
    g0 = tower(0)
    assert len(g0.unary) == 0 and len(g0.binary) == 1
    g1 = tower(1)
    assert len(g1.unary) == 2 and len(g1.binary) == 3
    g2 = tower(2)
    assert len(g2.unary) == 4 and len(g2.binary) == 7


def test_tower_is_monotone():
    keys0 = {rule_key(r) for r in tower(0).rules}
    keys1 = {rule_key(r) for r in tower(1).rules}
    keys2 = {rule_key(r) for r in tower(2).rules}
    assert keys0 <= keys1 <= keys2


def test_tower_rule_names_and_decorations():
    g2 = tower(2)
    by_name = {r.name: r for r in g2.rules}
    assert set(by_name) == {
        "fa", "lift", "lower", "liftL", "lowerL",
        "faF", "faA", "faFF", "faFA", "faAF", "faAA",
    }
    assert by_name["lift"].decoration == "∧"
    assert by_name["lowerL"].decoration == "∨*"
    assert by_name["faFA"].decoration == ">^<"
    assert by_name["faAF"].decoration == "<^>"


def test_tower_order_too_large():
    with pytest.raises(OrderTooLarge):
        tower(4)


def test_tower_order_three_builds():
    g3 = tower(3)
    assert len(g3.unary) == 6
    assert len(g3.binary) == 15


def test_lifted_fa_on_lifted_inputs_is_lift_of_fa():
    # the defining requirement: combining lifted Love with lifted Bob gives
    # the lifted application, for both evaluation orders
    fa, lift_r, _ = base_rules()
    love, bob = Const("Love"), Const("Bob")
    lifted_love = apply_combinator(lift_r, [love])
    lifted_bob = apply_combinator(lift_r, [bob])
    want = apply_combinator(lift_r, [apply_combinator(fa, [love, bob])])
    for sigma in ((1, 2), (2, 1)):
        r = lift_rule(fa, sigma)
        got = apply_combinator(r, [lifted_love, lifted_bob])
        assert alpha_equal(got, want)


def test_depth_specs():
    g2 = tower(2)
    by_name = {r.name: r for r in g2.rules}
    assert by_name["fa"].premise_depths_ok((0, 0))
    assert not by_name["fa"].premise_depths_ok((1, 0))
    assert by_name["lift"].premise_depths_ok((0,))
    assert by_name["lift"].premise_depths_ok((2,))
    assert by_name["lift"].result_depth((1,)) == 2
    assert by_name["liftL"].premise_depths_ok((1,))
    assert not by_name["liftL"].premise_depths_ok((0,))
    assert by_name["lower"].premise_depths_ok((1,))
    assert by_name["lower"].result_depth((1,)) == 0
    assert by_name["lowerL"].premise_depths_ok((2,))
    assert by_name["lowerL"].result_depth((2,)) == 1
    assert by_name["faFF"].premise_depths_ok((2, 2))


def test_mirror_decoration():
    assert mirror_decoration(">") == "<"
    assert mirror_decoration(">^<") == "<^>"
    assert mirror_decoration("∧*") == "∧*"
    assert mirror_decoration("") == ""


def test_grammar_tower_split():
    g1 = tower(1)
    assert isinstance(g1, GrammarTower)
    assert {r.arity for r in g1.unary} == {1}
    assert {r.arity for r in g1.binary} == {2}
