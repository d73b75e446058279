import random

import pytest

from contsem.types import (
    Cont,
    E,
    Fun,
    Mismatch,
    NameSupply,
    OccursCheck,
    Ques,
    T,
    TVar,
    TypeScheme,
    TypeSyntaxError,
    braced,
    canonical_type,
    free_type_vars,
    instantiate,
    match_pattern,
    parse_type,
    print_type,
    type_depth,
    unify,
)


def test_unify_binds_answer_variable():
    s = unify(Cont(E, TVar("g")), Cont(E, T))
    assert dict(s) == {"g": T}


def test_unify_arrow_kinds_never_mix():
    with pytest.raises(Mismatch):
        unify(Cont(E, T), Fun(E, T))
    with pytest.raises(Mismatch):
        unify(Ques(E, T), Fun(E, T))
    with pytest.raises(Mismatch):
        unify(Ques(E, T), Cont(E, T))


def test_unify_question_type_instantiation():
    # matches the wh-entry shape instantiated at a question answer type
    a = Fun(Cont(E, TVar("g")), Ques(E, TVar("g")))
    b = Fun(Cont(E, Ques(E, T)), TVar("d"))
    s = unify(a, b)
    assert s.apply(TVar("g")) == Ques(E, T)
    assert s.apply(TVar("d")) == Ques(E, Ques(E, T))


def test_unify_base_clash():
    with pytest.raises(Mismatch):
        unify(E, T)


def test_unify_occurs_check():
    with pytest.raises(OccursCheck):
        unify(TVar("g"), Cont(E, TVar("g")))


def test_unify_rigid_variables_behave_like_constants():
    with pytest.raises(Mismatch):
        unify(TVar("g"), T, rigid={"g"})
    s = unify(TVar("g"), TVar("h"), rigid={"g"})
    assert s.apply(TVar("h")) == TVar("g")


def test_substitution_is_idempotent():
    s = unify(Fun(TVar("a"), TVar("b")), Fun(Cont(E, TVar("b")), T))
    for v in ("a", "b"):
        applied = s.apply(TVar(v))
        assert s.apply(applied) == applied


def test_instantiate_freshens():
    scheme = TypeScheme(frozenset({"g"}), Fun(Cont(E, TVar("g")), Ques(E, TVar("g"))))
    supply = NameSupply()
    t1 = instantiate(scheme, supply)
    t2 = instantiate(scheme, supply)
    assert free_type_vars(t1).isdisjoint(free_type_vars(t2))


def test_instantiate_empty_scheme_is_noop():
    scheme = TypeScheme(frozenset(), T)
    assert instantiate(scheme, NameSupply()) is T


def test_print_shorthand_braces():
    assert print_type(braced(E, T, T), shorthand=True) == "e{t|t}"


def test_print_full_arrows():
    t = Fun(Cont(E, Ques(E, T)), Ques(E, Ques(E, T)))
    assert print_type(t) == "(e #> e ?> t) -> e ?> e ?> t"
    assert print_type(t, shorthand=True) == "e{e ?> t|e ?> e ?> t}"


def test_print_base():
    assert print_type(E) == "e"


def test_print_shorthand_parenthesizes_arrow_values():
    t = braced(Ques(E, T), TVar("d"), Ques(E, TVar("d")))
    assert print_type(t, shorthand=True) == "(e ?> t){d|e ?> d}"


def test_print_shorthand_stacks_postfix():
    t = braced(braced(E, T, T), TVar("d"), TVar("d"))
    assert print_type(t, shorthand=True) == "e{t|t}{d|d}"


def test_parse_accepts_braced_syntax():
    assert parse_type("e{t|t}") == braced(E, T, T)
    assert parse_type("(e ?> t){d|e ?> d}") == braced(Ques(E, T), TVar("d"), Ques(E, TVar("d")))


def test_parse_right_associativity():
    assert parse_type("e -> e -> t") == Fun(E, Fun(E, T))
    assert parse_type("e #> e ?> t") == Cont(E, Ques(E, T))


def test_parse_errors():
    for bad in ["", "e ->", "(e", "e t", "e | t"]:
        with pytest.raises(TypeSyntaxError):
            parse_type(bad)


_CTORS = (Fun, Cont, Ques)


def _random_type(rng, depth):
    if depth <= 1 or rng.random() < 0.3:
        return rng.choice([E, T, TVar("a"), TVar("b"), TVar("g")])
    ctor = rng.choice(_CTORS)
    return ctor(_random_type(rng, depth - 1), _random_type(rng, depth - 1))


def test_parse_print_round_trip_to_depth_six():
    rng = random.Random(17)
    for _ in range(500):
        t = _random_type(rng, 6)
        assert parse_type(print_type(t)) == t
        assert parse_type(print_type(t, shorthand=True)) == t


def test_unify_symmetry_and_mgu_property_random():
    rng = random.Random(23)
    agree = 0
    for _ in range(2000):
        a = _random_type(rng, 4)
        b = _random_type(rng, 4)
        try:
            s1 = unify(a, b)
        except (Mismatch, OccursCheck):
            with pytest.raises((Mismatch, OccursCheck)):
                unify(b, a)
            continue
        s2 = unify(b, a)
        assert s1.apply(a) == s1.apply(b)
        assert s2.apply(a) == s2.apply(b)
        assert canonical_type(s1.apply(a)) == canonical_type(s2.apply(b))
        agree += 1
    assert agree > 100  # generator produces plenty of unifiable pairs


def test_match_pattern_one_way():
    pattern = parse_type("(e ?> t){d|e ?> d}")
    target = braced(Ques(E, T), TVar("g9"), Ques(E, TVar("g9")))
    assert match_pattern(pattern, target) == {"d": TVar("g9")}
    # target variables are never forced
    assert match_pattern(T, TVar("g9")) is None
    # inconsistent rebinding fails
    assert match_pattern(Fun(TVar("d"), TVar("d")), Fun(E, T)) is None


def test_canonical_type_renames_in_first_occurrence_order():
    t = Fun(TVar("g7"), Fun(TVar("g3"), TVar("g7")))
    assert print_type(canonical_type(t)) == "a -> b -> a"


def test_type_depth():
    assert type_depth(E) == 1
    assert type_depth(Fun(E, T)) == 2
    assert type_depth(braced(E, T, T)) == 3
