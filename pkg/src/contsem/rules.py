"""Composition rules as typed combinators, rule lifting, and the rule tower."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .terms import (
    App,
    Lam,
    Term,
    Var,
    beta_normalize,
    canonicalize,
    print_term,
    substitute,
)
from .types import (
    Fun,
    T,
    TVar,
    Type,
    braced,
    canonical_type,
    free_type_vars,
    print_type,
)

MAX_ORDER = 3


class InvalidPermutation(Exception):
    pass


class OrderTooLarge(Exception):
    def __init__(self, order: int, maximum: int):
        self.order = order
        self.maximum = maximum
        super().__init__(f"tower order {order} exceeds the maximum {maximum}")


@dataclass(frozen=True)
class Rule:
    """An n-ary composition rule.

    The combinator is a term whose free variables x1..xn stand for the
    premise denotations; substituting premise terms for them and
    beta-normalizing yields the conclusion denotation.

    depth_spec stratifies the tower: a type like braced(e, g, g) is one
    tree but two different citizens (a lifted individual versus a function
    over continuations), so items carry the tower level they live at and
    rules only combine items of the level they were made for.
      ("exact", (d1, ..., dn), d)  premises at exactly those levels, result d
      ("lift", m)                  one premise at any level >= m, result +1
    """

    name: str
    decoration: str
    premises: tuple[Type, ...]
    conclusion: Type
    combinator: Term
    depth_spec: tuple

    @property
    def arity(self) -> int:
        return len(self.premises)

    def premise_depths_ok(self, depths: Sequence[int]) -> bool:
        kind = self.depth_spec[0]
        if kind == "exact":
            return tuple(depths) == self.depth_spec[1]
        return len(depths) == 1 and depths[0] >= self.depth_spec[1]

    def result_depth(self, depths: Sequence[int]) -> int:
        kind = self.depth_spec[0]
        if kind == "exact":
            return self.depth_spec[2]
        return depths[0] + 1

    def scheme_vars(self) -> set[str]:
        out = free_type_vars(self.conclusion)
        for p in self.premises:
            out |= free_type_vars(p)
        return out

    def describe(self) -> str:
        schemas = canonical_type(*self.premises, self.conclusion)
        prems, concl = schemas[:-1], schemas[-1]
        left = " ; ".join(print_type(p, shorthand=True) for p in prems)
        dec = self.decoration or "fa"
        return (f"{self.name}\t{dec}\t{left} |- "
                f"{print_type(concl, shorthand=True)}\t{print_term(self.combinator)}")


def apply_combinator(rule: Rule, terms: Sequence[Term], fuel: int = 10000) -> Term:
    if len(terms) != rule.arity:
        raise ValueError(f"rule {rule.name} expects {rule.arity} terms")
    out = rule.combinator
    for i, t in enumerate(terms, start=1):
        out = substitute(out, f"x{i}", t)
    return beta_normalize(out, fuel)


def _premise_vars(n: int) -> list[Term]:
    return [Var(f"x{i}") for i in range(1, n + 1)]


def function_application() -> Rule:
    a, b = TVar("a"), TVar("b")
    return Rule(
        name="fa",
        decoration="",
        premises=(Fun(a, b), a),
        conclusion=b,
        combinator=App(Var("x1"), Var("x2")),
        depth_spec=("exact", (0, 0), 0),
    )


def lift() -> Rule:
    a, g = TVar("a"), TVar("g")
    return Rule(
        name="lift",
        decoration="∧",
        premises=(a,),
        conclusion=braced(a, g, g),
        combinator=Lam("c", App(Var("c"), Var("x1"))),
        depth_spec=("lift", 0),
    )


def lower() -> Rule:
    """Extract an answer by feeding the identity continuation.

    The premise is pinned to proposition-valued items (t{t|g}); see the
    project notes on why the value slot is not a variable here.
    """
    g = TVar("g")
    return Rule(
        name="lower",
        decoration="∨",
        premises=(braced(T, T, g),),
        conclusion=g,
        combinator=App(Var("x1"), Lam("z", Var("z"))),
        depth_spec=("exact", (1,), 0),
    )


def base_rules() -> tuple[Rule, Rule, Rule]:
    return (function_application(), lift(), lower())


def _fresh_answer_vars(rule: Rule, count: int) -> list[TVar]:
    taken = rule.scheme_vars()
    out = []
    for i in range(count):
        name = f"g{i}"
        while name in taken:
            name += "'"
        taken.add(name)
        out.append(TVar(name))
    return out


def _term_names(t: Term) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, Var):
            out.add(x.name)
        elif isinstance(x, App):
            stack.extend((x.fun, x.arg))
        elif isinstance(x, Lam):
            out.add(x.bound)
            stack.append(x.body)
    return out


def _fresh_name(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def _lift_suffix(sigma: tuple[int, ...]) -> str:
    if len(sigma) == 1:
        return "L"
    if sigma == (1, 2):
        return "F"
    if sigma == (2, 1):
        return "A"
    return "p" + "".join(str(i) for i in sigma)


def _lift_decoration(rule: Rule, sigma: tuple[int, ...]) -> str:
    if len(sigma) == 1:
        return rule.decoration + "*"
    tag = ">" if sigma == tuple(range(1, len(sigma) + 1)) else "<"
    return f"{rule.decoration}^{tag}" if rule.decoration else tag


def lift_rule(rule: Rule, sigma: Sequence[int]) -> Rule:
    """Lift an n-ary rule along an evaluation-order permutation of 1..n.

    Premise i becomes braced(alpha_i, g[sigma_i], g[sigma_i - 1]); the new
    combinator runs the lifted premises in sigma order around the old
    conclusion and threads the answer through a fresh continuation.
    """
    n = rule.arity
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise InvalidPermutation(f"{sigma} is not a permutation of 1..{n}")

    gammas = _fresh_answer_vars(rule, n + 1)
    premises = tuple(
        braced(rule.premises[i], gammas[sigma[i]], gammas[sigma[i] - 1])
        for i in range(n)
    )
    conclusion = braced(rule.conclusion, gammas[n], gammas[0])

    # Bind fresh y_i inside, feed them to the old combinator body, and let
    # the premise placeholders x_i stand for the lifted values. Names are
    # chosen away from the old combinator's to keep the dump shadow-free.
    taken = _term_names(rule.combinator)
    hole = _fresh_name("k", taken)
    inner = {i: _fresh_name(f"y{i}", taken) for i in range(1, n + 1)}
    body = rule.combinator
    for i in range(1, n + 1):
        body = substitute(body, f"x{i}", Var(inner[i]))
    out: Term = App(Var(hole), body)
    inverse = {sigma[i]: i + 1 for i in range(n)}
    for pos in range(n, 0, -1):
        i = inverse[pos]
        out = App(Var(f"x{i}"), Lam(inner[i], out))
    combinator = Lam(hole, out)

    if rule.depth_spec[0] == "exact":
        spec = ("exact", tuple(d + 1 for d in rule.depth_spec[1]), rule.depth_spec[2] + 1)
    else:
        spec = ("lift", rule.depth_spec[1] + 1)

    return Rule(
        name=rule.name + _lift_suffix(sigma),
        decoration=_lift_decoration(rule, sigma),
        premises=premises,
        conclusion=conclusion,
        combinator=combinator,
        depth_spec=spec,
    )


def rule_key(rule: Rule) -> tuple:
    """Identity up to type-variable renaming and beta-eta combinator equality."""
    schemas = canonical_type(rule.conclusion, *rule.premises)
    closed = rule.combinator
    for i in range(rule.arity, 0, -1):
        closed = Lam(f"x{i}", closed)
    return (
        rule.arity,
        rule.depth_spec,
        tuple(print_type(s) for s in schemas),
        print_term(canonicalize(closed)),
    )


@dataclass(frozen=True)
class GrammarTower:
    order: int
    rules: tuple[Rule, ...]

    @property
    def unary(self) -> tuple[Rule, ...]:
        return tuple(r for r in self.rules if r.arity == 1)

    @property
    def binary(self) -> tuple[Rule, ...]:
        return tuple(r for r in self.rules if r.arity == 2)


def _dedup(rules: Sequence[Rule]) -> tuple[Rule, ...]:
    seen: dict[tuple, Rule] = {}
    for r in rules:
        key = rule_key(r)
        if key not in seen:
            seen[key] = r
    return tuple(seen.values())


@lru_cache(maxsize=None)
def tower(order: int, maximum: int = MAX_ORDER) -> GrammarTower:
    """G_0 = {fa}; each round adds lift/lower and all permutation lifts."""
    if order < 0:
        raise ValueError("tower order must be non-negative")
    if order > maximum:
        raise OrderTooLarge(order, maximum)
    fa, lift_r, lower_r = base_rules()
    rules: tuple[Rule, ...] = (fa,)
    for _ in range(order):
        lifted = [
            lift_rule(r, sigma)
            for r in rules
            for sigma in permutations(range(1, r.arity + 1))
        ]
        rules = _dedup([lift_r, lower_r, *rules, *lifted])
    return GrammarTower(order, rules)


def mirror_decoration(decoration: str) -> str:
    """Swap evaluation-order marks when premise 1 sits on the right daughter."""
    return decoration.translate(str.maketrans({">": "<", "<": ">"}))
