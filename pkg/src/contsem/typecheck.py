"""Checking terms against declared types.

Lambda binders are overloaded across the three arrow kinds, so a bare term
has no principal type; the checker verifies a term against a declared type
instead, treating the declared type's variables as rigid.
"""
from __future__ import annotations

from itertools import product
from typing import Mapping

from .terms import App, Const, Exists, Forall, Guard, Lam, Term, Var, print_term
from .types import (
    E,
    T,
    Type,
    TypeScheme,
    UnificationError,
    Unifier,
    arrow_fields,
    free_type_vars,
    is_arrow,
    print_type,
)

Signature = Mapping[str, tuple[Type, ...]]


class IllTyped(Exception):
    def __init__(self, term: Term, reason: str):
        self.term = term
        self.reason = reason
        super().__init__(f"{print_term(term)}: {reason}")


def _check_once(term: Term, declared: Type, signature: Signature,
                choice: dict[int, int]) -> None:
    """One deterministic checking pass; choice fixes ambiguous constants."""
    rigid = free_type_vars(declared)
    u = Unifier(rigid=rigid)
    occurrence = [0]

    def expect(t: Term, expected: Type, env: dict[str, Type]):
        expected = u.resolve(expected)
        if isinstance(t, Lam):
            if not is_arrow(expected):
                raise IllTyped(t, f"lambda cannot have type {print_type(u.apply(expected))}")
            dom, cod = arrow_fields(expected)
            inner = dict(env)
            inner[t.bound] = dom
            expect(t.body, cod, inner)
            return
        if isinstance(t, Guard):
            expect(t.condition, T, env)
            expect(t.body, expected, env)
            return
        if isinstance(t, (Forall, Exists)):
            _unify(t, expected, T)
            inner = dict(env)
            inner[t.bound] = E
            expect(t.body, T, inner)
            return
        got = synth(t, env)
        _unify(t, got, expected)

    def synth(t: Term, env: dict[str, Type]) -> Type:
        if isinstance(t, Var):
            if t.name not in env:
                raise IllTyped(t, f"unbound variable {t.name}")
            return env[t.name]
        if isinstance(t, Const):
            alts = signature.get(t.name)
            if not alts:
                raise IllTyped(t, f"unknown constant {t.name}")
            idx = occurrence[0]
            occurrence[0] += 1
            return alts[choice.get(idx, 0)]
        if isinstance(t, App):
            fun_ty = u.resolve(synth(t.fun, env))
            if not is_arrow(fun_ty):
                raise IllTyped(t, f"cannot apply a term of type {print_type(u.apply(fun_ty))}")
            dom, cod = arrow_fields(fun_ty)
            expect(t.arg, dom, env)
            return cod
        if isinstance(t, Guard):
            expect(t.condition, T, env)
            return synth(t.body, env)
        if isinstance(t, (Forall, Exists)):
            inner = dict(env)
            inner[t.bound] = E
            expect(t.body, T, inner)
            return T
        raise IllTyped(t, "cannot infer the arrow kind of a bare lambda")

    def _unify(t: Term, a: Type, b: Type):
        try:
            u.unify(a, b)
        except UnificationError as exc:
            raise IllTyped(t, str(exc)) from exc

    expect(term, declared, {})


def _ambiguous_occurrences(term: Term, signature: Signature) -> list[int]:
    """Alternative counts for overloaded constant occurrences, in the same
    preorder the checker visits them. Unambiguous constants are included as
    single-alternative slots so indices line up with the checker's counter."""
    counts: list[int] = []

    def go(t: Term):
        if isinstance(t, Const):
            counts.append(max(1, len(signature.get(t.name, ()))))
        elif isinstance(t, App):
            go(t.fun)
            go(t.arg)
        elif isinstance(t, Guard):
            go(t.condition)
            go(t.body)
        elif isinstance(t, (Lam, Forall, Exists)):
            go(t.body)

    go(term)
    return counts


def check_term(term: Term, declared: Type | TypeScheme,
               signature: Signature) -> TypeScheme:
    """Check a closed term against a declared type; returns the checked scheme.

    Overloaded constants are resolved by trying each declared alternative.
    Raises IllTyped when no resolution checks.
    """
    body = declared.body if isinstance(declared, TypeScheme) else declared
    counts = _ambiguous_occurrences(term, signature)
    last: IllTyped | None = None
    for combo in product(*(range(n) for n in counts)):
        try:
            _check_once(term, body, signature, dict(enumerate(combo)))
            return TypeScheme(frozenset(free_type_vars(body)), body)
        except IllTyped as exc:
            last = exc
    assert last is not None
    raise last
