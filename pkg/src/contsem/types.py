"""Type language with three distinct arrows, type schemes, and unification."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


class UnificationError(Exception):
    pass


class Mismatch(UnificationError):
    """Constructor clash between two subtypes (the three arrows never mix)."""

    def __init__(self, left: "Type", right: "Type"):
        self.left = left
        self.right = right
        super().__init__(f"cannot unify {print_type(left)} with {print_type(right)}")


class OccursCheck(UnificationError):
    def __init__(self, var: str, ty: "Type"):
        self.var = var
        self.ty = ty
        super().__init__(f"occurs check failed: {var} occurs in {print_type(ty)}")


class TypeSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Type:
    pass


@dataclass(frozen=True)
class Base(Type):
    name: str  # "e" (individuals) or "t" (propositions)


@dataclass(frozen=True)
class TVar(Type):
    name: str


@dataclass(frozen=True)
class Fun(Type):
    dom: Type
    cod: Type


@dataclass(frozen=True)
class Cont(Type):
    value: Type
    answer: Type


@dataclass(frozen=True)
class Ques(Type):
    asked: Type
    body: Type


E = Base("e")
T = Base("t")

_ARROWS = (Fun, Cont, Ques)
_ARROW_OP = {Fun: "->", Cont: "#>", Ques: "?>"}


def braced(value: Type, incoming: Type, outgoing: Type) -> Fun:
    """The value-with-answer-change shape: (value #> incoming) -> outgoing."""
    return Fun(Cont(value, incoming), outgoing)


def braced_parts(t: Type):
    """Decompose braced(v, i, o), or return None."""
    if isinstance(t, Fun) and isinstance(t.dom, Cont):
        return t.dom.value, t.dom.answer, t.cod
    return None


def is_arrow(t: Type) -> bool:
    return isinstance(t, _ARROWS)


def arrow_fields(t: Type) -> tuple[Type, Type]:
    if isinstance(t, Fun):
        return t.dom, t.cod
    if isinstance(t, Cont):
        return t.value, t.answer
    if isinstance(t, Ques):
        return t.asked, t.body
    raise TypeError(f"not an arrow type: {t!r}")


def make_arrow(ctor: type, left: Type, right: Type) -> Type:
    return ctor(left, right)


def free_type_vars(t: Type) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, TVar):
            out.add(x.name)
        elif is_arrow(x):
            stack.extend(arrow_fields(x))
    return out


def type_vars_in_order(t: Type) -> list[str]:
    """Free variables in left-to-right first-occurrence order."""
    seen: list[str] = []
    def go(x: Type):
        if isinstance(x, TVar):
            if x.name not in seen:
                seen.append(x.name)
        elif is_arrow(x):
            l, r = arrow_fields(x)
            go(l)
            go(r)
    go(t)
    return seen


def type_depth(t: Type) -> int:
    if is_arrow(t):
        l, r = arrow_fields(t)
        return 1 + max(type_depth(l), type_depth(r))
    return 1


def rename_type_vars(t: Type, mapping: Mapping[str, str]) -> Type:
    if isinstance(t, TVar):
        return TVar(mapping.get(t.name, t.name))
    if is_arrow(t):
        l, r = arrow_fields(t)
        return make_arrow(type(t), rename_type_vars(l, mapping),
                          rename_type_vars(r, mapping))
    return t


# Canonical variable names skip e and t so renamed variables never collide
# with the base types in printed output.
_CANON_LETTERS = "abcdfghijklmnopqrsuvwxyz"


def canonical_var_names() -> Iterator[str]:
    round_ = 0
    while True:
        for ch in _CANON_LETTERS:
            yield ch if round_ == 0 else f"{ch}{round_}"
        round_ += 1


def canonical_type(t: Type, *types: Type) -> Type | tuple[Type, ...]:
    """Rename free variables to a, b, c, ... in first-occurrence order.

    With extra arguments, renames consistently across all of them and
    returns the whole tuple.
    """
    everything = (t, *types)
    names = canonical_var_names()
    mapping: dict[str, str] = {}
    for x in everything:
        for v in type_vars_in_order(x):
            if v not in mapping:
                mapping[v] = next(names)
    renamed = tuple(rename_type_vars(x, mapping) for x in everything)
    return renamed if types else renamed[0]


@dataclass(frozen=True)
class TypeScheme:
    quantified: frozenset[str]
    body: Type

    def __str__(self) -> str:
        return print_type(self.body, shorthand=True)


def generalize(t: Type) -> TypeScheme:
    return TypeScheme(frozenset(free_type_vars(t)), t)


class NameSupply:
    """Session-local fresh type-variable names (g1, g2, ...)."""

    def __init__(self, prefix: str = "g"):
        self.prefix = prefix
        self._n = 0

    def fresh(self) -> str:
        self._n += 1
        return f"{self.prefix}{self._n}"


def instantiate(scheme: TypeScheme, supply: NameSupply) -> Type:
    if not scheme.quantified:
        return scheme.body
    mapping = {v: supply.fresh() for v in sorted(scheme.quantified)}
    return rename_type_vars(scheme.body, mapping)


class Substitution(Mapping):
    """Idempotent map from type variables to types (occurs-checked)."""

    def __init__(self, mapping: Mapping[str, Type]):
        self._m = dict(mapping)

    def __getitem__(self, key: str) -> Type:
        return self._m[key]

    def __iter__(self):
        return iter(self._m)

    def __len__(self) -> int:
        return len(self._m)

    def apply(self, t: Type) -> Type:
        if isinstance(t, TVar):
            got = self._m.get(t.name)
            return t if got is None else got
        if is_arrow(t):
            l, r = arrow_fields(t)
            return make_arrow(type(t), self.apply(l), self.apply(r))
        return t

    def __repr__(self) -> str:
        inner = ", ".join(f"{k} -> {print_type(v)}" for k, v in self._m.items())
        return "{" + inner + "}"


class Unifier:
    """Incremental first-order unifier; rigid variables act as constants."""

    def __init__(self, rigid: Iterable[str] = ()):
        self._m: dict[str, Type] = {}
        self.rigid = frozenset(rigid)

    def resolve(self, t: Type) -> Type:
        while isinstance(t, TVar):
            nxt = self._m.get(t.name)
            if nxt is None:
                return t
            t = nxt
        return t

    def apply(self, t: Type) -> Type:
        t = self.resolve(t)
        if is_arrow(t):
            l, r = arrow_fields(t)
            return make_arrow(type(t), self.apply(l), self.apply(r))
        return t

    def _occurs(self, name: str, t: Type) -> bool:
        t = self.resolve(t)
        if isinstance(t, TVar):
            return t.name == name
        if is_arrow(t):
            l, r = arrow_fields(t)
            return self._occurs(name, l) or self._occurs(name, r)
        return False

    def _bind(self, v: TVar, t: Type):
        if self._occurs(v.name, t):
            raise OccursCheck(v.name, self.apply(t))
        self._m[v.name] = t

    def unify(self, a: Type, b: Type):
        stack = [(a, b)]
        while stack:
            x, y = stack.pop()
            x = self.resolve(x)
            y = self.resolve(y)
            if isinstance(x, TVar) and isinstance(y, TVar) and x.name == y.name:
                continue
            if isinstance(x, TVar) and x.name not in self.rigid:
                self._bind(x, y)
                continue
            if isinstance(y, TVar) and y.name not in self.rigid:
                self._bind(y, x)
                continue
            if isinstance(x, TVar) or isinstance(y, TVar):
                raise Mismatch(x, y)
            if isinstance(x, Base) and isinstance(y, Base) and x.name == y.name:
                continue
            if type(x) is type(y) and is_arrow(x):
                xl, xr = arrow_fields(x)
                yl, yr = arrow_fields(y)
                stack.append((xr, yr))
                stack.append((xl, yl))
                continue
            raise Mismatch(x, y)

    def substitution(self) -> Substitution:
        return Substitution({k: self.apply(v) for k, v in self._m.items()})


def unify(a: Type, b: Type, rigid: Iterable[str] = ()) -> Substitution:
    """Most general unifier of a and b, or Mismatch/OccursCheck."""
    u = Unifier(rigid)
    u.unify(a, b)
    return u.substitution()


def match_pattern(pattern: Type, target: Type) -> dict[str, Type] | None:
    """One-way match: pattern variables bind, target variables are never forced."""
    bound: dict[str, Type] = {}

    def go(p: Type, t: Type) -> bool:
        if isinstance(p, TVar):
            if p.name in bound:
                return bound[p.name] == t
            bound[p.name] = t
            return True
        if isinstance(p, Base):
            return isinstance(t, Base) and p.name == t.name
        if type(p) is type(t) and is_arrow(p):
            pl, pr = arrow_fields(p)
            tl, tr = arrow_fields(t)
            return go(pl, tl) and go(pr, tr)
        return False

    return bound if go(pattern, target) else None


def print_type(t: Type, shorthand: bool = False) -> str:
    def atomish(x: Type) -> bool:
        return isinstance(x, (Base, TVar))

    def rend(x: Type) -> str:
        if atomish(x):
            return x.name
        if shorthand:
            parts = braced_parts(x)
            if parts is not None:
                value, incoming, outgoing = parts
                if atomish(value) or braced_parts(value) is not None:
                    head = rend(value)
                else:
                    head = f"({rend(value)})"
                return f"{head}{{{rend(incoming)}|{rend(outgoing)}}}"
        left, right = arrow_fields(x)
        op = _ARROW_OP[type(x)]
        if atomish(left) or (shorthand and braced_parts(left) is not None):
            ls = rend(left)
        else:
            ls = f"({rend(left)})"
        return f"{ls} {op} {rend(right)}"

    return rend(t)


_TYPE_TOKEN = re.compile(r"\s*(->|#>|\?>|[(){}|]|[A-Za-z_][A-Za-z0-9_]*'*)")


def _tokenize_type(s: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(s):
        m = _TYPE_TOKEN.match(s, pos)
        if m is None:
            if s[pos:].strip():
                raise TypeSyntaxError(f"bad character in type at {s[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_type(s: str) -> Type:
    """Inverse of print_type; accepts both the arrow and the braced syntax."""
    toks = _tokenize_type(s)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(toks):
            raise TypeSyntaxError(f"unexpected end of type in {s!r}")
        tok = toks[pos]
        if expected is not None and tok != expected:
            raise TypeSyntaxError(f"expected {expected!r}, found {tok!r} in {s!r}")
        pos += 1
        return tok

    def atom() -> Type:
        tok = take()
        if tok == "(":
            inner = arrow()
            take(")")
            return inner
        if tok in ("->", "#>", "?>", ")", "{", "}", "|"):
            raise TypeSyntaxError(f"unexpected {tok!r} in {s!r}")
        if tok == "e":
            return E
        if tok == "t":
            return T
        return TVar(tok)

    def postfix() -> Type:
        t = atom()
        while peek() == "{":
            take("{")
            incoming = arrow()
            take("|")
            outgoing = arrow()
            take("}")
            t = braced(t, incoming, outgoing)
        return t

    def arrow() -> Type:
        left = postfix()
        tok = peek()
        if tok in ("->", "#>", "?>"):
            take()
            right = arrow()
            ctor = {"->": Fun, "#>": Cont, "?>": Ques}[tok]
            return ctor(left, right)
        return left

    result = arrow()
    if pos != len(toks):
        raise TypeSyntaxError(f"trailing tokens {toks[pos:]!r} in {s!r}")
    return result
