"""Symbolic lambda terms with quantifiers and presupposition guards."""
from __future__ import annotations

import re
from dataclasses import dataclass

DEFAULT_FUEL = 10000


class FuelExhausted(Exception):
    def __init__(self, term: "Term", fuel: int):
        self.term = term
        self.fuel = fuel
        super().__init__(f"no normal form after {fuel} reduction steps")


class TermSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Term:
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Const(Term):
    name: str


@dataclass(frozen=True)
class Lam(Term):
    bound: str
    body: Term


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term


@dataclass(frozen=True)
class Forall(Term):
    bound: str
    body: Term


@dataclass(frozen=True)
class Exists(Term):
    bound: str
    body: Term


@dataclass(frozen=True)
class Guard(Term):
    """Bracketed presupposition [condition] body; never reduced away."""

    condition: Term
    body: Term


_BINDERS = (Lam, Forall, Exists)


def apply_all(fun: Term, *args: Term) -> Term:
    for a in args:
        fun = App(fun, a)
    return fun


def free_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Const):
        return frozenset()
    if isinstance(t, App):
        return free_vars(t.fun) | free_vars(t.arg)
    if isinstance(t, Guard):
        return free_vars(t.condition) | free_vars(t.body)
    return free_vars(t.body) - {t.bound}


def constants(t: Term) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, Const):
            out.add(x.name)
        elif isinstance(x, App):
            stack.extend((x.fun, x.arg))
        elif isinstance(x, Guard):
            stack.extend((x.condition, x.body))
        elif isinstance(x, _BINDERS):
            stack.append(x.body)
    return out


def _avoid(name: str, taken: frozenset[str]) -> str:
    fresh = name
    while fresh in taken:
        fresh += "'"
    return fresh


def substitute(t: Term, v: str, s: Term) -> Term:
    """Capture-avoiding substitution of s for free occurrences of v in t."""
    if isinstance(t, Var):
        return s if t.name == v else t
    if isinstance(t, Const):
        return t
    if isinstance(t, App):
        return App(substitute(t.fun, v, s), substitute(t.arg, v, s))
    if isinstance(t, Guard):
        return Guard(substitute(t.condition, v, s), substitute(t.body, v, s))
    if t.bound == v:
        return t
    if v not in free_vars(t.body):
        return t
    if t.bound in free_vars(s):
        fresh = _avoid(t.bound, free_vars(s) | free_vars(t.body) | {v})
        body = substitute(t.body, t.bound, Var(fresh))
        return type(t)(fresh, substitute(body, v, s))
    return type(t)(t.bound, substitute(t.body, v, s))


def _beta_step(t: Term) -> Term | None:
    """One leftmost-outermost beta contraction, or None if beta-normal."""
    if isinstance(t, App):
        if isinstance(t.fun, Lam):
            return substitute(t.fun.body, t.fun.bound, t.arg)
        f = _beta_step(t.fun)
        if f is not None:
            return App(f, t.arg)
        a = _beta_step(t.arg)
        if a is not None:
            return App(t.fun, a)
        return None
    if isinstance(t, _BINDERS):
        b = _beta_step(t.body)
        return None if b is None else type(t)(t.bound, b)
    if isinstance(t, Guard):
        c = _beta_step(t.condition)
        if c is not None:
            return Guard(c, t.body)
        b = _beta_step(t.body)
        return None if b is None else Guard(t.condition, b)
    return None


def beta_normalize(t: Term, fuel: int = DEFAULT_FUEL) -> Term:
    """Beta-normal form by leftmost-outermost reduction, bounded by fuel."""
    if fuel < 1:
        raise ValueError("fuel must be at least 1")
    current = t
    for _ in range(fuel):
        nxt = _beta_step(current)
        if nxt is None:
            return current
        current = nxt
    if _beta_step(current) is None:
        return current
    raise FuelExhausted(t, fuel)


def eta_normalize(t: Term) -> Term:
    """Contract \\x. f x (x not free in f); expects a beta-normal input."""
    if isinstance(t, App):
        return App(eta_normalize(t.fun), eta_normalize(t.arg))
    if isinstance(t, Guard):
        return Guard(eta_normalize(t.condition), eta_normalize(t.body))
    if isinstance(t, _BINDERS):
        body = eta_normalize(t.body)
        out: Term = type(t)(t.bound, body)
        while (
            isinstance(out, Lam)
            and isinstance(out.body, App)
            and out.body.arg == Var(out.bound)
            and out.bound not in free_vars(out.body.fun)
        ):
            out = out.body.fun
        return out
    return t


def alpha_equal(a: Term, b: Term) -> bool:
    """Structural equality up to consistent renaming of bound variables."""

    def go(x: Term, y: Term, envx: dict[str, int], envy: dict[str, int], depth: int) -> bool:
        if isinstance(x, Var) and isinstance(y, Var):
            bx = envx.get(x.name)
            by = envy.get(y.name)
            return bx == by if (bx is not None or by is not None) else x.name == y.name
        if isinstance(x, Const) and isinstance(y, Const):
            return x.name == y.name
        if isinstance(x, App) and isinstance(y, App):
            return go(x.fun, y.fun, envx, envy, depth) and go(x.arg, y.arg, envx, envy, depth)
        if isinstance(x, Guard) and isinstance(y, Guard):
            return (go(x.condition, y.condition, envx, envy, depth)
                    and go(x.body, y.body, envx, envy, depth))
        if type(x) is type(y) and isinstance(x, _BINDERS):
            ex = dict(envx)
            ey = dict(envy)
            ex[x.bound] = depth
            ey[y.bound] = depth
            return go(x.body, y.body, ex, ey, depth + 1)
        return False

    return go(a, b, {}, {}, 0)


def rename_binders(t: Term, prefix: str = "v") -> Term:
    """Rename every binder to v0, v1, ... in preorder occurrence order."""
    counter = [0]

    def go(x: Term, env: dict[str, Term]) -> Term:
        if isinstance(x, Var):
            return env.get(x.name, x)
        if isinstance(x, Const):
            return x
        if isinstance(x, App):
            return App(go(x.fun, env), go(x.arg, env))
        if isinstance(x, Guard):
            return Guard(go(x.condition, env), go(x.body, env))
        fresh = f"{prefix}{counter[0]}"
        counter[0] += 1
        inner = dict(env)
        inner[x.bound] = Var(fresh)
        return type(x)(fresh, go(x.body, inner))

    return go(t, {})


def canonicalize(t: Term, fuel: int = DEFAULT_FUEL, eta: bool = True) -> Term:
    """Beta (and by default eta) normal form with deterministic binder names.

    Two terms denote the same reading iff their canonicalize outputs are
    structurally identical. Eta is configurable since reading identity under
    eta is a policy choice rather than a forced one.
    """
    out = beta_normalize(t, fuel)
    if eta:
        out = eta_normalize(out)
    return rename_binders(out)


def guard_count(t: Term) -> int:
    if isinstance(t, Guard):
        return 1 + guard_count(t.condition) + guard_count(t.body)
    if isinstance(t, App):
        return guard_count(t.fun) + guard_count(t.arg)
    if isinstance(t, _BINDERS):
        return guard_count(t.body)
    return 0


def print_term(t: Term) -> str:
    def atom(x: Term) -> bool:
        return isinstance(x, (Var, Const))

    def rend(x: Term) -> str:
        if atom(x):
            return x.name
        if isinstance(x, Lam):
            return f"\\{x.bound}. {rend(x.body)}"
        if isinstance(x, Forall):
            return f"forall {x.bound}. {rend(x.body)}"
        if isinstance(x, Exists):
            return f"exists {x.bound}. {rend(x.body)}"
        if isinstance(x, Guard):
            return f"[{rend(x.condition)}] {rend(x.body)}"
        head = rend(x.fun) if atom(x.fun) or isinstance(x.fun, App) else f"({rend(x.fun)})"
        arg = rend(x.arg) if atom(x.arg) else f"({rend(x.arg)})"
        return f"{head} {arg}"

    return rend(t)


_TERM_TOKEN = re.compile(r"\s*(\\|\.|\[|\]|\(|\)|[A-Za-z_][A-Za-z0-9_]*'*)")


def _tokenize_term(s: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(s):
        m = _TERM_TOKEN.match(s, pos)
        if m is None:
            if s[pos:].strip():
                raise TermSyntaxError(f"bad character in term at {s[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_term(s: str) -> Term:
    """Parse the surface syntax: \\x. body, forall/exists x. body, [cond] body,
    juxtaposition for application, capitalized identifiers for constants."""
    toks = _tokenize_term(s)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(toks):
            raise TermSyntaxError(f"unexpected end of term in {s!r}")
        tok = toks[pos]
        if expected is not None and tok != expected:
            raise TermSyntaxError(f"expected {expected!r}, found {tok!r} in {s!r}")
        pos += 1
        return tok

    def binder_name() -> str:
        tok = take()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*'*", tok) or tok in ("forall", "exists"):
            raise TermSyntaxError(f"bad binder name {tok!r} in {s!r}")
        return tok

    def term() -> Term:
        tok = peek()
        if tok == "\\":
            take()
            name = binder_name()
            take(".")
            return Lam(name, term())
        if tok in ("forall", "exists"):
            take()
            name = binder_name()
            take(".")
            ctor = Forall if tok == "forall" else Exists
            return ctor(name, term())
        if tok == "[":
            take()
            cond = term()
            take("]")
            return Guard(cond, term())
        return application()

    def application() -> Term:
        head = atom()
        while peek() is not None and peek() not in (")", "]", "."):
            head = App(head, atom())
        return head

    def atom() -> Term:
        tok = take()
        if tok == "(":
            inner = term()
            take(")")
            return inner
        if tok in ("\\", ".", "[", "]", ")"):
            raise TermSyntaxError(f"unexpected {tok!r} in {s!r}")
        if tok in ("forall", "exists"):
            nonlocal pos
            pos -= 1
            return term()
        if tok[0].isupper():
            return Const(tok)
        return Var(tok)

    result = term()
    if pos != len(toks):
        raise TermSyntaxError(f"trailing tokens {toks[pos:]!r} in {s!r}")
    return result
