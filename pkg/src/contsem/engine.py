"""Chart-based enumeration of typed derivations and their readings."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .lexicon import Lexicon, default_lexicon
from .rules import GrammarTower, Rule, mirror_decoration, tower
from .terms import (
    DEFAULT_FUEL,
    Term,
    beta_normalize,
    canonicalize,
    print_term,
    substitute,
)
from .typecheck import IllTyped, check_term
from .types import (
    NameSupply,
    Substitution,
    Type,
    UnificationError,
    Unifier,
    braced_parts,
    canonical_type,
    instantiate,
    match_pattern,
    print_type,
    rename_type_vars,
    type_depth,
    type_vars_in_order,
)


def brace_nesting(ty: Type) -> int:
    """How many tower levels a type shape supports beyond the plain one."""
    n = 0
    parts = braced_parts(ty)
    while parts is not None:
        n += 1
        parts = braced_parts(parts[0])
    return n

__all__ = [
    "SearchOptions",
    "DerivationNode",
    "Reading",
    "UnknownWord",
    "NoDerivation",
    "TooManyBracketings",
    "derive",
    "derive_sentence",
    "rank_ltr",
    "check_term",
    "IllTyped",
    "parse_bracketed",
    "format_tree",
]

MAX_SENTENCE_TOKENS = 12


class UnknownWord(Exception):
    def __init__(self, token: str):
        self.token = token
        super().__init__(f"no lexicon entry for {token!r}")


class NoDerivation(Exception):
    def __init__(self, message: str, diagnostics: list[str]):
        self.diagnostics = diagnostics
        super().__init__(message)


class TooManyBracketings(Exception):
    def __init__(self, count: int, limit: int):
        self.count = count
        self.limit = limit
        super().__init__(f"{count} tokens exceed the bracketing limit of {limit}")


class InputError(ValueError):
    pass


@dataclass
class SearchOptions:
    order: int = 2
    max_unary: int = 3
    max_type_depth: int = 12
    goal: Type | None = None
    enumerate_bracketings: bool = False
    prefer_ltr: bool = False
    fuel: int = DEFAULT_FUEL

    def __post_init__(self):
        if self.max_unary < 0:
            raise ValueError("max_unary must be non-negative")
        if self.max_type_depth < 1:
            raise ValueError("max_type_depth must be at least 1")


@dataclass(frozen=True)
class DerivationNode:
    """One derivation step, with the type instantiated as in the full tree."""

    term: Term
    type: Type
    rule: str
    decoration: str
    children: tuple["DerivationNode", ...]
    unary_chain_length: int


@dataclass
class Reading:
    canonical_term: Term
    type: Type
    derivations: list[DerivationNode]
    bracketings: tuple[str, ...]
    term_str: str
    type_str: str
    ltr_cost: int

    def line(self) -> str:
        return f"{self.term_str} : {self.type_str}"


# -- bracketed input ---------------------------------------------------------


def parse_bracketed(text: str):
    """Parse a parenthesized binary tree over tokens; leaves are strings."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def node():
        nonlocal pos
        if pos >= len(tokens):
            raise InputError(f"unexpected end of input in {text!r}")
        tok = tokens[pos]
        pos += 1
        if tok == ")":
            raise InputError(f"unexpected ')' in {text!r}")
        if tok != "(":
            return tok
        children = []
        while pos < len(tokens) and tokens[pos] != ")":
            children.append(node())
        if pos >= len(tokens):
            raise InputError(f"missing ')' in {text!r}")
        pos += 1
        if not children:
            raise InputError(f"empty group in {text!r}")
        if len(children) == 1:
            return children[0]
        if len(children) == 2:
            return tuple(children)
        raise InputError(f"non-binary group of {len(children)} in {text!r}")

    tree = node()
    if pos != len(tokens):
        raise InputError(f"trailing tokens in {text!r}")
    return tree


def print_bracketed(tree) -> str:
    if isinstance(tree, str):
        return tree
    return f"({print_bracketed(tree[0])} {print_bracketed(tree[1])})"


def tree_tokens(tree) -> list[str]:
    if isinstance(tree, str):
        return [tree]
    return tree_tokens(tree[0]) + tree_tokens(tree[1])


# -- chart items -------------------------------------------------------------


@dataclass
class _Alt:
    rule: str
    decoration: str
    children: tuple["_Item", ...]  # surface order
    subst: Substitution | None
    chain: int
    premise1_right: bool = False


@dataclass
class _Item:
    term: Term
    type: Type
    depth: int
    chain: int
    alts: list[_Alt]
    key: str = field(init=False)

    def __post_init__(self):
        self.key = item_key(self.term, self.type, self.depth)


def item_key(term: Term, ty: Type, depth: int) -> str:
    return (f"{print_term(canonicalize(term))} : "
            f"{print_type(canonical_type(ty))} @{depth}")


class _Chart:
    def __init__(self, grammar: GrammarTower, lexicon: Lexicon, opts: SearchOptions):
        self.grammar = grammar
        self.lexicon = lexicon
        self.opts = opts
        self.supply = NameSupply()
        self.diagnostics: list[str] = []
        self.pruned_by_depth = 0

    def _instantiate_rule(self, rule: Rule) -> tuple[tuple[Type, ...], Type]:
        mapping = {v: self.supply.fresh() for v in sorted(rule.scheme_vars())}
        premises = tuple(rename_type_vars(p, mapping) for p in rule.premises)
        conclusion = rename_type_vars(rule.conclusion, mapping)
        return premises, conclusion

    def _new_item(self, term: Term, ty: Type, depth: int, alt: _Alt) -> _Item | None:
        if depth > self.grammar.order:
            return None
        if type_depth(ty) > self.opts.max_type_depth:
            self.pruned_by_depth += 1
            return None
        return _Item(term=term, type=ty, depth=depth, chain=alt.chain, alts=[alt])

    def _merge(self, cell: dict[str, _Item], item: _Item, queue: list[_Item] | None):
        existing = cell.get(item.key)
        if existing is None:
            cell[item.key] = item
            if queue is not None:
                queue.append(item)
            return
        alt = item.alts[0]
        sig = (alt.rule, tuple(id(c) for c in alt.children))
        known = {(a.rule, tuple(id(c) for c in a.children)) for a in existing.alts}
        if sig not in known:
            existing.alts.append(alt)
        if item.chain < existing.chain:
            existing.chain = item.chain
            if queue is not None:
                queue.append(existing)

    def leaf_cell(self, token: str) -> dict[str, _Item]:
        entries = self.lexicon.lookup(token)
        if not entries:
            raise UnknownWord(token)
        cell: dict[str, _Item] = {}
        for entry in entries:
            term = beta_normalize(entry.term, self.opts.fuel)
            # A braced entry type is ambiguous between a plain function and
            # an answer-type manipulator; the word enters at every tower
            # level its type shape supports.
            for depth in range(brace_nesting(entry.scheme.body) + 1):
                ty = instantiate(entry.scheme, self.supply)
                alt = _Alt(rule=f"lex:{token}", decoration="", children=(),
                           subst=None, chain=0)
                item = self._new_item(term, ty, depth, alt)
                if item is not None:
                    self._merge(cell, item, None)
        self._close(cell)
        return cell

    def binary_cell(self, left: dict[str, _Item], right: dict[str, _Item]) -> dict[str, _Item]:
        cell: dict[str, _Item] = {}
        for li in left.values():
            for ri in right.values():
                for rule in self.grammar.binary:
                    self._try_binary(cell, rule, li, ri, premise1_right=False)
                    self._try_binary(cell, rule, li, ri, premise1_right=True)
        self._close(cell)
        return cell

    def _try_binary(self, cell, rule: Rule, left: _Item, right: _Item,
                    premise1_right: bool):
        first, second = (right, left) if premise1_right else (left, right)
        if not rule.premise_depths_ok((first.depth, second.depth)):
            return
        premises, conclusion = self._instantiate_rule(rule)
        u = Unifier()
        try:
            u.unify(premises[0], first.type)
            u.unify(premises[1], second.type)
        except UnificationError:
            return
        subst = u.substitution()
        ty = subst.apply(conclusion)
        term = substitute(substitute(rule.combinator, "x1", first.term), "x2", second.term)
        term = beta_normalize(term, self.opts.fuel)
        dec = mirror_decoration(rule.decoration) if premise1_right else rule.decoration
        alt = _Alt(rule=rule.name, decoration=dec, children=(left, right),
                   subst=subst, chain=0, premise1_right=premise1_right)
        item = self._new_item(term, ty, rule.result_depth((first.depth, second.depth)), alt)
        if item is not None:
            self._merge(cell, item, None)

    def _close(self, cell: dict[str, _Item]):
        queue = list(cell.values())
        while queue:
            item = queue.pop(0)
            if item.chain >= self.opts.max_unary:
                continue
            for rule in self.grammar.unary:
                if not rule.premise_depths_ok((item.depth,)):
                    continue
                premises, conclusion = self._instantiate_rule(rule)
                u = Unifier()
                try:
                    u.unify(premises[0], item.type)
                except UnificationError:
                    continue
                subst = u.substitution()
                ty = subst.apply(conclusion)
                term = beta_normalize(
                    substitute(rule.combinator, "x1", item.term), self.opts.fuel
                )
                alt = _Alt(rule=rule.name, decoration=rule.decoration,
                           children=(item,), subst=subst, chain=item.chain + 1)
                new = self._new_item(term, ty, rule.result_depth((item.depth,)), alt)
                if new is not None:
                    self._merge(cell, new, queue)

    def run(self, tree) -> dict[str, _Item]:
        if isinstance(tree, str):
            cell = self.leaf_cell(tree)
        else:
            left = self.run(tree[0])
            right = self.run(tree[1])
            cell = self.binary_cell(left, right)
        summary = ", ".join(
            print_type(canonical_type(i.type), shorthand=True) for i in cell.values()
        )
        self.diagnostics.append(
            f"{print_bracketed(tree)}: {len(cell)} item(s) [{summary}]"
        )
        return cell


# -- readings ----------------------------------------------------------------


def _ltr_cost_of_item(item: _Item, memo: dict[int, int]) -> int:
    key = id(item)
    if key in memo:
        return memo[key]
    memo[key] = 10 ** 9  # cycle guard
    best = 10 ** 9
    for alt in item.alts:
        cost = alt.decoration.count("<") if len(alt.children) == 2 else 0
        for child in alt.children:
            cost += _ltr_cost_of_item(child, memo)
        best = min(best, cost)
    memo[key] = best
    return best


def _materialize(item: _Item, alt: _Alt, pending: tuple[Substitution, ...]) -> DerivationNode:
    ty = item.type
    for s in pending:
        ty = s.apply(ty)
    children = []
    inner_pending = ((alt.subst,) + pending) if alt.subst is not None else pending
    for child in alt.children:
        children.append(_materialize(child, child.alts[0], inner_pending))
    return DerivationNode(
        term=item.term,
        type=ty,
        rule=alt.rule,
        decoration=alt.decoration,
        children=tuple(children),
        unary_chain_length=alt.chain,
    )


def _readings_from_items(items: Iterable[_Item], bracketing: str,
                         fuel: int) -> list[Reading]:
    groups: dict[tuple[str, str], Reading] = {}
    memo: dict[int, int] = {}
    for item in items:
        cterm = canonicalize(item.term, fuel)
        ctype = canonical_type(item.type)
        key = (print_term(cterm), print_type(ctype, shorthand=True))
        nodes = [_materialize(item, alt, ()) for alt in item.alts]
        cost = _ltr_cost_of_item(item, memo)
        if key in groups:
            got = groups[key]
            got.derivations.extend(nodes)
            got.ltr_cost = min(got.ltr_cost, cost)
            if bracketing not in got.bracketings:
                got.bracketings = got.bracketings + (bracketing,)
        else:
            groups[key] = Reading(
                canonical_term=cterm,
                type=ctype,
                derivations=nodes,
                bracketings=(bracketing,),
                term_str=key[0],
                type_str=key[1],
                ltr_cost=cost,
            )
    return sorted(groups.values(), key=lambda r: (r.type_str, r.term_str))


def derive(
    tree,
    grammar: GrammarTower | None = None,
    lexicon: Lexicon | None = None,
    opts: SearchOptions | None = None,
) -> list[Reading]:
    """Enumerate deduplicated readings of a bracketed token tree."""
    opts = opts or SearchOptions()
    grammar = grammar or tower(opts.order)
    lexicon = lexicon or default_lexicon()
    if isinstance(tree, str):
        tree = parse_bracketed(tree)
    chart = _Chart(grammar, lexicon, opts)
    root = chart.run(tree)
    if chart.pruned_by_depth:
        chart.diagnostics.append(
            f"note: {chart.pruned_by_depth} item(s) pruned by "
            f"max_type_depth={opts.max_type_depth}"
        )
    matched = list(root.values())
    if opts.goal is not None:
        matched = [i for i in matched if match_pattern(opts.goal, i.type) is not None]
    if not matched:
        detail = "no derivation" if root else "no items at the root"
        if opts.goal is not None and root:
            detail = f"no derivation at goal {print_type(opts.goal, shorthand=True)}"
        raise NoDerivation(detail, chart.diagnostics)
    readings = _readings_from_items(matched, print_bracketed(tree), opts.fuel)
    if opts.prefer_ltr:
        readings = rank_ltr(readings)
    return readings


def _bracketings(tokens: Sequence[str]):
    if len(tokens) == 1:
        yield tokens[0]
        return
    for split in range(1, len(tokens)):
        for left in _bracketings(tokens[:split]):
            for right in _bracketings(tokens[split:]):
                yield (left, right)


def derive_sentence(
    tokens: Sequence[str],
    grammar: GrammarTower | None = None,
    lexicon: Lexicon | None = None,
    opts: SearchOptions | None = None,
    limit: int = MAX_SENTENCE_TOKENS,
) -> list[Reading]:
    """Union of derive over every binary bracketing of a flat token list."""
    opts = opts or SearchOptions(enumerate_bracketings=True)
    if not opts.enumerate_bracketings:
        raise ValueError("derive_sentence requires enumerate_bracketings")
    if not tokens:
        raise InputError("empty token list")
    if len(tokens) > limit:
        raise TooManyBracketings(len(tokens), limit)
    lexicon = lexicon or default_lexicon()
    for token in tokens:
        if not lexicon.lookup(token):
            raise UnknownWord(token)
    grammar = grammar or tower(opts.order)
    merged: dict[tuple[str, str], Reading] = {}
    diagnostics: list[str] = []
    for tree in _bracketings(list(tokens)):
        try:
            readings = derive(tree, grammar, lexicon, opts)
        except NoDerivation as exc:
            diagnostics.append(f"{print_bracketed(tree)}: {exc}")
            continue
        for r in readings:
            key = (r.term_str, r.type_str)
            if key in merged:
                got = merged[key]
                got.derivations.extend(r.derivations)
                got.ltr_cost = min(got.ltr_cost, r.ltr_cost)
                got.bracketings = tuple(dict.fromkeys(got.bracketings + r.bracketings))
            else:
                merged[key] = r
    if not merged:
        raise NoDerivation("no derivation under any bracketing", diagnostics)
    out = sorted(merged.values(), key=lambda r: (r.type_str, r.term_str))
    if opts.prefer_ltr:
        out = rank_ltr(out)
    return out


def rank_ltr(readings: list[Reading]) -> list[Reading]:
    """Stable sort by how little a reading runs against left-to-right order."""
    return sorted(readings, key=lambda r: r.ltr_cost)


# -- rendering ---------------------------------------------------------------


def format_tree(node: DerivationNode, indent: str = "  ") -> str:
    """Indented derivation tree with the decoration after the type."""
    names = {}
    letters = iter("abcdfghijklmnopqrsuvwxyz")

    def type_str(ty: Type) -> str:
        for v in type_vars_in_order(ty):
            if v not in names:
                try:
                    names[v] = next(letters)
                except StopIteration:
                    names[v] = v
        return print_type(rename_type_vars(ty, names), shorthand=True)

    lines: list[str] = []

    def go(n: DerivationNode, depth: int):
        mark = n.decoration or n.rule
        lines.append(f"{indent * depth}{print_term(n.term)} : {type_str(n.type)}  [{mark}]")
        for child in n.children:
            go(child, depth + 1)

    go(node, 0)
    return "\n".join(lines)
