"""Built-in lexicon and loader for user lexicon files."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .terms import Term, TermSyntaxError, constants, parse_term, print_term
from .typecheck import IllTyped, check_term
from .types import (
    Type,
    TypeScheme,
    TypeSyntaxError,
    free_type_vars,
    parse_type,
    print_type,
)


class LexiconError(Exception):
    pass


class ParseError(LexiconError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class UnknownConstant(LexiconError):
    def __init__(self, name: str, line: int | None = None):
        self.name = name
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}unknown constant {name}")


class TypeMismatch(LexiconError):
    def __init__(self, word: str, declared: Type, reason: str, line: int | None = None):
        self.word = word
        self.declared = declared
        self.reason = reason
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(
            f"{where}{word} does not have declared type "
            f"{print_type(declared, shorthand=True)}: {reason}"
        )


@dataclass(frozen=True)
class LexEntry:
    word: str
    scheme: TypeScheme
    term: Term

    def describe(self) -> str:
        return f"{self.word} : {print_type(self.scheme.body, shorthand=True)} = {print_term(self.term)}"


@dataclass
class Lexicon:
    entries: dict[str, list[LexEntry]] = field(default_factory=dict)
    signature: dict[str, tuple[Type, ...]] = field(default_factory=dict)

    def lookup(self, token: str) -> list[LexEntry]:
        return self.entries.get(token.lower(), [])

    def words(self) -> list[str]:
        return list(self.entries)

    def all_entries(self) -> list[LexEntry]:
        out = []
        seen = set()
        for word in self.entries:
            for entry in self.entries[word]:
                if id(entry) not in seen:
                    seen.add(id(entry))
                    out.append(entry)
        return out

    def _declare(self, name: str, ty: Type):
        current = self.signature.get(name, ())
        if ty not in current:
            self.signature[name] = current + (ty,)

    def _add(self, word: str, declared: Type, term: Term, line: int):
        unknown = constants(term) - set(self.signature)
        if unknown:
            raise UnknownConstant(sorted(unknown)[0], line)
        try:
            scheme = check_term(term, declared, self.signature)
        except IllTyped as exc:
            raise TypeMismatch(word, declared, exc.reason, line) from exc
        entry = LexEntry(word, scheme, term)
        self.entries.setdefault(word.lower(), []).append(entry)


_ENTRY = re.compile(r"^(?P<word>\S+)\s*:\s*(?P<type>[^=]+)=\s*(?P<term>.+)$")
_CONST = re.compile(r"^const\s+(?P<name>[A-Z][A-Za-z0-9_]*)\s*:\s*(?P<type>.+)$")


def parse_lexicon(text: str, base: Lexicon | None = None) -> Lexicon:
    """Parse `word : TYPE = TERM` entries and `const Name : TYPE` declarations.

    With a base lexicon, entries and declarations extend a copy of it.
    """
    if base is None:
        lex = Lexicon()
    else:
        lex = Lexicon(
            entries={w: list(es) for w, es in base.entries.items()},
            signature=dict(base.signature),
        )
    for lineno, raw in enumerate(text.splitlines(), start=1):
        # `#` starts a comment unless it is the continuation arrow `#>`.
        line = re.split(r"#(?!>)", raw, maxsplit=1)[0].strip()
        if not line:
            continue
        m = _CONST.match(line)
        if m is not None:
            try:
                ty = parse_type(m.group("type"))
            except TypeSyntaxError as exc:
                raise ParseError(lineno, str(exc)) from exc
            if free_type_vars(ty):
                raise ParseError(lineno, "constant types must be closed")
            lex._declare(m.group("name"), ty)
            continue
        m = _ENTRY.match(line)
        if m is None:
            raise ParseError(lineno, f"expected `word : TYPE = TERM`, got {line!r}")
        word = m.group("word")
        try:
            declared = parse_type(m.group("type"))
            term = parse_term(m.group("term"))
        except (TypeSyntaxError, TermSyntaxError) as exc:
            raise ParseError(lineno, str(exc)) from exc
        lex._add(word, declared, term, lineno)
    return lex


def load_lexicon(path: str | Path, extend: bool = False) -> Lexicon:
    """Load a lexicon file, optionally merged over the built-ins."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_lexicon(text, base=default_lexicon() if extend else None)


# The built-in entries, in order of appearance in the fragment. The gap is
# a real token `_`; who and whom are free variants sharing one entry.
_BUILTIN_SOURCE = """
const Alice : e
const Bob : e
const Carol : e
const We : e
const You : e
const Love : e -> e -> t
const Buy : e -> e -> t
const Smoke : e -> t
const For : e -> (e -> t) -> (e -> t)
const Remember : (e ?> t) -> e -> t
const Remember : (e ?> e ?> t) -> e -> t
const Think : t -> e -> t
const Animate : e -> t
const Not : t -> t

Alice : e = Alice
loves : e -> e -> t = Love
love : e -> e -> t = Love
Bob : e = Bob
Carol : e = Carol
everyone : e{t|t} = \\c. forall x. c x
someone : e{t|t} = \\c. exists x. c x
smokes : e -> t = Smoke
smoke : e -> t = Smoke
we : e = We
bought : e -> e -> t = Buy
buy : e -> e -> t = Buy
_ : (e #> g) -> (e #> g) = \\c. c
remembers : (e ?> t) -> e -> t = Remember
remembers : (e ?> e ?> t) -> e -> t = Remember
what : (e #> g) -> (e ?> g) = \\c. \\x. [Not (Animate x)] c x
who : (e #> g) -> (e ?> g) = \\c. \\x. [Animate x] c x
for : e -> (e -> t) -> (e -> t) = For
you : e = You
thinks : t -> e -> t = Think
think : t -> e -> t = Think
"""

_ALIASES = {
    "whom": "who",
    "remember": "remembers",
}


def default_lexicon() -> Lexicon:
    lex = parse_lexicon(_BUILTIN_SOURCE)
    for alias, target in _ALIASES.items():
        lex.entries[alias] = lex.entries[target]
    return lex
