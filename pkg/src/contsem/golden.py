"""Golden corpus files: parsing, running, and comparing expected readings."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from .engine import NoDerivation, SearchOptions, derive, parse_bracketed
from .lexicon import Lexicon, default_lexicon
from .rules import tower
from .types import parse_type


class CorpusError(ValueError):
    pass


@dataclass
class CorpusCase:
    name: str
    input: str
    order: int = 2
    goal: str | None = None
    expected: list[str] = field(default_factory=list)


@dataclass
class CaseResult:
    name: str
    ok: bool
    actual: list[str]
    details: list[str] = field(default_factory=list)


def parse_corpus_file(path: Path) -> CorpusCase:
    """Format: `input:` line, optional `order:`/`goal:` lines, then
    `--- readings` followed by one expected `TERM : TYPE` line per reading."""
    case = CorpusCase(name=path.stem, input="")
    lines = path.read_text(encoding="utf-8").splitlines()
    in_readings = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip()
        if in_readings:
            if line.strip():
                case.expected.append(line.strip())
            continue
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if line.strip() == "--- readings":
            in_readings = True
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise CorpusError(f"{path.name}:{lineno}: expected `key: value`")
        key, value = key.strip(), value.strip()
        if key == "input":
            case.input = value
        elif key == "order":
            case.order = int(value)
        elif key == "goal":
            case.goal = value
        else:
            raise CorpusError(f"{path.name}:{lineno}: unknown option {key!r}")
    if not case.input:
        raise CorpusError(f"{path.name}: missing input line")
    if not in_readings:
        raise CorpusError(f"{path.name}: missing `--- readings` section")
    return case


def run_case(case: CorpusCase, lexicon: Lexicon | None = None) -> CaseResult:
    lexicon = lexicon or default_lexicon()
    opts = SearchOptions(
        order=case.order,
        goal=parse_type(case.goal) if case.goal else None,
    )
    try:
        readings = derive(parse_bracketed(case.input), tower(case.order),
                          lexicon, opts)
        actual = [r.line() for r in readings]
    except NoDerivation:
        actual = []
    ok = actual == case.expected
    details = []
    if not ok:
        details.append("expected:")
        details.extend(f"  {line}" for line in case.expected or ["(none)"])
        details.append("actual:")
        details.extend(f"  {line}" for line in actual or ["(none)"])
    return CaseResult(name=case.name, ok=ok, actual=actual, details=details)


def run_corpus(directory: Path, lexicon: Lexicon | None = None) -> list[CaseResult]:
    lexicon = lexicon or default_lexicon()
    results = []
    for path in sorted(Path(directory).glob("*.txt")):
        case = parse_corpus_file(path)
        results.append(run_case(case, lexicon))
    return results


def default_corpus_dir() -> Path:
    env = os.environ.get("CONTSEM_CORPUS")
    if env:
        return Path(env)
    return Path(__file__).parent / "corpus"
