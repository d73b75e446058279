"""Command-line front end: derive sentences, dump rules/lexicon, run the corpus."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .engine import (
    InputError,
    NoDerivation,
    SearchOptions,
    TooManyBracketings,
    UnknownWord,
    derive,
    derive_sentence,
    format_tree,
    parse_bracketed,
)
from .golden import default_corpus_dir, run_corpus
from .lexicon import LexiconError, default_lexicon, load_lexicon
from .rules import OrderTooLarge, tower
from .terms import TermSyntaxError
from .types import TypeSyntaxError, parse_type

EXIT_OK = 0
EXIT_NO_DERIVATION = 1
EXIT_ERROR = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contsem",
        description="Derivation engine for continuation semantics of questions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    derive_p = sub.add_parser("derive", help="enumerate readings of a bracketed sentence")
    derive_p.add_argument("sentence", help="bracketed input, e.g. '(Alice (loves Bob))'")
    derive_p.add_argument("--order", type=int, default=2, metavar="K")
    derive_p.add_argument("--goal", metavar="TYPE")
    derive_p.add_argument("--lexicon", metavar="PATH")
    derive_p.add_argument("--extend", action="store_true",
                          help="merge --lexicon over the built-ins")
    derive_p.add_argument("--max-unary", type=int, default=3, metavar="N")
    derive_p.add_argument("--max-type-depth", type=int, default=12, metavar="N")
    derive_p.add_argument("--all-bracketings", action="store_true",
                          help="treat the input as a flat token list")
    derive_p.add_argument("--prefer-ltr", action="store_true",
                          help="rank left-to-right evaluation first")
    derive_p.add_argument("--trees", action="store_true",
                          help="print a derivation tree per reading")
    derive_p.add_argument("--format", choices=["terms", "types", "trees", "all"],
                          default="all")

    rules_p = sub.add_parser("rules", help="dump the rule set of a tower order")
    rules_p.add_argument("action", nargs="?", choices=["dump"], default="dump")
    rules_p.add_argument("--order", type=int, default=2, metavar="K")

    lex_p = sub.add_parser("lexicon", help="dump the lexicon")
    lex_p.add_argument("--lexicon", metavar="PATH")
    lex_p.add_argument("--extend", action="store_true")

    corpus_p = sub.add_parser("corpus", help="run golden corpus cases")
    corpus_p.add_argument("directory", nargs="?",
                          help="corpus directory (default: CONTSEM_CORPUS or the "
                               "packaged corpus)")
    return parser


def _load_lexicon(args):
    if getattr(args, "lexicon", None):
        return load_lexicon(args.lexicon, extend=args.extend)
    return default_lexicon()


def _cmd_derive(args) -> int:
    lexicon = _load_lexicon(args)
    grammar = tower(args.order)
    goal = parse_type(args.goal) if args.goal else None
    opts = SearchOptions(
        order=args.order,
        max_unary=args.max_unary,
        max_type_depth=args.max_type_depth,
        goal=goal,
        enumerate_bracketings=args.all_bracketings,
        prefer_ltr=args.prefer_ltr,
    )
    try:
        if args.all_bracketings:
            tokens = args.sentence.replace("(", " ").replace(")", " ").split()
            readings = derive_sentence(tokens, grammar, lexicon, opts)
        else:
            readings = derive(parse_bracketed(args.sentence), grammar, lexicon, opts)
    except NoDerivation as exc:
        print("no derivation")
        for line in exc.diagnostics:
            print(f"  {line}", file=sys.stderr)
        return EXIT_NO_DERIVATION

    want_trees = args.trees or args.format == "trees"
    for reading in readings:
        if args.format == "terms":
            print(reading.term_str)
        elif args.format == "types":
            print(reading.type_str)
        elif args.format != "trees":
            print(reading.line())
        if want_trees:
            print(format_tree(reading.derivations[0], indent="  "))
    if args.format == "all":
        n = len(readings)
        print(f"{n} reading{'s' if n != 1 else ''}")
    return EXIT_OK


def _cmd_rules(args) -> int:
    grammar = tower(args.order)
    unary, binary = grammar.unary, grammar.binary
    print(f"order {args.order}: {len(unary)} unary, {len(binary)} binary")
    for rule in unary + binary:
        print(rule.describe())
    return EXIT_OK


def _cmd_lexicon(args) -> int:
    lexicon = _load_lexicon(args)
    for entry in lexicon.all_entries():
        print(entry.describe())
    return EXIT_OK


def _cmd_corpus(args) -> int:
    directory = Path(args.directory) if args.directory else default_corpus_dir()
    results = run_corpus(directory)
    if not results:
        print(f"no corpus cases in {directory}", file=sys.stderr)
        return EXIT_ERROR
    failed = 0
    for result in results:
        print(f"{'PASS' if result.ok else 'FAIL'} {result.name}")
        if not result.ok:
            failed += 1
            for line in result.details:
                print(f"  {line}")
    print(f"{len(results) - failed}/{len(results)} passed")
    return EXIT_OK if failed == 0 else EXIT_NO_DERIVATION


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        if args.command == "derive":
            return _cmd_derive(args)
        if args.command == "rules":
            return _cmd_rules(args)
        if args.command == "lexicon":
            return _cmd_lexicon(args)
        return _cmd_corpus(args)
    except (LexiconError, TypeSyntaxError, TermSyntaxError, InputError,
            UnknownWord, OrderTooLarge, TooManyBracketings, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
