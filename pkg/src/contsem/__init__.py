"""Continuation-semantics derivation engine for an English interrogative fragment."""

from .engine import (
    DerivationNode,
    NoDerivation,
    Reading,
    SearchOptions,
    TooManyBracketings,
    UnknownWord,
    derive,
    derive_sentence,
    format_tree,
    parse_bracketed,
    rank_ltr,
)
from .lexicon import (
    LexEntry,
    Lexicon,
    LexiconError,
    ParseError,
    TypeMismatch,
    UnknownConstant,
    default_lexicon,
    load_lexicon,
    parse_lexicon,
)
from .rules import (
    GrammarTower,
    InvalidPermutation,
    OrderTooLarge,
    Rule,
    apply_combinator,
    base_rules,
    lift_rule,
    tower,
)
from .terms import (
    App,
    Const,
    Exists,
    Forall,
    FuelExhausted,
    Guard,
    Lam,
    Term,
    Var,
    alpha_equal,
    beta_normalize,
    canonicalize,
    eta_normalize,
    parse_term,
    print_term,
    substitute,
)
from .typecheck import IllTyped, check_term
from .types import (
    Base,
    Cont,
    Fun,
    Mismatch,
    NameSupply,
    OccursCheck,
    Ques,
    Substitution,
    TVar,
    Type,
    TypeScheme,
    UnificationError,
    braced,
    canonical_type,
    instantiate,
    match_pattern,
    parse_type,
    print_type,
    unify,
)

__version__ = "0.1.0"
