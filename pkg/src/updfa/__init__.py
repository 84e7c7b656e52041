"""Ultimately periodic sets of naturals and their digit automata.

Numbers are written least significant digit first over {0, ..., base-1}.
The package builds minimal automata of ultimately periodic sets, recognizes
Pascal-automaton quotients, and decides in time linear in the automaton
whether an arbitrary DFA accepts an ultimately periodic set by value.
"""

from .automaton import (
    Condensation,
    Dfa,
    SccType,
    accepts,
    check_zero_stability,
    complete,
    condensation,
    is_group_automaton,
    isomorphic,
    minimize,
    parse_dfa,
    validate,
    write_dfa,
)
from .decision import (
    ConditionFailure,
    DecisionResult,
    Embedding,
    build_embedding,
    check_conditions,
    decide,
    extract_parameters,
)
from .errors import (
    BadDigit,
    BadStateId,
    BaseTooSmall,
    ExtractionCapExceeded,
    FormatError,
    InsufficientData,
    NotCanonical,
    NotCoprime,
    NotGroupAutomaton,
    NotPascalLike,
    PreconditionViolated,
    StateLimitExceeded,
    UpdfaError,
)
from .numeration import (
    ALL_NATURALS,
    EMPTY_SET,
    CharacteristicProfile,
    UpSet,
    build_atomic_explicit,
    build_minimal_automaton,
    canonicalize,
    delta,
    delta_word,
    format_upset,
    h_p,
    membership,
    representation,
    value,
)
from .pascal import (
    GElem,
    PascalParams,
    QuotientCheck,
    QuotientFailure,
    add_g_letter,
    analyze_quotient,
    build_pascal,
    build_quotient,
    format_params,
    group_op,
    is_pascal_quotient,
    multiplicative_order,
    verify_simplification,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_NATURALS",
    "BadDigit",
    "BadStateId",
    "BaseTooSmall",
    "CharacteristicProfile",
    "ConditionFailure",
    "Condensation",
    "DecisionResult",
    "Dfa",
    "EMPTY_SET",
    "Embedding",
    "ExtractionCapExceeded",
    "FormatError",
    "GElem",
    "InsufficientData",
    "NotCanonical",
    "NotCoprime",
    "NotGroupAutomaton",
    "NotPascalLike",
    "PascalParams",
    "PreconditionViolated",
    "QuotientCheck",
    "QuotientFailure",
    "SccType",
    "StateLimitExceeded",
    "UpSet",
    "UpdfaError",
    "accepts",
    "add_g_letter",
    "analyze_quotient",
    "build_atomic_explicit",
    "build_embedding",
    "build_minimal_automaton",
    "build_pascal",
    "build_quotient",
    "canonicalize",
    "check_conditions",
    "check_zero_stability",
    "complete",
    "condensation",
    "decide",
    "delta",
    "delta_word",
    "extract_parameters",
    "format_params",
    "format_upset",
    "group_op",
    "h_p",
    "is_group_automaton",
    "is_pascal_quotient",
    "isomorphic",
    "membership",
    "minimize",
    "multiplicative_order",
    "parse_dfa",
    "representation",
    "validate",
    "value",
    "verify_simplification",
    "write_dfa",
]
