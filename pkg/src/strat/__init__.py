"""Strategies over finite abstract reduction systems.

Extensional strategies are explicit derivation sets with closure checks;
intensional strategies choose next steps from traced histories and can be
materialised up to a depth or witnessed by lassos; logical strategies add
accepting conditions and a bounded non-closedness witness search. The
speclang module reads and writes the .ars document format and the cli module
backs the strat command.
"""

from .ars import (
    Ars,
    Derivation,
    Lasso,
    Step,
    Trace,
    enumerate_derivations,
    reachable_objects,
    rotate_cycle,
    shortest_path_to,
    simple_cycles,
)
from .errors import (
    CyclicOrder,
    FunctionalityViolation,
    IncompatibleTrace,
    MemoryRequired,
    NotComposable,
    NotCompositionClosed,
    NotFactorClosed,
    NotPrefixClosed,
    NoWitnessUpToHorizon,
    ObjectLabelOverlap,
    StratError,
    UndefinedStep,
    UnknownObject,
    UnknownSymbol,
)
from .extensional import (
    AbstractStrategy,
    ApplicationResult,
    ApplicationStatus,
    ClosureVerdict,
    is_closed,
    is_composition_closed,
    is_factor_closed,
    is_prefix_closed,
    prefix_closure,
)
from .intensional import (
    AcceptFiltered,
    Alternate,
    ColorAlternate,
    EvalResult,
    Fail,
    FromTable,
    Greatmost,
    Intersect,
    LabelOrder,
    MaxLen,
    RestrictLabels,
    Strategy,
    TableEntry,
    UnionCommitted,
    UnionPointwise,
    Universal,
    finite_support,
    induced_steps,
    intersect,
    lassos_of_memoryless,
    memoried_from,
    memoryless_from,
    union_committed,
    union_pointwise,
)
from .logic import (
    ACCEPT_ALL,
    AcceptCondition,
    AlternatePredicate,
    And,
    AtObject,
    CustomPredicate,
    ExplicitTraceSet,
    FalsePredicate,
    GreatmostPredicate,
    LabelWordIn,
    LenAtLeast,
    LenAtMost,
    LenEq,
    LenLess,
    LogicalStrategy,
    Not,
    Or,
    Predicate,
    TruePredicate,
    accepted,
    as_logical,
    nonclosed_witness,
    strategy_from_predicate,
)
from .speclang import Diagnostic, SpecDocument, SpecLangError

__version__ = "0.1.0"

__all__ = [
    "Ars",
    "Derivation",
    "Lasso",
    "Step",
    "Trace",
    "enumerate_derivations",
    "reachable_objects",
    "rotate_cycle",
    "shortest_path_to",
    "simple_cycles",
    "StratError",
    "UnknownSymbol",
    "UnknownObject",
    "ObjectLabelOverlap",
    "FunctionalityViolation",
    "UndefinedStep",
    "NotComposable",
    "IncompatibleTrace",
    "MemoryRequired",
    "CyclicOrder",
    "NotPrefixClosed",
    "NotFactorClosed",
    "NotCompositionClosed",
    "NoWitnessUpToHorizon",
    "AbstractStrategy",
    "ApplicationResult",
    "ApplicationStatus",
    "ClosureVerdict",
    "is_prefix_closed",
    "is_factor_closed",
    "is_composition_closed",
    "is_closed",
    "prefix_closure",
    "Strategy",
    "EvalResult",
    "LabelOrder",
    "Universal",
    "Fail",
    "Greatmost",
    "MaxLen",
    "RestrictLabels",
    "Alternate",
    "ColorAlternate",
    "Intersect",
    "UnionPointwise",
    "UnionCommitted",
    "TableEntry",
    "FromTable",
    "AcceptFiltered",
    "intersect",
    "union_pointwise",
    "union_committed",
    "finite_support",
    "induced_steps",
    "lassos_of_memoryless",
    "memoryless_from",
    "memoried_from",
    "Predicate",
    "TruePredicate",
    "FalsePredicate",
    "GreatmostPredicate",
    "LenLess",
    "AlternatePredicate",
    "CustomPredicate",
    "strategy_from_predicate",
    "AcceptCondition",
    "ACCEPT_ALL",
    "LabelWordIn",
    "LenAtLeast",
    "LenAtMost",
    "LenEq",
    "AtObject",
    "ExplicitTraceSet",
    "And",
    "Or",
    "Not",
    "LogicalStrategy",
    "as_logical",
    "accepted",
    "nonclosed_witness",
    "Diagnostic",
    "SpecDocument",
    "SpecLangError",
]
