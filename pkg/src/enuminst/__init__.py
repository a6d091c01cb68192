"""Enumerative quantifier instantiation for EUF."""

from .engine import (
    DUPLICATE_FORMULA,
    DUPLICATE_VECTOR,
    ENTAILED,
    Engine,
    EngineConfig,
    EngineTimeout,
    ROUND_LIMIT,
    SATURATED,
    SolveResult,
    Stats,
    solve,
)
from .ground_solver import CongruenceClosure, GroundState
from .pattern_trie import PatternTrie, VectorTrie, WILDCARD
from .smt_parser import (
    InputError,
    Problem,
    SmtSyntaxError,
    SortMismatchError,
    UndeclaredSymbolError,
    UnsupportedConstructError,
    parse_problem,
)
from .terms import (
    BOOL,
    EqAtom,
    Literal,
    QuantifiedFormula,
    TRUE_CLAUSE,
    Term,
    TermBank,
    Var,
    apply_substitution,
    normalize,
)
from .tuple_enum import (
    Bounds,
    Enumerator,
    Strategy,
    make_enumerator,
    pareto_dominates,
    parse_strategy,
    successors,
)

__version__ = "0.1.0"
