"""Fewest distinct swaps that undo a permutation without reusing its 2-cycles."""

from .errors import (
    DisjointnessError,
    InvalidProblemError,
    InvalidRosterError,
    MalformedCycleError,
    MindswapError,
    NeedHelpersError,
    NothingToUndoError,
    PairReusedError,
    ParseError,
    SearchBudgetExceededError,
)
from .perm import (
    IDENTITY,
    CycleDecomposition,
    Order,
    Parity,
    Permutation,
    SwapSequence,
    Transposition,
    apply,
    compose,
    decompose,
    format_cycles,
    format_swaps,
    from_cycles,
    inverse,
    parity,
    parse_cycles,
    product_of,
)
from .solver import (
    FactorizationResult,
    Mode,
    UndoBudget,
    classic_min_count,
    construct_factorization,
    epsilon,
    make_restoration_plan,
    min_undo_count,
)
from .oracle import (
    EntryGraph,
    NotFound,
    SearchProblem,
    brute_force_min,
    certify_formula,
    factorization_graph,
)
from .machine import (
    MachineState,
    Verdict,
    apply_swap,
    new_state,
    replay,
    validate_plan,
)

__version__ = "0.1.0"
