"""Minimum undo counts and explicit minimum-length factorizations.

For a permutation ``P`` with ``n`` moved labels in ``m`` disjoint cycles,
``r`` of which are transpositions, the fewest pairwise-distinct
transpositions, none equal to a 2-cycle of ``P``, that multiply to ``P`` is

    5                     if n == 2
    n - m + r + eps(r)    otherwise, eps(r) = r mod 2.

:func:`construct_factorization` builds a factorization of exactly that
length from a handful of fixed blocks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NeedHelpersError, NothingToUndoError, SearchBudgetExceededError
from .perm import (
    CycleDecomposition,
    Order,
    Permutation,
    SwapSequence,
    Transposition,
    decompose,
)


DEFAULT_HISTORY_NODES = 2_000_000


@dataclass(frozen=True)
class UndoBudget:
    n: int
    m: int
    r: int
    M: int
    epsilon: int
    helpers_required: int


@dataclass(frozen=True)
class FactorizationResult:
    factors: SwapSequence
    target: Permutation
    forbidden: frozenset[Transposition]
    helpers_used: frozenset[int]

    def __len__(self):
        return len(self.factors)


class Mode(enum.Enum):
    THEOREM = "theorem"
    HISTORY = "history"


def epsilon(r: int) -> int:
    if r < 0:
        raise ValueError("r must be nonnegative")
    return r % 2


def _as_decomposition(d: CycleDecomposition | Permutation) -> CycleDecomposition:
    return decompose(d) if isinstance(d, Permutation) else d


def min_undo_count(d: CycleDecomposition | Permutation) -> UndoBudget:
    d = _as_decomposition(d)
    if d.is_empty():
        raise NothingToUndoError("the identity permutation has nothing to undo")
    n, m, r = d.nmr
    eps = epsilon(r)
    if n == 2:
        return UndoBudget(n, m, r, M=5, epsilon=eps, helpers_required=2)
    return UndoBudget(n, m, r, M=n - m + r + eps, epsilon=eps, helpers_required=0)


def classic_min_count(d: CycleDecomposition | Permutation) -> int:
    """Fewest transpositions with no restriction on which ones: ``n - m``."""
    d = _as_decomposition(d)
    if d.is_empty():
        raise NothingToUndoError("the identity permutation has nothing to undo")
    return d.n - d.m


def nmr_budget(n: int, m: int, r: int) -> int:
    """``M(n, m, r)`` straight from the counts, no permutation needed."""
    if n < 2 or m < 1 or r > m or n < 2 * m - r:
        raise ValueError(f"no permutation has (n, m, r) = ({n}, {m}, {r})")
    if n == 2:
        return 5
    return n - m + r + epsilon(r)


# Blocks below are lists of (x, y) label pairs in written-product order.

def chain_block(cycle: Sequence[int]) -> list[tuple[int, int]]:
    """(c1 c2 ... cl) = (c1 c2)(c2 c3)...(c_{l-1} c_l)."""
    return [(cycle[i], cycle[i + 1]) for i in range(len(cycle) - 1)]


def merge_block(pair: Sequence[int], cycle: Sequence[int]) -> list[tuple[int, int]]:
    """(a b)(c1 ... cl) as l + 2 transpositions avoiding (a b).

    (b c1)(a cl)(a c_{l-1})...(a c1)(b cl)
    """
    a, b = pair
    first, last = cycle[0], cycle[-1]
    return [(b, first)] + [(a, c) for c in reversed(cycle)] + [(b, last)]


def double_block(p1: Sequence[int], p2: Sequence[int]) -> list[tuple[int, int]]:
    """(a b)(c d) = (b d)(a c)(b c)(a d)."""
    a, b = p1
    c, d = p2
    return [(b, d), (a, c), (b, c), (a, d)]


def triple_block(
    p1: Sequence[int], p2: Sequence[int], p3: Sequence[int]
) -> list[tuple[int, int]]:
    """(12)(34)(56) = (15)(25)(35)(46)(45)(16)(13), relabelled."""
    lab = {1: p1[0], 2: p1[1], 3: p2[0], 4: p2[1], 5: p3[0], 6: p3[1]}
    template = [(1, 5), (2, 5), (3, 5), (4, 6), (4, 5), (1, 6), (1, 3)]
    return [(lab[x], lab[y]) for x, y in template]


def helper_block(pair: Sequence[int], helpers: Sequence[int]) -> list[tuple[int, int]]:
    """(a b) = (c d)(b c)(a d)(a c)(b d) using outside labels c, d."""
    a, b = pair
    c, d = helpers
    return [(c, d), (b, c), (a, d), (a, c), (b, d)]


def construct_factorization(
    p: Permutation, helper_pool: Sequence[int] = ()
) -> FactorizationResult:
    """Build a minimum-length factorization of ``p`` (written-product order).

    The factors are pairwise distinct and none equals a 2-cycle of ``p``.
    Only a single transposition needs outside labels; the first two labels
    of ``helper_pool`` outside the support are used for it.
    """
    d = decompose(p)
    if d.is_empty():
        raise NothingToUndoError("the identity permutation has nothing to undo")

    pairs = [c for c in d.cycles if len(c) == 2]
    longs = [c for c in d.cycles if len(c) > 2]
    helpers_used: tuple[int, ...] = ()
    blocks: list[list[tuple[int, int]]] = []

    if d.n == 2:
        free = [h for h in dict.fromkeys(helper_pool) if h not in p.support]
        if len(free) < 2:
            raise NeedHelpersError(2, len(free))
        helpers_used = tuple(free[:2])
        blocks.append(helper_block(pairs[0], helpers_used))
    elif len(pairs) == 1:
        # longs is sorted by smallest label, so longs[0] is the one to merge
        blocks.append(merge_block(pairs[0], longs[0]))
        blocks.extend(chain_block(c) for c in longs[1:])
    else:
        rest = pairs
        if len(pairs) % 2:
            blocks.append(triple_block(*pairs[:3]))
            rest = pairs[3:]
        for i in range(0, len(rest), 2):
            blocks.append(double_block(rest[i], rest[i + 1]))
        blocks.extend(chain_block(c) for c in longs)

    factors = SwapSequence([f for block in blocks for f in block], Order.PRODUCT)
    return FactorizationResult(
        factors=factors,
        target=p,
        forbidden=frozenset(d.two_cycles()),
        helpers_used=frozenset(helpers_used),
    )


def default_helpers(support: Iterable[int], count: int = 2) -> list[int]:
    """The ``count`` smallest positive labels not in ``support``."""
    taken = set(support)
    out = []
    x = 1
    while len(out) < count:
        if x not in taken:
            out.append(x)
        x += 1
    return out


def make_restoration_plan(
    history: SwapSequence,
    helper_pool: Sequence[int] = (),
    mode: Mode = Mode.THEOREM,
    *,
    max_depth: int | None = None,
    max_universe: int | None = None,
    max_nodes: int | None = None,
) -> SwapSequence:
    """Chronological swaps that undo ``history``.

    THEOREM mode avoids only the 2-cycles of the history's product and has
    exactly the minimum length.  HISTORY mode avoids every pair already
    used; it reuses the THEOREM plan when that plan is provably shortest
    and collision-free, and otherwise runs the brute-force search over the
    moved bodies plus ``helper_pool``.
    """
    if len(history) == 0:
        raise NothingToUndoError("empty history")
    p = history.product()
    if p.is_identity():
        raise NothingToUndoError("the history already multiplies to the identity")

    if mode is Mode.THEOREM:
        return theorem_plan(p, helper_pool)

    used = frozenset(history.swaps)
    if len(used) != len(history):
        raise ValueError("history reuses a pair, which the machine cannot do")
    return history_plan(
        p,
        used,
        helper_pool,
        max_depth=max_depth,
        max_universe=max_universe,
        max_nodes=max_nodes,
    )


def theorem_plan(p: Permutation, helper_pool: Sequence[int] = ()) -> SwapSequence:
    """Chronological undo for a machine whose history multiplied to ``p``."""
    # Q = q1 q2 ... qM equals P and every q is an involution, so
    # Q^{-1} = qM ... q1, whose chronological reading is q1, q2, ..., qM.
    q = construct_factorization(p, helper_pool).factors
    return SwapSequence(q.swaps, Order.CHRONOLOGICAL)


def history_plan(
    p: Permutation,
    used: frozenset[Transposition],
    helper_pool: Sequence[int] = (),
    *,
    max_depth: int | None = None,
    max_universe: int | None = None,
    max_nodes: int | None = None,
) -> SwapSequence:
    """Plan for ``p`` whose swaps avoid every pair in ``used``.

    Shortest among plans using only the moved bodies and ``helper_pool``.
    """
    from . import oracle

    d = decompose(p)
    budget = min_undo_count(d)
    two_cycles = set(d.two_cycles())
    try:
        candidate = construct_factorization(p, helper_pool)
    except NeedHelpersError:
        candidate = None
    if (
        candidate is not None
        and two_cycles <= used
        and not (set(candidate.factors.swaps) & used)
    ):
        # every 2-cycle of P is forbidden, so M is a lower bound here and a
        # collision-free length-M plan is optimal
        return SwapSequence(candidate.factors.swaps, Order.CHRONOLOGICAL)

    universe = set(p.support) | set(helper_pool)
    cap = max_universe if max_universe is not None else oracle.DEFAULT_UNIVERSE_CAP
    if len(universe) > cap:
        raise SearchBudgetExceededError(
            f"search universe of {len(universe)} bodies exceeds the cap of {cap}"
        )
    depth = max_depth if max_depth is not None else budget.M + 4
    problem = oracle.SearchProblem(
        target=p,
        universe=frozenset(universe),
        forbidden=frozenset(t for t in used if t.a in universe and t.b in universe),
        allow_repeats=False,
        max_depth=depth,
        max_universe=cap,
        max_nodes=max_nodes if max_nodes is not None else DEFAULT_HISTORY_NODES,
    )
    found = oracle.brute_force_min(problem)
    if not found:
        raise SearchBudgetExceededError(
            f"no plan avoiding the history found up to depth {found.explored_depth}",
            explored_depth=found.explored_depth,
        )
    return SwapSequence(found.factors.swaps, Order.CHRONOLOGICAL)
