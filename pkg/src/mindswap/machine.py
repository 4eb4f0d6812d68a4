"""The two-body mind-switch machine that refuses to reuse a pair.

``assignment`` maps each body to the mind currently inside it.  Swapping
bodies ``a`` and ``b`` exchanges their minds, i.e. the new assignment is
``assignment o (a b)``.  After a chronological log ``s1, ..., sk`` the
assignment is ``s1 o ... o sk``, the inverse of the log's product
``sk o ... o s1``.  Both have the same cycle type.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

from .errors import InvalidRosterError, NothingToUndoError, PairReusedError
from .perm import (
    IDENTITY,
    Order,
    Permutation,
    SwapSequence,
    Transposition,
    compose,
    decompose,
    inverse,
)
from .solver import min_undo_count


@dataclass(frozen=True)
class MachineState:
    used_pairs: frozenset[Transposition] = frozenset()
    assignment: Permutation = IDENTITY
    roster: frozenset[int] = frozenset()
    strict: bool = False

    def mind_in(self, body: int) -> int:
        return self.assignment(body)

    def displacement(self) -> Permutation:
        """Mind -> body: where each original mind currently lives."""
        return inverse(self.assignment)

    def is_restored(self) -> bool:
        return self.assignment.is_identity()


def new_state(roster: Iterable[int], *, strict: bool = False) -> MachineState:
    roster = frozenset(roster)
    if not roster:
        raise InvalidRosterError("the roster must name at least one body")
    if any(not isinstance(x, int) or x < 1 for x in roster):
        raise InvalidRosterError("bodies are positive integers")
    return MachineState(roster=roster, strict=strict)


def apply_swap(s: MachineState, t: Transposition) -> MachineState:
    if t in s.used_pairs:
        raise PairReusedError(t)
    roster = s.roster
    if t.a not in roster or t.b not in roster:
        if s.strict:
            raise InvalidRosterError(f"swap {t} names a body outside the roster")
        roster = roster | {t.a, t.b}
    return replace(
        s,
        used_pairs=s.used_pairs | {t},
        assignment=compose(s.assignment, t.as_permutation()),
        roster=roster,
    )


def replay(
    log: SwapSequence, roster: Iterable[int] = (), *, strict: bool = False
) -> MachineState:
    if log.order is not Order.CHRONOLOGICAL:
        raise ValueError("replay expects a chronological log")
    roster = frozenset(roster) | (frozenset() if strict else frozenset(log.labels()))
    state = MachineState(roster=roster, strict=strict)
    for i, t in enumerate(log):
        try:
            state = apply_swap(state, t)
        except PairReusedError as exc:
            raise PairReusedError(exc.pair, index=i) from None
    return state


def state_for_permutation(p: Permutation, used_pairs: Iterable[Transposition] = ()) -> MachineState:
    """A machine whose history multiplied out to ``p``.

    Without ``used_pairs`` the used pairs are taken to be the 2-cycles of
    ``p``, which is exactly the restriction the closed-form count assumes.
    """
    used = frozenset(used_pairs) if used_pairs else frozenset(decompose(p).two_cycles())
    roster = frozenset(p.support) | {x for t in used for x in t}
    return MachineState(used_pairs=used, assignment=inverse(p), roster=roster)


@dataclass(frozen=True)
class Verdict:
    restored: bool
    length: int
    violations: tuple[tuple[int, Transposition], ...] = ()
    budget: int | None = None
    final_assignment: Permutation = IDENTITY
    total_used: int = 0

    @property
    def fresh(self) -> bool:
        return not self.violations

    @property
    def valid(self) -> bool:
        return self.fresh and self.restored

    @property
    def meets_budget(self) -> bool:
        return self.budget is not None and self.length == self.budget

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "restored": self.restored,
            "length": self.length,
            "budget": self.budget,
            "meets_budget": self.meets_budget,
            "violations": [
                {"index": i, "pair": t.as_list()} for i, t in self.violations
            ],
        }


def validate_plan(s: MachineState, plan: SwapSequence) -> Verdict:
    """Run ``plan`` on a copy of ``s`` and report what went wrong, if anything.

    Reused pairs are recorded (with their 0-based index in the plan) and
    then applied anyway so the final assignment is still meaningful.
    """
    if plan.order is not Order.CHRONOLOGICAL:
        raise ValueError("plans are chronological")
    try:
        budget = min_undo_count(decompose(s.assignment)).M
    except NothingToUndoError:
        budget = 0

    used = set(s.used_pairs)
    assignment = s.assignment
    violations = []
    for i, t in enumerate(plan):
        if t in used:
            violations.append((i, t))
        used.add(t)
        assignment = compose(assignment, t.as_permutation())
    return Verdict(
        restored=assignment.is_identity(),
        length=len(plan),
        violations=tuple(violations),
        budget=budget,
        final_assignment=assignment,
        total_used=len(used),
    )
