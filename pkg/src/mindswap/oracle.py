"""Brute-force search for shortest transposition factorizations.

This is deliberately independent of the closed-form count in
:mod:`mindswap.solver`: it only knows how to multiply transpositions and
counts cycles for an admissible lower bound.  Search is iterative
deepening over the factorization length, restricted to lengths of the
right parity.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidProblemError
from .perm import (
    Order,
    Permutation,
    SwapSequence,
    Transposition,
    decompose,
)
from .solver import FactorizationResult, default_helpers, min_undo_count

DEFAULT_UNIVERSE_CAP = 8


@dataclass(frozen=True)
class SearchProblem:
    target: Permutation
    universe: frozenset[int]
    forbidden: frozenset[Transposition] = frozenset()
    allow_repeats: bool = False
    max_depth: int = 12
    max_universe: int = DEFAULT_UNIVERSE_CAP
    max_nodes: int | None = None

    def validate(self):
        if self.max_depth < 1:
            raise InvalidProblemError("max_depth must be at least 1")
        if not self.target.support <= self.universe:
            raise InvalidProblemError("target moves labels outside the universe")
        if len(self.universe) > self.max_universe:
            raise InvalidProblemError(
                f"universe has {len(self.universe)} labels, cap is {self.max_universe}"
            )
        for t in self.forbidden:
            if t.a not in self.universe or t.b not in self.universe:
                raise InvalidProblemError(f"forbidden pair {t} is outside the universe")


@dataclass(frozen=True)
class NotFound:
    """No factorization of length at most ``explored_depth`` exists (or the
    node budget ran out first, when ``exhausted_budget`` is set)."""

    explored_depth: int
    exhausted_budget: bool = False
    nodes: int = 0

    def __bool__(self):
        return False


class _Budget(Exception):
    pass


@dataclass
class _Searcher:
    size: int
    moves: list[tuple[int, int]]
    allow_repeats: bool
    # index of each interchangeable outside label in first-use order, -1 otherwise
    helper_rank: list[int]
    max_nodes: int | None
    nodes: int = 0
    rem: list[int] = field(default_factory=list)
    pos: list[int] = field(default_factory=list)

    def distance(self) -> int:
        seen = [False] * self.size
        cycles = 0
        for i in range(self.size):
            if not seen[i]:
                cycles += 1
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = self.rem[j]
        return self.size - cycles

    def same_cycle(self, i: int, j: int) -> bool:
        rem = self.rem
        x = rem[i]
        while x != i:
            if x == j:
                return True
            x = rem[x]
        return False

    def swap_values(self, i: int, j: int):
        # rem <- (i j) o rem
        pi, pj = self.pos[i], self.pos[j]
        self.rem[pi], self.rem[pj] = j, i
        self.pos[i], self.pos[j] = pj, pi

    def run(self, target: list[int], depth: int) -> list[int] | None:
        self.rem = list(target)
        self.pos = [0] * self.size
        for i, v in enumerate(self.rem):
            self.pos[v] = i
        self.used = [False] * len(self.moves)
        self.path: list[int] = []
        self.helpers_taken = 0
        if self._dfs(depth, self.distance()):
            return list(self.path)
        return None

    def _dfs(self, remaining: int, dist: int) -> bool:
        if remaining == 0:
            return dist == 0
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise _Budget
        rank = self.helper_rank
        for k, (i, j) in enumerate(self.moves):
            if self.used[k] and not self.allow_repeats:
                continue
            taken = self.helpers_taken
            fresh = 0
            ok = True
            for x in (i, j):
                h = rank[x]
                if h >= 0 and h >= taken:
                    if h != taken + fresh:
                        ok = False
                        break
                    fresh += 1
            if not ok:
                continue
            new_dist = dist - 1 if self.same_cycle(i, j) else dist + 1
            if new_dist > remaining - 1:
                continue
            self.swap_values(i, j)
            self.used[k] = True
            self.path.append(k)
            self.helpers_taken = taken + fresh
            if self._dfs(remaining - 1, new_dist):
                return True
            self.helpers_taken = taken
            self.path.pop()
            self.used[k] = False
            self.swap_values(i, j)
        return False


def brute_force_min(problem: SearchProblem) -> FactorizationResult | NotFound:
    """Shortest written-product factorization of ``problem.target``.

    Factors come from the universe, avoid ``forbidden``, and are pairwise
    distinct unless ``allow_repeats``.  Among the shortest solutions the
    lexicographically least sequence is returned.  Returns a falsy
    :class:`NotFound` when nothing exists up to ``max_depth``.
    """
    problem.validate()
    labels = sorted(problem.universe)
    index = {x: i for i, x in enumerate(labels)}
    size = len(labels)
    target = [index[problem.target(x)] for x in labels]

    moves = [
        (index[a], index[b])
        for a, b in itertools.combinations(labels, 2)
        if Transposition(a, b) not in problem.forbidden
    ]
    forbidden_labels = {x for t in problem.forbidden for x in t}
    interchangeable = [
        x for x in labels if x not in problem.target.support and x not in forbidden_labels
    ]
    helper_rank = [-1] * size
    for h, x in enumerate(interchangeable):
        helper_rank[index[x]] = h

    searcher = _Searcher(size, moves, problem.allow_repeats, helper_rank, problem.max_nodes)
    parity = _distance(target) % 2
    explored = -1
    try:
        for depth in range(parity, problem.max_depth + 1, 2):
            path = searcher.run(target, depth)
            if path is not None:
                swaps = [Transposition(labels[moves[k][0]], labels[moves[k][1]]) for k in path]
                return FactorizationResult(
                    factors=SwapSequence(swaps, Order.PRODUCT),
                    target=problem.target,
                    forbidden=problem.forbidden,
                    helpers_used=frozenset(
                        x for t in swaps for x in t if x not in problem.target.support
                    ),
                )
            explored = depth
    except _Budget:
        return NotFound(explored_depth=max(explored, 0), exhausted_budget=True, nodes=searcher.nodes)
    return NotFound(explored_depth=explored, nodes=searcher.nodes)


def _distance(perm: list[int]) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for i in range(len(perm)):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return len(perm) - cycles


def enumerate_min(problem: SearchProblem) -> int | None:
    """Unpruned exhaustive reference: shortest length by trying every
    sequence of allowed transpositions, shortest first.  Tiny inputs only."""
    problem.validate()
    allowed = [
        Transposition(a, b)
        for a, b in itertools.combinations(sorted(problem.universe), 2)
        if Transposition(a, b) not in problem.forbidden
    ]
    target = problem.target
    for w in range(problem.max_depth + 1):
        if problem.allow_repeats:
            seqs = itertools.product(allowed, repeat=w)
        else:
            seqs = itertools.permutations(allowed, w)
        for seq in seqs:
            if _multiply(seq, target.support | problem.universe) == target:
                return w
    return None


def _multiply(seq: Sequence[Transposition], labels: Iterable[int]) -> Permutation:
    out = {}
    for x in labels:
        y = x
        for t in reversed(seq):
            if y == t.a:
                y = t.b
            elif y == t.b:
                y = t.a
        out[x] = y
    return Permutation(out)


# ---------------------------------------------------------------------------
# Graph diagnostics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EntryGraph:
    vertices: frozenset[int]
    edges: tuple[Transposition, ...]
    components: tuple[frozenset[int], ...]

    def component_of(self, x: int) -> frozenset[int]:
        for comp in self.components:
            if x in comp:
                return comp
        raise KeyError(x)

    def edges_in(self, comp: frozenset[int]) -> list[Transposition]:
        return [e for e in self.edges if e.a in comp]


def factorization_graph(seq: SwapSequence | Iterable[Transposition]) -> EntryGraph:
    """Graph whose vertices are the labels in ``seq`` and whose edges are
    its factors (repeated factors collapse to one edge)."""
    edges = tuple(dict.fromkeys(seq))
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        for x in e:
            parent.setdefault(x, x)
        ra, rb = find(e.a), find(e.b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    groups: dict[int, set[int]] = {}
    for x in parent:
        groups.setdefault(find(x), set()).add(x)
    components = tuple(sorted((frozenset(g) for g in groups.values()), key=min))
    return EntryGraph(frozenset(parent), edges, components)


# ---------------------------------------------------------------------------
# Certification of the closed form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CertifyCase:
    target: Permutation
    nmr: tuple[int, int, int]
    expected: int
    found: int | None
    extra_labels: int = 0

    @property
    def ok(self) -> bool:
        return self.found == self.expected


@dataclass
class CertifyReport:
    n_max: int
    exhaustive: bool
    cases: list[CertifyCase] = field(default_factory=list)
    skipped: int = 0
    seconds: float = 0.0
    budget_exceeded: bool = False

    @property
    def checked(self) -> int:
        return len(self.cases)

    @property
    def mismatches(self) -> list[CertifyCase]:
        return [c for c in self.cases if not c.ok]

    def summary(self) -> str:
        if self.exhaustive and not self.budget_exceeded:
            scope = f"checked all {self.checked} permutations"
        elif self.exhaustive:
            scope = f"checked {self.checked} permutations"
        else:
            scope = f"checked {self.checked} sampled permutations"
        line = (
            f"n_max={self.n_max}: {scope}, "
            f"{len(self.mismatches)} mismatches, {self.seconds:.1f}s"
        )
        if self.budget_exceeded:
            line += f", stopped early ({self.skipped} not checked)"
        return line

    def to_json(self) -> dict:
        return {
            "n_max": self.n_max,
            "exhaustive": self.exhaustive,
            "checked": self.checked,
            "skipped": self.skipped,
            "budget_exceeded": self.budget_exceeded,
            "seconds": round(self.seconds, 3),
            "mismatches": [
                {
                    "target": str(c.target),
                    "nmr": list(c.nmr),
                    "expected": c.expected,
                    "found": c.found,
                    "extra_labels": c.extra_labels,
                }
                for c in self.mismatches
            ],
        }


def all_permutations(n_max: int) -> list[Permutation]:
    """Every non-identity permutation moving only labels in 1..n_max."""
    labels = list(range(1, n_max + 1))
    out = []
    for images in itertools.permutations(labels):
        p = Permutation(dict(zip(labels, images)))
        if not p.is_identity():
            out.append(p)
    return out


def certify_problem(p: Permutation, extra_labels: int = 0) -> SearchProblem:
    """The search problem whose answer should equal ``M`` for ``p``."""
    d = decompose(p)
    budget = min_undo_count(d)
    extra = max(extra_labels, budget.helpers_required)
    universe = set(p.support) | set(default_helpers(p.support, extra) if extra else [])
    return SearchProblem(
        target=p,
        universe=frozenset(universe),
        forbidden=frozenset(d.two_cycles()),
        max_depth=budget.M + 2,
        max_universe=max(DEFAULT_UNIVERSE_CAP, len(universe)),
    )


def check_one(p: Permutation, extra_labels: int = 0) -> CertifyCase:
    d = decompose(p)
    found = brute_force_min(certify_problem(p, extra_labels))
    return CertifyCase(
        target=p,
        nmr=d.nmr,
        expected=min_undo_count(d).M,
        found=len(found) if found else None,
        extra_labels=extra_labels,
    )


def _check_args(args):
    return check_one(*args)


def certify_formula(
    n_max: int,
    *,
    samples: int | None = None,
    seed: int = 0,
    extra_labels: int = 0,
    time_budget: float | None = None,
    workers: int = 1,
) -> CertifyReport:
    """Compare the brute-force minimum with the closed form.

    With ``samples`` unset every non-identity permutation of ``1..n_max``
    is checked (sensible up to ``n_max = 6``); otherwise ``samples``
    random ones are drawn with ``seed``.  ``extra_labels`` widens each
    universe by that many outside labels.  Mismatches go in the report.
    """
    start = time.monotonic()
    exhaustive = samples is None
    if exhaustive:
        perms = all_permutations(n_max)
    else:
        rng = random.Random(seed)
        labels = list(range(1, n_max + 1))
        perms = []
        while len(perms) < samples:
            images = labels[:]
            rng.shuffle(images)
            p = Permutation(dict(zip(labels, images)))
            if not p.is_identity():
                perms.append(p)

    report = CertifyReport(n_max=n_max, exhaustive=exhaustive)
    jobs = [(p, extra_labels) for p in perms]

    def out_of_time():
        return time_budget is not None and time.monotonic() - start > time_budget

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_check_args, job) for job in jobs]
            for fut in futures:
                if out_of_time():
                    report.budget_exceeded = True
                    break
                report.cases.append(fut.result())
            for fut in futures:
                fut.cancel()
    else:
        for job in jobs:
            if out_of_time():
                report.budget_exceeded = True
                break
            report.cases.append(check_one(*job))

    report.skipped = len(jobs) - len(report.cases)
    report.cases.sort(key=lambda c: (c.nmr, sorted(c.target.items())))
    report.seconds = time.monotonic() - start
    return report
