"""Permutations of positive-integer labels, stored sparsely.

A :class:`Permutation` keeps only the labels it moves.  Composition follows
function notation: ``compose(f, g)`` maps ``x`` to ``f(g(x))``, so in a
written product such as ``(45)(89)(12)`` the rightmost factor acts first.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DisjointnessError, MalformedCycleError, ParseError


class Permutation(Mapping[int, int]):
    """Immutable finite bijection on positive integers.

    Behaves as a read-only mapping over its support (the moved labels).
    Calling it on any label returns the image, which is the label itself
    outside the support.
    """

    __slots__ = ("_map", "_hash")

    def __init__(self, mapping: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        raw = dict(mapping)
        for k, v in raw.items():
            if not isinstance(k, int) or not isinstance(v, int) or k < 1 or v < 1:
                raise ValueError(f"labels must be positive integers, got {k!r}->{v!r}")
        if set(raw.values()) != set(raw):
            raise ValueError("mapping is not a bijection on its keys")
        self._map = {k: v for k, v in sorted(raw.items()) if k != v}
        self._hash = hash(frozenset(self._map.items()))

    def __getitem__(self, key: int) -> int:
        return self._map[key]

    def __iter__(self) -> Iterator[int]:
        return iter(self._map)

    def __len__(self) -> int:
        return len(self._map)

    def __call__(self, x: int) -> int:
        return self._map.get(x, x)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Permutation):
            return self._map == other._map
        return NotImplemented

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r})"

    def __str__(self) -> str:
        return format_cycles(self)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self._map)

    def is_identity(self) -> bool:
        return not self._map

    def inverse(self) -> Permutation:
        return inverse(self)


IDENTITY = Permutation()


@dataclass(frozen=True, order=True)
class Transposition:
    """Unordered pair of distinct labels, stored with ``a < b``."""

    a: int
    b: int

    def __post_init__(self):
        a, b = self.a, self.b
        if not isinstance(a, int) or not isinstance(b, int):
            raise TypeError("transposition labels must be integers")
        if a == b:
            raise ValueError(f"transposition needs two distinct labels, got ({a} {b})")
        if min(a, b) < 1:
            raise ValueError("labels must be positive")
        if a > b:
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "b", a)

    def __iter__(self):
        yield self.a
        yield self.b

    def __contains__(self, x: int) -> bool:
        return x == self.a or x == self.b

    def as_permutation(self) -> Permutation:
        return Permutation({self.a: self.b, self.b: self.a})

    def as_list(self) -> list[int]:
        return [self.a, self.b]

    def __str__(self) -> str:
        return _format_cycle((self.a, self.b), self.b >= 10)


class Order(enum.Enum):
    """How a list of swaps is read.

    ``PRODUCT``: written product, rightmost factor acts first.
    ``CHRONOLOGICAL``: first list entry happens first.
    """

    CHRONOLOGICAL = "chronological"
    PRODUCT = "product"


@dataclass(frozen=True)
class SwapSequence:
    swaps: tuple[Transposition, ...]
    order: Order

    def __init__(self, swaps: Iterable[Transposition | Sequence[int]], order: Order):
        if not isinstance(order, Order):
            raise TypeError("order must be an Order member")
        object.__setattr__(
            self,
            "swaps",
            tuple(s if isinstance(s, Transposition) else Transposition(*s) for s in swaps),
        )
        object.__setattr__(self, "order", order)

    def __len__(self) -> int:
        return len(self.swaps)

    def __iter__(self) -> Iterator[Transposition]:
        return iter(self.swaps)

    def as_order(self, order: Order) -> SwapSequence:
        """Re-read the same physical sequence under another convention."""
        if order is self.order:
            return self
        return SwapSequence(reversed(self.swaps), order)

    def product(self) -> Permutation:
        """The permutation this sequence multiplies out to.

        For a chronological sequence ``s1, ..., sk`` this is ``sk ... s1``.
        """
        factors = self.as_order(Order.PRODUCT).swaps
        return product_of(factors)

    def labels(self) -> list[int]:
        return sorted({x for t in self.swaps for x in t})

    def to_lists(self) -> list[list[int]]:
        return [t.as_list() for t in self.swaps]


@dataclass(frozen=True)
class CycleDecomposition:
    """Disjoint nontrivial cycles plus the counts (n, m, r).

    ``n`` is the number of moved labels, ``m`` the number of cycles and
    ``r`` how many of them are transpositions.
    """

    cycles: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.cycles)

    @property
    def m(self) -> int:
        return len(self.cycles)

    @property
    def r(self) -> int:
        return sum(1 for c in self.cycles if len(c) == 2)

    @property
    def nmr(self) -> tuple[int, int, int]:
        return self.n, self.m, self.r

    def two_cycles(self) -> list[Transposition]:
        return [Transposition(*c) for c in self.cycles if len(c) == 2]

    def long_cycles(self) -> list[tuple[int, ...]]:
        return [c for c in self.cycles if len(c) > 2]

    def is_empty(self) -> bool:
        return not self.cycles


def from_cycles(cycles: Iterable[Sequence[int]]) -> Permutation:
    mapping: dict[int, int] = {}
    for cycle in cycles:
        cycle = list(cycle)
        if len(cycle) < 2:
            raise MalformedCycleError(f"cycle {cycle} has fewer than two labels")
        if len(set(cycle)) != len(cycle):
            raise MalformedCycleError(f"cycle {cycle} repeats a label")
        for x in cycle:
            if x in mapping:
                raise DisjointnessError(f"label {x} appears in more than one cycle")
        for i, x in enumerate(cycle):
            mapping[x] = cycle[(i + 1) % len(cycle)]
    return Permutation(mapping)


def compose(f: Permutation, g: Permutation) -> Permutation:
    """Return ``f o g``: apply ``g`` first, then ``f``."""
    keys = f.support | g.support
    return Permutation({x: f(g(x)) for x in keys})


def product_of(factors: Iterable[Permutation | Transposition]) -> Permutation:
    """Multiply factors written left to right in function notation."""
    result: dict[int, int] = {}
    perms = [t.as_permutation() if isinstance(t, Transposition) else t for t in factors]
    keys = set().union(*(p.support for p in perms)) if perms else set()
    for x in keys:
        y = x
        for p in reversed(perms):
            y = p(y)
        result[x] = y
    return Permutation(result)


def inverse(p: Permutation) -> Permutation:
    return Permutation({v: k for k, v in p.items()})


def apply(p: Permutation, x: int) -> int:
    return p(x)


def decompose(p: Permutation) -> CycleDecomposition:
    """Canonical cycle decomposition.

    Each cycle starts at its smallest label and cycles are ordered by that
    label.  The identity gives an empty decomposition (n = m = r = 0).
    """
    seen: set[int] = set()
    cycles = []
    for start in sorted(p.support):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        x = p(start)
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = p(x)
        cycles.append(tuple(cycle))
    return CycleDecomposition(tuple(cycles))


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"


def parity(p: Permutation) -> Parity:
    d = decompose(p)
    return Parity.ODD if (d.n - d.m) % 2 else Parity.EVEN


_GROUP = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> Permutation:
    """Read cycle notation such as ``(12)(3456789)`` or ``(10, 11)(2 3)``.

    Inside a group, labels are single digits unless the group contains a
    comma or whitespace, in which case those separate the labels.  The
    groups are multiplied as a written product (rightmost acts first), so
    overlapping groups are allowed.  ``()`` and the empty string denote
    the identity; one-label groups are fixed points.
    """
    stripped = text.strip()
    depth = 0
    for ch in stripped:
        if ch == "(":
            depth += 1
            if depth > 1:
                raise ParseError(f"nested parenthesis in {text!r}")
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
    if depth:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    leftover = _GROUP.sub("", stripped)
    if leftover.strip(" \t*·"):
        raise ParseError(f"unexpected text {leftover.strip()!r} outside parentheses")

    factors = []
    for body in _GROUP.findall(stripped):
        body = body.strip()
        if not body:
            continue
        if re.search(r"[,\s]", body):
            tokens = [t for t in re.split(r"[,\s]+", body) if t]
        else:
            tokens = list(body)
        labels = []
        for tok in tokens:
            if not tok.isdigit():
                raise ParseError(f"non-numeric label {tok!r}")
            label = int(tok)
            if label < 1:
                raise ParseError(f"label {label} is not positive")
            labels.append(label)
        if len(set(labels)) != len(labels):
            raise ParseError(f"cycle ({body}) repeats a label")
        if len(labels) > 1:
            factors.append(from_cycles([labels]))
    return product_of(factors)


def _format_cycle(cycle: Sequence[int], commas: bool) -> str:
    sep = "," if commas else ""
    return "(" + sep.join(str(x) for x in cycle) + ")"


def format_cycles(p: Permutation | CycleDecomposition) -> str:
    """Canonical cycle notation; ``()`` for the identity.

    Labels are comma separated whenever any label has two or more digits.
    """
    d = p if isinstance(p, CycleDecomposition) else decompose(p)
    if d.is_empty():
        return "()"
    commas = any(x >= 10 for c in d.cycles for x in c)
    return "".join(_format_cycle(c, commas) for c in d.cycles)


def format_swaps(swaps: Iterable[Transposition]) -> str:
    swaps = list(swaps)
    commas = any(t.b >= 10 for t in swaps)
    return "".join(_format_cycle((t.a, t.b), commas) for t in swaps)
