"""Reading and writing swap logs.

A log is plain text with one swap per line, two positive body labels
separated by whitespace, in the order the swaps happened.  ``#`` starts a
comment and blank lines are skipped.  A JSON object with a ``"plan"`` list
of ``[a, b]`` pairs (as written by ``mindswap plan --json``) is accepted
too.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ParseError
from .perm import Order, SwapSequence, Transposition


def parse_swap_log(text: str) -> tuple[SwapSequence, list[int]]:
    """Return the chronological swaps and the 1-based line of each."""
    if text.lstrip().startswith("{"):
        return _parse_json_plan(text)
    swaps, lines = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two labels, got {line!r}", line=lineno)
        try:
            a, b = (int(x) for x in parts)
        except ValueError:
            raise ParseError(f"non-numeric label in {line!r}", line=lineno) from None
        if a < 1 or b < 1:
            raise ParseError("labels must be positive", line=lineno)
        if a == b:
            raise ParseError(f"a body cannot swap with itself ({a})", line=lineno)
        swaps.append(Transposition(a, b))
        lines.append(lineno)
    return SwapSequence(swaps, Order.CHRONOLOGICAL), lines


def _parse_json_plan(text: str) -> tuple[SwapSequence, list[int]]:
    try:
        data = json.loads(text)
        pairs = data["plan"]
        swaps = []
        for pair in pairs:
            a, b = pair
            if not (isinstance(a, int) and isinstance(b, int)) or a < 1 or b < 1 or a == b:
                raise ValueError(f"bad pair {pair!r}")
            swaps.append(Transposition(a, b))
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"invalid JSON plan: {exc}") from None
    return SwapSequence(swaps, Order.CHRONOLOGICAL), list(range(1, len(swaps) + 1))


def read_swap_log(path: str | Path) -> tuple[SwapSequence, list[int]]:
    return parse_swap_log(Path(path).read_text())


def format_swap_log(seq: SwapSequence) -> str:
    seq = seq.as_order(Order.CHRONOLOGICAL)
    return "".join(f"{t.a} {t.b}\n" for t in seq)
