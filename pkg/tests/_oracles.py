"""Reference computations that share no code with the package."""

import itertools


def trace(pairs, x):
    """Image of x under a written product of pairs (rightmost acts first)."""
    for a, b in reversed(list(pairs)):
        if x == a:
            x = b
        elif x == b:
            x = a
    return x


def product_map(pairs, labels=None):
    """The written product as a dict over every label it touches."""
    pairs = [tuple(p) for p in pairs]
    if labels is None:
        labels = {x for p in pairs for x in p}
    return {x: trace(pairs, x) for x in labels if trace(pairs, x) != x}


def cycle_map(cycles):
    out = {}
    for c in cycles:
        for i, x in enumerate(c):
            out[x] = c[(i + 1) % len(c)]
    return out


def shortest_by_enumeration(target, universe, forbidden=(), repeats=False, limit=7):
    """Shortest length of a product of allowed pairs equal to target (dict),
    trying every sequence in order of length."""
    forbidden = {tuple(sorted(p)) for p in forbidden}
    allowed = [p for p in itertools.combinations(sorted(universe), 2) if p not in forbidden]
    for w in range(limit + 1):
        seqs = itertools.product(allowed, repeat=w) if repeats else itertools.permutations(allowed, w)
        for seq in seqs:
            if product_map(seq, universe) == target:
                return w
    return None
