import random

import pytest

from mindswap import (
    IDENTITY,
    Mode,
    NeedHelpersError,
    NothingToUndoError,
    Order,
    Permutation,
    SwapSequence,
    Transposition,
    classic_min_count,
    construct_factorization,
    decompose,
    epsilon,
    format_swaps,
    from_cycles,
    make_restoration_plan,
    min_undo_count,
    parse_cycles,
)
from mindswap.oracle import all_permutations
from mindswap.solver import default_helpers, nmr_budget

from _oracles import cycle_map, product_map


def pairs_of(result):
    return [(t.a, t.b) for t in result.factors]


def check_factorization(p, result):
    d = decompose(p)
    pairs = pairs_of(result)
    assert result.factors.order is Order.PRODUCT
    assert product_map(pairs, set(p.support) | set(result.helpers_used)) == dict(p)
    assert len(set(pairs)) == len(pairs)
    assert not set(result.factors.swaps) & set(d.two_cycles())
    assert len(pairs) == min_undo_count(d).M
    assert result.helpers_used.isdisjoint(p.support)
    if d.n > 2:
        assert not result.helpers_used
        assert {x for pr in pairs for x in pr} <= p.support


@pytest.mark.parametrize("r, expected", [(0, 0), (1, 1), (4, 0), (7, 1)])
def test_epsilon(r, expected):
    assert epsilon(r) == expected


@pytest.mark.parametrize(
    "cycles, M, helpers",
    [
        ([[1, 2], [3, 4, 5, 6, 7, 8, 9]], 9, 0),
        ([[1, 2]], 5, 2),
        ([[1, 2], [3, 4]], 4, 0),
        ([[1, 2], [3, 4], [5, 6]], 7, 0),
    ],
)
def test_min_undo_count_examples(cycles, M, helpers):
    b = min_undo_count(decompose(from_cycles(cycles)))
    assert b.M == M
    assert b.helpers_required == helpers


@pytest.mark.parametrize("r", range(1, 9))
def test_min_undo_count_involutions(r):
    p = from_cycles([[2 * i + 1, 2 * i + 2] for i in range(r)])
    expected = 5 if r == 1 else 2 * r + r % 2
    assert min_undo_count(p).M == expected


def test_min_undo_count_identity():
    with pytest.raises(NothingToUndoError):
        min_undo_count(decompose(IDENTITY))
    with pytest.raises(NothingToUndoError):
        classic_min_count(IDENTITY)


@pytest.mark.parametrize(
    "cycles, expected",
    [([[1, 2], [3, 4, 5, 6, 7, 8, 9]], 7), ([[1, 2]], 1), ([[1, 2, 3, 4, 5, 6]], 5)],
)
def test_classic_min_count(cycles, expected):
    assert classic_min_count(from_cycles(cycles)) == expected


def test_budget_relations_exhaustive():
    for p in all_permutations(7):
        d = decompose(p)
        b = min_undo_count(d)
        assert b.M == nmr_budget(*d.nmr)
        if d.n > 2:
            assert b.M % 2 == (d.n - d.m) % 2
            assert b.M >= classic_min_count(d)
            assert (b.M == classic_min_count(d)) == (d.r == 0)


# -- construction -----------------------------------------------------------


@pytest.mark.parametrize(
    "target, helpers, expected",
    [
        ("(12)(3456789)", [], "(23)(19)(18)(17)(16)(15)(14)(13)(29)"),
        ("(12)(34)", [], "(24)(13)(23)(14)"),
        ("(12)(34)(56)", [], "(15)(25)(35)(46)(45)(16)(13)"),
        ("(12)", [3, 4], "(34)(23)(14)(13)(24)"),
    ],
)
def test_construct_reproduces_known_identities(target, helpers, expected):
    result = construct_factorization(parse_cycles(target), helpers)
    assert format_swaps(result.factors) == expected


def test_construct_merge_template_small():
    # (a b)(c1 c2 c3) with a=1, b=2 -> (b c1)(a c3)(a c2)(a c1)(b c3)
    template = [(2, 3), (1, 5), (1, 4), (1, 3), (2, 5)]
    assert product_map(template) == cycle_map([[1, 2], [3, 4, 5]])
    result = construct_factorization(from_cycles([[1, 2], [3, 4, 5]]))
    assert pairs_of(result) == template


@pytest.mark.parametrize("n", range(5, 13))
def test_merge_template_family(n):
    p = from_cycles([[1, 2], list(range(3, n + 1))])
    result = construct_factorization(p)
    assert len(result) == n
    check_factorization(p, result)


def test_construct_needs_helpers():
    with pytest.raises(NeedHelpersError):
        construct_factorization(from_cycles([[1, 2]]))
    with pytest.raises(NeedHelpersError):
        construct_factorization(from_cycles([[1, 2]]), [2, 3])
    with pytest.raises(NothingToUndoError):
        construct_factorization(IDENTITY)


def test_helpers_skip_support_labels():
    result = construct_factorization(from_cycles([[5, 9]]), [5, 1, 9, 2])
    assert result.helpers_used == {1, 2}
    check_factorization(from_cycles([[5, 9]]), result)


def test_construct_exhaustive_small():
    for p in all_permutations(6):
        check_factorization(p, construct_factorization(p, default_helpers(p.support)))


def test_construct_random_larger():
    rng = random.Random(2024)
    for _ in range(300):
        n = rng.randrange(2, 9)
        labels = rng.sample(range(1, 40), n)
        images = labels[:]
        rng.shuffle(images)
        p = Permutation(dict(zip(labels, images)))
        if p.is_identity():
            continue
        check_factorization(p, construct_factorization(p, default_helpers(p.support)))


def test_construct_many_two_cycles_mixed():
    for r in range(2, 7):
        cycles = [[2 * i + 1, 2 * i + 2] for i in range(r)] + [[20, 21, 22], [30, 31, 32, 33]]
        p = from_cycles(cycles)
        check_factorization(p, construct_factorization(p))


def test_construct_is_deterministic():
    for p in all_permutations(5):
        h = default_helpers(p.support)
        assert pairs_of(construct_factorization(p, h)) == pairs_of(construct_factorization(p, h))
    p = from_cycles([[4, 1], [2, 7, 9], [3, 8]])
    assert pairs_of(construct_factorization(p)) == pairs_of(
        construct_factorization(Permutation(dict(reversed(list(p.items())))))
    )


# -- restoration plans ------------------------------------------------------

FUTURAMA = SwapSequence([(3, 6), (3, 7), (5, 6), (3, 9), (1, 2), (8, 9), (4, 5)], Order.CHRONOLOGICAL)
STARGATE = SwapSequence([(3, 4), (1, 2)], Order.CHRONOLOGICAL)


def restores(history, plan):
    # the mind that started in body x ends up in body trace(chronological-as-written reversed)
    written = [(t.a, t.b) for t in reversed(history.swaps + plan.swaps)]
    labels = {x for pr in written for x in pr}
    return product_map(written, labels) == {}


def test_plan_futurama():
    plan = make_restoration_plan(FUTURAMA, [], Mode.THEOREM)
    assert plan.order is Order.CHRONOLOGICAL
    assert [(t.a, t.b) for t in plan] == [
        (2, 3), (1, 9), (1, 8), (1, 7), (1, 6), (1, 5), (1, 4), (1, 3), (2, 9)
    ]
    assert restores(FUTURAMA, plan)


def test_plan_stargate():
    plan = make_restoration_plan(STARGATE, [], Mode.THEOREM)
    assert len(plan) == 4
    assert restores(STARGATE, plan)
    assert not set(plan) & set(STARGATE)


def test_plan_single_swap_with_helpers():
    history = SwapSequence([(1, 2)], Order.CHRONOLOGICAL)
    plan = make_restoration_plan(history, [3, 4], Mode.THEOREM)
    assert len(plan) == 5
    assert restores(history, plan)


def test_plan_identity_rejected():
    with pytest.raises(NothingToUndoError):
        make_restoration_plan(SwapSequence([], Order.CHRONOLOGICAL), [], Mode.THEOREM)
    history = SwapSequence([(1, 2), (2, 3), (1, 2), (2, 3), (1, 2), (2, 3)], Order.CHRONOLOGICAL)
    with pytest.raises(NothingToUndoError):
        make_restoration_plan(history, [], Mode.THEOREM)


def test_theorem_plan_restores_random_histories():
    rng = random.Random(11)
    for _ in range(300):
        k = rng.randrange(1, 10)
        history = SwapSequence(
            [tuple(rng.sample(range(1, 9), 2)) for _ in range(k)], Order.CHRONOLOGICAL
        )
        p = history.product()
        if p.is_identity():
            continue
        plan = make_restoration_plan(history, default_helpers(p.support), Mode.THEOREM)
        assert restores(history, plan)
        assert len(plan) == min_undo_count(p).M


def test_history_mode_uses_theorem_plan_when_safe():
    plan = make_restoration_plan(FUTURAMA, [10, 11], Mode.HISTORY)
    assert plan == make_restoration_plan(FUTURAMA, [], Mode.THEOREM)


def test_history_mode_avoids_collisions():
    history = SwapSequence([(1, 2), (1, 3)], Order.CHRONOLOGICAL)
    theorem = make_restoration_plan(history, [], Mode.THEOREM)
    assert set(theorem) & set(history)  # (1 2) collides
    plan = make_restoration_plan(history, [4, 5], Mode.HISTORY)
    assert not set(plan) & set(history)
    assert len(set(plan)) == len(plan)
    assert restores(history, plan)
    # nothing shorter exists inside {1,...,5} avoiding the log
    assert len(plan) == 4


def test_history_mode_random_never_collides():
    rng = random.Random(5)
    for _ in range(60):
        pool = list(range(1, 6))
        pairs = [Transposition(*rng.sample(pool, 2)) for _ in range(rng.randrange(1, 6))]
        pairs = list(dict.fromkeys(pairs))
        history = SwapSequence(pairs, Order.CHRONOLOGICAL)
        p = history.product()
        if p.is_identity():
            continue
        plan = make_restoration_plan(history, default_helpers(history.labels()), Mode.HISTORY)
        assert not set(plan) & set(history)
        assert len(set(plan)) == len(plan)
        assert restores(history, plan)


def test_history_mode_rejects_reused_log():
    with pytest.raises(ValueError):
        make_restoration_plan(
            SwapSequence([(1, 2), (2, 3), (1, 2)], Order.CHRONOLOGICAL), [], Mode.HISTORY
        )
