import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import rand_convex, rand_knapsack, rand_objective, rand_seq
from minplus.errors import ObjectiveClassError, TooLarge
from minplus.knapsack import (
    Concave,
    Convex,
    KnapsackInstance,
    Linear,
    Polynomial,
    dp_layer,
    knapsack_bruteforce,
    knapsack_solve,
    layer_naive,
    negate,
)
from minplus.sign_partition import IntPolynomial
from minplus.values import INF


def test_worked_examples():
    inst = KnapsackInstance([2, 3], 7, [3, 2], [Linear(1), Linear(1)])
    sol = knapsack_solve(inst)
    assert sol.feasible and sol.value == 3 and sol.x == [2, 1]

    sol = knapsack_solve(KnapsackInstance([2], 3, [5], [Linear(1)]))
    assert not sol.feasible and sol.value == INF and sol.x is None

    sq = Polynomial(IntPolynomial([0, 0, 1]))
    sol = knapsack_solve(KnapsackInstance([5], 10, [2], [sq]))
    assert sol.x == [2] and sol.value == 4


def test_validation():
    for args in [([], 3, [], []), ([0], 3, [1], [Linear(1)]), ([1], -1, [1], [Linear(1)]),
                 ([1], 3, [-1], [Linear(1)]), ([1, 2], 3, [1], [Linear(1)])]:
        with pytest.raises(ValueError):
            KnapsackInstance(*args)
    with pytest.raises(ValueError):
        KnapsackInstance([1], 3, [1], [Linear(1)], sense="median")


def test_bounds_are_clipped():
    inst = KnapsackInstance([3, 1], 7, [10, 2], [Linear(0), Linear(0)])
    assert inst.bounds() == [2, 2]


def test_layer_with_zero_bound_is_a_shift():
    prev = [0, INF, 5, -3]
    assert dp_layer(prev, 2, 0, Linear(4)) == prev
    assert dp_layer(prev, 1, 0, Polynomial(IntPolynomial([7, 1]))) == [7, INF, 12, 4]


def test_single_residue_class_is_one_convolution():
    stats = {}
    prev = [0, 4, 1, 7, 2, 9]
    out = dp_layer(prev, 1, 5, Convex(tuple(i * i for i in range(6))), stats)
    assert stats["convolutions"] == 1
    assert out == layer_naive(prev, 1, 5, Convex(tuple(i * i for i in range(6))))


def test_layer_matches_double_loop():
    rng = random.Random(1)
    for _ in range(300):
        cap = rng.randint(1, 50)
        prev = rand_seq(rng, cap, -100, 100, inf_rate=0.3)
        w, u = rng.randint(1, 7), rng.randint(0, 10)
        obj = rand_objective(rng, u)
        assert dp_layer(prev, w, u, obj) == layer_naive(prev, w, u, obj)


def test_layer_random_convex_item():
    rng = random.Random(2)
    for _ in range(200):
        prev = rand_seq(rng, 40, inf_rate=0.2)
        u = rng.randint(1, 12)
        obj = Convex(tuple(rand_convex(rng, u + 1)))
        w = rng.randint(1, 5)
        assert dp_layer(prev, w, u, obj) == layer_naive(prev, w, u, obj)


def _check(inst, at_most=False):
    sol = knapsack_solve(inst, at_most=at_most)
    ref = knapsack_bruteforce(inst, at_most=at_most)
    assert sol.feasible == ref.feasible
    assert sol.value == ref.value
    if sol.feasible:
        x = sol.x
        assert all(0 <= xk <= uk for xk, uk in zip(x, inst.u))
        weight = sum(wk * xk for wk, xk in zip(inst.w, x))
        assert weight <= inst.W if at_most else weight == inst.W
        assert inst.value(x) == sol.value


def test_matches_bruteforce_random():
    rng = random.Random(3)
    for _ in range(400):
        _check(rand_knapsack(rng))


def test_matches_bruteforce_rational():
    rng = random.Random(4)
    for _ in range(200):
        _check(rand_knapsack(rng, rational=True))


def test_at_most_mode():
    rng = random.Random(5)
    for _ in range(200):
        _check(rand_knapsack(rng), at_most=True)
    inst = KnapsackInstance([2], 3, [5], [Linear(-1)])
    sol = knapsack_solve(inst, at_most=True)
    assert sol.value == -1 and sol.x == [1]


def test_adding_an_item_never_hurts_by_more_than_its_zero_cost():
    rng = random.Random(6)
    for _ in range(150):
        cap = rng.randint(1, 40)
        prev = rand_seq(rng, cap, inf_rate=0.3)
        w, u = rng.randint(1, 6), rng.randint(0, 8)
        obj = rand_objective(rng, u)
        out = dp_layer(prev, w, u, obj)
        f0 = obj(0)
        for p, q in zip(prev, out):
            assert q <= (INF if p == INF else p + f0)


def test_sense_symmetry():
    rng = random.Random(7)
    for _ in range(200):
        inst = rand_knapsack(rng)
        flipped = KnapsackInstance(inst.w, inst.W, inst.u, [negate(o) for o in inst.objectives],
                                   "min" if inst.sense == "max" else "max")
        a, b = knapsack_solve(inst), knapsack_solve(flipped)
        assert a.feasible == b.feasible
        if a.feasible:
            assert a.value == -b.value


def test_negation_swaps_class_tags():
    assert isinstance(negate(Convex((0, 1, 4))), Concave)
    assert isinstance(negate(Concave((0, -1, -4))), Convex)
    assert negate(Linear(3))(2) == -6
    assert negate(Concave(lambda x: -x * x))(3) == 9


def test_all_zero_objectives():
    rng = random.Random(8)
    for _ in range(100):
        n = rng.randint(1, 5)
        inst = KnapsackInstance([rng.randint(1, 6) for _ in range(n)], rng.randint(0, 30),
                                [rng.randint(0, 6) for _ in range(n)], [Linear(0)] * n)
        sol, ref = knapsack_solve(inst), knapsack_bruteforce(inst)
        assert sol.feasible == ref.feasible
        if sol.feasible:
            assert sol.value == 0


def test_empty_feasible_set_both_solvers():
    inst = KnapsackInstance([4, 6], 9, [3, 3], [Linear(1), Convex((0, 1, 3, 6))])
    assert not knapsack_solve(inst).feasible
    assert not knapsack_bruteforce(inst).feasible


def test_callable_sources_and_max_sense():
    inst = KnapsackInstance([1, 2], 6, [6, 3], [Concave(lambda x: 10 * x - x * x), Linear(3)], "max")
    sol = knapsack_solve(inst)
    assert sol.value == knapsack_bruteforce(inst).value == 27
    assert sol.x == [4, 1]


def test_wrong_class_tag_rejected():
    inst = KnapsackInstance([1, 1], 4, [4, 4], [Linear(0), Convex((0, 5, 6, 7, 8))])
    with pytest.raises(ObjectiveClassError):
        knapsack_solve(inst)
    inst = KnapsackInstance([1, 1], 4, [4, 4], [Linear(0), Concave((0, 1, 3, 6, 10))])
    with pytest.raises(ObjectiveClassError):
        knapsack_solve(inst)


def test_bruteforce_guard():
    inst = KnapsackInstance([1] * 8, 100, [20] * 8, [Linear(1)] * 8)
    with pytest.raises(TooLarge):
        knapsack_bruteforce(inst)


def test_overflow():
    inst = KnapsackInstance([1], 2, [2], [Linear(2 ** 62)])
    with pytest.raises(OverflowError):
        knapsack_solve(inst)


def test_rational_value_is_exact():
    inst = KnapsackInstance([1, 1], 3, [3, 3], [Linear(Fraction(1, 3)), Linear(Fraction(1, 2))])
    sol = knapsack_solve(inst)
    assert sol.value == 1 and sol.x == [3, 0]


@settings(max_examples=150)
@given(st.randoms(use_true_random=False))
def test_solver_property(rng):
    _check(rand_knapsack(rng, max_n=4, max_W=25, max_u=6))
