import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import cyclic_naive, rand_concave, rand_convex, rand_plf, rand_seq
from minplus.convolution import (
    PiecewiseLinearFn,
    block_plan,
    block_sigma,
    cyclic_minconv_convex,
    full_concave,
    full_from_reduced,
    full_linear,
    full_piecewise,
    full_polynomial,
    minconv_convex,
    minconv_naive,
    reduced_concave,
    reduced_linear,
    reduced_naive,
    reduced_piecewise,
    reduced_polynomial,
    smawk_row_minima,
)
from minplus.errors import MalformedPLF, NotConcave, NotConvex, SizeError
from minplus.sign_partition import CONCAVE, CurveOracle, IntPolynomial, is_convex_seq
from minplus.values import INF

seqs = st.lists(st.one_of(st.integers(-1000, 1000), st.just(INF)), min_size=1, max_size=40)


# -- oracles -----------------------------------------------------------------

def test_naive_examples():
    assert minconv_naive([0], [0]) == [0]
    assert minconv_naive([0, 1, 4], [0, 2]) == [0, 1, 3, 6]
    assert minconv_naive([0, INF, 4], [0, 2]) == [0, 2, 4, 6]
    assert reduced_naive([0, 5, 2], [0, 1, 3]) == [0]
    assert reduced_naive([4, -1, 3], [0]) == [4, -1, 3]
    assert reduced_naive([7, 7], [0, 0]) == [7]
    with pytest.raises(SizeError):
        reduced_naive([1], [1, 2])


def test_adapter_examples():
    assert full_from_reduced([0, 1, 4], [0, 2]) == [0, 1, 3, 6]
    assert full_from_reduced([3, -2, 5], [10]) == [13, 8, 15]


@given(seqs, seqs)
def test_adapter_matches_naive(a, b):
    assert full_from_reduced(a, b, reduced_naive) == minconv_naive(a, b)


def test_adapter_500():
    rng = random.Random(0)
    for _ in range(500):
        a = rand_seq(rng, rng.randint(1, 20), inf_rate=0.2)
        b = rand_seq(rng, rng.randint(1, 20), inf_rate=0.2)
        assert full_from_reduced(a, b) == minconv_naive(a, b)


def test_overflow_detected():
    with pytest.raises(OverflowError):
        minconv_naive([2 ** 62], [2 ** 62])
    with pytest.raises(OverflowError):
        reduced_linear([2 ** 63 - 1, 0], 1, 1, 2)


# -- linear ------------------------------------------------------------------

def test_linear_examples():
    assert reduced_linear([3, 1, 4, 1, 5], 1, 0, 2) == [2, 1, 2, 1]
    a = [5, 3, 8, 1, 9, 2]
    assert reduced_linear(a, 0, 0, 3) == [min(a[k:k + 3]) for k in range(4)]
    with pytest.raises(SizeError):
        reduced_linear([1, 2], 1, 1, 3)


def test_linear_rational_parameters():
    a = [3, 1, 4, 1, 5, 9, 2, 6]
    alpha, beta = Fraction(-2, 3), Fraction(1, 2)
    b = [beta + alpha * i for i in range(3)]
    assert reduced_linear(a, alpha, beta, 3) == reduced_naive(a, b)


def test_linear_random_and_queue_ops():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(1, 60)
        m = rng.randint(1, n)
        a = rand_seq(rng, n, inf_rate=0.1)
        alpha, beta = rng.randint(-30, 30), rng.randint(-30, 30)
        stats = {}
        got = reduced_linear(a, alpha, beta, m, stats)
        assert got == reduced_naive(a, [beta + alpha * i for i in range(m)])
        assert stats["queue_ops"] <= 3 * n
        assert full_linear(a, alpha, beta, m) == minconv_naive(a, [beta + alpha * i for i in range(m)])


# -- convex ------------------------------------------------------------------

def test_smawk_examples():
    assert smawk_row_minima(1, 5, lambda r, c: [4, 2, 9, 2, 7][c]) == [1]
    rows, cols = 12, 7
    assert smawk_row_minima(rows, cols, lambda r, c: (r - c) ** 2) == [min(r, cols - 1) for r in range(rows)]


def test_smawk_on_convolution_matrices():
    rng = random.Random(2)
    for _ in range(50):
        a = rand_seq(rng, 50)
        b = rand_convex(rng, 50)
        big = 10 ** 9

        def entry(k, i):
            j = k - i
            return a[i] + (b[j] if 0 <= j < 50 else big + abs(j) * big)

        arg = smawk_row_minima(50, 50, entry)
        for k in range(50):
            row = [entry(k, i) for i in range(50)]
            assert row[arg[k]] == min(row)


def test_convex_examples():
    assert minconv_convex([0, 9, 0], [0, 1, 3]) == [0, 1, 0, 1, 3]
    with pytest.raises(NotConvex):
        minconv_convex([1, 2], [0, 5, 6])
    b = [4 + 3 * i for i in range(5)]
    a = [3, 1, 4, 1, 5, 9]
    assert minconv_convex(a, b) == full_linear(a, 3, 4, 5)
    assert minconv_convex([INF, INF], [0, 1]) == [INF, INF, INF]


def test_convex_random_500():
    rng = random.Random(3)
    for _ in range(500):
        a = rand_seq(rng, rng.randint(1, 40), inf_rate=0.15)
        b = rand_convex(rng, rng.randint(1, 40))
        assert minconv_convex(a, b) == minconv_naive(a, b)


def test_reversal_keeps_convexity():
    rng = random.Random(4)
    for _ in range(100):
        b = rand_convex(rng, rng.randint(1, 30))
        assert is_convex_seq(b) and is_convex_seq(b[::-1])


# -- piecewise linear --------------------------------------------------------

def test_plf_validation_and_eval():
    f = PiecewiseLinearFn((0, 2, 5), (1, -1), (0, 4))
    assert f.values() == [0, 1, 2, 1, 0]
    assert f.reversed().values() == f.values()[::-1]
    assert f.truncated(3).values() == [0, 1, 2]
    for bad in [((0, 2, 2), (1, 1), (0, 0)), ((1, 3), (1,), (0,)), ((0, 3), (1, 2), (0,))]:
        with pytest.raises(MalformedPLF):
            PiecewiseLinearFn(*bad)


def test_piecewise_examples():
    rng = random.Random(5)
    a = rand_seq(rng, 30)
    single = PiecewiseLinearFn((0, 6), (3,), (-2,))
    assert reduced_piecewise(a, single) == reduced_linear(a, 3, -2, 6)
    m = 10
    tent = PiecewiseLinearFn((0, m // 2, m), (-1, 1), (m // 2, -(m // 2)))
    assert tent.values() == [abs(x - m // 2) for x in range(m)]
    assert reduced_piecewise(a, tent) == reduced_naive(a, tent.values())
    with pytest.raises(SizeError):
        reduced_piecewise([1, 2], tent)


def test_piecewise_random_200():
    rng = random.Random(6)
    for _ in range(200):
        n = rng.randint(1, 60)
        m = rng.randint(1, n)
        a = rand_seq(rng, n, inf_rate=0.1)
        f = rand_plf(rng, m, rng.randint(1, 5), rational=rng.random() < 0.3)
        assert reduced_piecewise(a, f) == reduced_naive(a, f.values())
        assert full_piecewise(a, f) == minconv_naive(a, f.values())


# -- block scheme ------------------------------------------------------------

@pytest.mark.parametrize("p", [1, 2, 3, 4, 5])
def test_block_plan_bounds(p):
    sigma = block_sigma(p)
    assert sigma >= 1
    for n in [1, 2, 3, 7, 100, 1000, 4096, 10 ** 5]:
        B = block_plan(n, p).block
        assert B & (B - 1) == 0
        assert B ** sigma >= n
        assert B == 1 or (B // 2) ** sigma < n


def test_polynomial_examples():
    rng = random.Random(7)
    a = rand_seq(rng, 40)
    lin = IntPolynomial([-4, 3])
    assert reduced_polynomial(a, lin, 9) == reduced_linear(a, 3, -4, 9)
    sq = IntPolynomial([0, 0, 1])
    assert reduced_polynomial(a, sq, 12) == reduced_naive(a, [i * i for i in range(12)])
    with pytest.raises(SizeError):
        reduced_polynomial([1], sq, 2)
    with pytest.raises(OverflowError):
        reduced_polynomial([0] * 20, IntPolynomial([0] * 20 + [1]), 20)


def test_polynomial_random():
    rng = random.Random(8)
    for _ in range(200):
        n = rng.randint(1, 70)
        m = rng.randint(1, n)
        a = rand_seq(rng, n, inf_rate=0.1)
        f = IntPolynomial([rng.randint(-30, 30) for _ in range(rng.randint(1, 5))])
        b = [f(i) for i in range(m)]
        assert reduced_polynomial(a, f, m) == reduced_naive(a, b)
        assert full_polynomial(a, f, m) == minconv_naive(a, b)


def test_concave_examples():
    rng = random.Random(9)
    a = rand_seq(rng, 32)
    lin = [7 - 2 * i for i in range(8)]
    assert reduced_concave(a, lin, 8) == reduced_linear(a, -2, 7, 8)
    hump = [-(i - 3) ** 2 for i in range(8)]
    assert reduced_concave(a, hump, 8) == reduced_naive(a, hump)
    table = [math.isqrt(100 * 100 * i) for i in range(20)]
    oracle = CurveOracle.from_table(table, CONCAVE)
    assert reduced_concave(a, oracle, 20) == reduced_naive(a, table)
    with pytest.raises(NotConcave):
        reduced_concave(a, [0, 1, 3], 3)
    with pytest.raises(SizeError):
        reduced_concave([1], [0, 1], 2)


def test_concave_random():
    rng = random.Random(10)
    for _ in range(200):
        n = rng.randint(1, 70)
        m = rng.randint(1, n)
        a = rand_seq(rng, n, inf_rate=0.1)
        b = rand_concave(rng, m)
        assert reduced_concave(a, b, m) == reduced_naive(a, b)
        assert full_concave(a, b) == minconv_naive(a, b)


def test_concave_rational_table():
    a = [3, 1, 4, 1, 5, 9, 2, 6]
    b = [Fraction(0), Fraction(5, 2), Fraction(4), Fraction(9, 2)]
    assert reduced_concave(a, b, 4) == reduced_naive(a, b)


def test_block_scheme_counters():
    rng = random.Random(11)
    a = rand_seq(rng, 512)
    stats = {}
    reduced_polynomial(a, IntPolynomial([5, -100, 1]), 200, stats)
    assert stats["block"] == block_plan(512, 2).block
    assert stats["evo_calls"] > 0 and stats["spo_calls"] > 0


# -- cyclic ------------------------------------------------------------------

def test_cyclic_examples():
    assert cyclic_minconv_convex([5], [2]) == [7]
    assert cyclic_minconv_convex([0, 10, 1], [0, 2, 6]) == [0, 2, 1]
    with pytest.raises(NotConvex):
        cyclic_minconv_convex([0, 0, 0], [0, 5, 6])


def test_cyclic_random_300():
    rng = random.Random(12)
    for _ in range(300):
        d = rng.randint(1, 64)
        a = rand_seq(rng, d, inf_rate=0.2)
        b = rand_convex(rng, d)
        assert cyclic_minconv_convex(a, b) == cyclic_naive(a, b)


@settings(max_examples=80)
@given(seqs, st.integers(1, 40), st.integers(-5, 5), st.lists(st.integers(-10, 10), max_size=4))
def test_structured_agree_property(a, m, slope, coeffs):
    m = min(m, len(a))
    b = [slope * i for i in range(m)]
    assert reduced_linear(a, slope, 0, m) == reduced_naive(a, b)
    f = IntPolynomial(coeffs)
    assert reduced_polynomial(a, f, m) == reduced_naive(a, [f(i) for i in range(m)])
