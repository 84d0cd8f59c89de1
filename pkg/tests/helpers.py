"""Random instance generators and brute-force references shared by the tests."""
from __future__ import annotations

from fractions import Fraction

from minplus.convolution import PiecewiseLinearFn
from minplus.structures import NONNEG, NONPOS
from minplus.values import INF


def rand_seq(rng, n, lo=-1000, hi=1000, inf_rate=0.0):
    return [INF if rng.random() < inf_rate else rng.randint(lo, hi) for _ in range(n)]


def rand_convex(rng, m, lo=-1000, hi=1000):
    """Convex integer sequence: non-decreasing first differences."""
    diffs = sorted(rng.randint(-60, 60) for _ in range(max(0, m - 1)))
    v = rng.randint(lo, hi)
    out = [v]
    for d in diffs:
        v += d
        out.append(v)
    return out


def rand_concave(rng, m, lo=-1000, hi=1000):
    return [-v for v in rand_convex(rng, m, lo, hi)]


def rand_plf(rng, m, p, lo=-20, hi=20, rational=False):
    p = max(1, min(p, m))
    cuts = sorted(rng.sample(range(1, m), p - 1)) if p > 1 else []

    def val():
        v = rng.randint(lo, hi)
        return Fraction(v, rng.choice([1, 2, 3])) if rational else v

    return PiecewiseLinearFn(tuple([0] + cuts + [m]),
                             tuple(val() for _ in range(p)),
                             tuple(val() * 10 for _ in range(p)))


def cyclic_naive(a, b):
    d = len(a)
    return [min(a[(i - j) % d] + b[j] for j in range(d)) for i in range(d)]


def minimal_partition_size(values):
    """Fewest consecutive pieces, each of one weak sign, covering ``values``."""
    pieces, allowed = 0, set()
    for v in values:
        ok = ({NONNEG} if v > 0 else {NONPOS} if v < 0 else {NONNEG, NONPOS})
        if allowed & ok:
            allowed &= ok
        else:
            pieces += 1
            allowed = set(ok)
    return pieces


def check_partition(parts, values_at, lo, hi):
    """Pieces are consecutive, cover [lo, hi), alternate labels and are sign-correct."""
    assert parts[0][0] == lo and parts[-1][1] == hi
    for (a, b, lab), nxt in zip(parts, list(parts[1:]) + [None]):
        assert a < b
        if nxt is not None:
            assert nxt[0] == b and nxt[2] != lab
        for x in range(a, b):
            v = values_at(x)
            assert (v >= 0) if lab == NONNEG else (v <= 0), (x, v, lab)


def rand_objective(rng, u, rational=False):
    """One random objective of a random class, defined on ``[0, u]``."""
    from minplus.knapsack import Concave, Convex, Linear, PiecewiseLinear, Polynomial
    from minplus.sign_partition import IntPolynomial

    kind = rng.choice(["lin", "pwl", "poly", "convex", "concave"])
    if kind == "lin":
        return Linear(Fraction(rng.randint(-20, 20), rng.choice([1, 2]) if rational else 1))
    if kind == "pwl":
        return PiecewiseLinear(rand_plf(rng, u + 1, rng.randint(1, 3), rational=rational))
    if kind == "poly":
        return Polynomial(IntPolynomial([rng.randint(-9, 9) for _ in range(rng.randint(1, 4))]))
    if kind == "convex":
        return Convex(tuple(rand_convex(rng, u + 1, -50, 50)))
    return Concave(tuple(rand_concave(rng, u + 1, -50, 50)))


def rand_knapsack(rng, max_n=6, max_W=40, max_u=8, rational=False):
    from minplus.knapsack import KnapsackInstance

    n = rng.randint(1, max_n)
    w = [rng.randint(1, 8) for _ in range(n)]
    u = [rng.randint(0, max_u) for _ in range(n)]
    W = rng.randint(0, max_W)
    objs = [rand_objective(rng, uk, rational) for uk in u]
    return KnapsackInstance(w, W, u, objs, rng.choice(["min", "max"]))


def rand_lattice(rng, n, max_delta=40):
    """Nonsingular ``n x n`` matrix with ``|det| <= max_delta``.

    A lower-triangular factor fixes the determinant and random elementary
    column operations hide the structure.
    """
    while True:
        diag = [rng.randint(1, 6) * rng.choice([-1, 1]) for _ in range(n)]
        prod = 1
        for d in diag:
            prod *= abs(d)
        if prod <= max_delta:
            break
    A = [[diag[i] if i == j else (rng.randint(-4, 4) if j < i else 0) for j in range(n)]
         for i in range(n)]
    for _ in range(rng.randint(0, 2 * n)):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        k = rng.randint(-2, 2)
        for row in A:
            row[i] += k * row[j]
    return A


def rand_target(rng, n):
    return [Fraction(rng.randint(-21, 21), rng.randint(1, 7)) for _ in range(n)]
