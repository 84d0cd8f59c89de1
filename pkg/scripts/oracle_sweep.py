"""Long randomized sweep of every structured algorithm against its oracle.

Useful for soak testing beyond the pytest budget; stops at the first mismatch
and prints the offending instance.

    python3 scripts/oracle_sweep.py --rounds 5000 --seed 7
"""
import argparse
import random
import sys
from fractions import Fraction

from minplus.convolution import (
    PiecewiseLinearFn,
    cyclic_minconv_convex,
    full_concave,
    full_piecewise,
    full_polynomial,
    minconv_convex,
    minconv_naive,
    reduced_linear,
    reduced_naive,
)
from minplus.knapsack import (
    Concave,
    Convex,
    KnapsackInstance,
    Linear,
    Polynomial,
    knapsack_bruteforce,
    knapsack_solve,
)
from minplus.lattice import (
    abs_objective,
    cvp_solve,
    det,
    lattice_bruteforce,
    square_objective,
    svp_solve,
)
from minplus.sign_partition import IntPolynomial


def convex_seq(rng, m):
    diffs = sorted(rng.randint(-40, 40) for _ in range(m - 1))
    out = [rng.randint(-500, 500)]
    for d in diffs:
        out.append(out[-1] + d)
    return out


def conv_round(rng):
    n = rng.randint(1, 120)
    m = rng.randint(1, n)
    a = [rng.randint(-1000, 1000) for _ in range(n)]
    b = convex_seq(rng, m)
    yield "convex", (a, b), minconv_convex(a, b) == minconv_naive(a, b)
    c = [-v for v in b]
    yield "concave", (a, c), full_concave(a, c) == minconv_naive(a, c)
    alpha, beta = rng.randint(-30, 30), rng.randint(-30, 30)
    lin = [beta + alpha * i for i in range(m)]
    yield "linear", (a, alpha, beta, m), reduced_linear(a, alpha, beta, m) == reduced_naive(a, lin)
    f = IntPolynomial([rng.randint(-9, 9) for _ in range(rng.randint(1, 5))])
    yield "poly", (a, f.coeffs, m), full_polynomial(a, f, m) == minconv_naive(a, [f(i) for i in range(m)])
    p = rng.randint(1, min(4, m))
    cuts = sorted(rng.sample(range(1, m), p - 1)) if p > 1 else []
    g = PiecewiseLinearFn(tuple([0] + cuts + [m]), tuple(rng.randint(-9, 9) for _ in range(p)),
                          tuple(rng.randint(-99, 99) for _ in range(p)))
    yield "pwl", (a, g), full_piecewise(a, g) == minconv_naive(a, g.values())
    d = rng.randint(1, 40)
    cyc_a = [rng.randint(-1000, 1000) for _ in range(d)]
    cyc_b = convex_seq(rng, d)
    want = [min(cyc_a[(i - j) % d] + cyc_b[j] for j in range(d)) for i in range(d)]
    yield "cyclic", (cyc_a, cyc_b), cyclic_minconv_convex(cyc_a, cyc_b) == want


def knapsack_round(rng):
    n = rng.randint(1, 5)
    w = [rng.randint(1, 6) for _ in range(n)]
    u = [rng.randint(0, 7) for _ in range(n)]
    objs = []
    for uk in u:
        kind = rng.randrange(4)
        if kind == 0:
            objs.append(Linear(rng.randint(-9, 9)))
        elif kind == 1:
            objs.append(Polynomial(IntPolynomial([rng.randint(-5, 5) for _ in range(3)])))
        elif kind == 2:
            objs.append(Convex(tuple(convex_seq(rng, uk + 1))))
        else:
            objs.append(Concave(tuple(-v for v in convex_seq(rng, uk + 1))))
    inst = KnapsackInstance(w, rng.randint(0, 35), u, objs, rng.choice(["min", "max"]))
    yield "knapsack", inst, knapsack_solve(inst).value == knapsack_bruteforce(inst).value


def lattice_round(rng):
    n = rng.randint(1, 3)
    while True:
        A = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        if 0 < abs(det(A)) <= 40:
            break
    f = rng.choice([abs_objective, square_objective])
    yield "svp", A, svp_solve(A, f).value == lattice_bruteforce(A, f).value
    q = [Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(n)]
    yield "cvp", (A, q), cvp_solve(A, q, f).value == lattice_bruteforce(A, f, q=q).value


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--rounds", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    rng = random.Random(args.seed)
    counts = {}
    for r in range(args.rounds):
        for gen in (conv_round, knapsack_round, lattice_round):
            for name, instance, ok in gen(rng):
                counts[name] = counts.get(name, 0) + 1
                if not ok:
                    print(f"MISMATCH in {name} at round {r}: {instance!r}")
                    return 1
        if (r + 1) % 100 == 0:
            print(f"{r + 1} rounds ok", flush=True)
    print("all agree:", ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))
    return 0


if __name__ == "__main__":
    sys.exit(main())
