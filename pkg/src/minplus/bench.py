"""Scaling benchmarks with deterministic instances.

Each row is ``suite, n, trial, wall_ns, op_count``. Instances depend only on
``(seed, suite, n, trial)``, so two runs with the same seed differ only in
the timing column.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .convolution import (
    PiecewiseLinearFn,
    reduced_concave,
    reduced_linear,
    reduced_piecewise,
    reduced_polynomial,
)
from .knapsack import Concave, Convex, KnapsackInstance, Linear, Polynomial, knapsack_solve
from .lattice import cvp_solve, svp_solve
from .sign_partition import IntPolynomial

SUITES = ("conv-linear", "conv-concave", "conv-poly", "conv-pwl", "knapsack", "lattice")
CSV_HEADER = "suite,n,trial,wall_ns,op_count"


@dataclass(frozen=True)
class BenchConfig:
    suite: str
    sizes: tuple
    seed: int = 0
    trials: int = 1
    window: float = 0.5


@dataclass(frozen=True)
class BenchRow:
    suite: str
    n: int
    trial: int
    wall_ns: int
    op_count: int

    def csv(self) -> str:
        return f"{self.suite},{self.n},{self.trial},{self.wall_ns},{self.op_count}"


def _values(rng, n, lo=-1000, hi=1000):
    return [rng.randint(lo, hi) for _ in range(n)]


def _concave_table(rng, m):
    # decreasing slopes give a concave table
    slope = rng.randint(0, 1000)
    v, out = rng.randint(-1000, 1000), []
    for _ in range(m):
        out.append(v)
        v += slope
        slope -= rng.randint(0, 2)
    return out


def _conv_case(suite, rng, n, window):
    m = max(1, int(n * window))
    a = _values(rng, n)
    stats = {}
    if suite == "conv-linear":
        alpha, beta = rng.randint(-50, 50), rng.randint(-50, 50)
        return (lambda: reduced_linear(a, alpha, beta, m, stats)), stats, ("queue_ops",)
    if suite == "conv-concave":
        table = _concave_table(rng, m)
        return (lambda: reduced_concave(a, table, m, stats)), stats, ("evo_calls", "spo_calls")
    if suite == "conv-poly":
        f = IntPolynomial([rng.randint(-1000, 1000), -rng.randint(0, m), 1])
        keys = ("evo_calls", "spo_calls", "bf_evals")
        return (lambda: reduced_polynomial(a, f, m, stats)), stats, keys
    if suite == "conv-pwl":
        p = min(4, m)
        cuts = sorted(rng.sample(range(1, m), p - 1)) if p > 1 else []
        f = PiecewiseLinearFn(tuple([0] + cuts + [m]),
                              tuple(rng.randint(-20, 20) for _ in range(p)),
                              tuple(rng.randint(-1000, 1000) for _ in range(p)))
        return (lambda: reduced_piecewise(a, f, stats)), stats, ("segtree_ops",)
    raise ValueError(suite)


def _knapsack_case(rng, n):
    # n is the capacity; a handful of items of mixed classes
    items = 4
    w = [rng.randint(1, 6) for _ in range(items)]
    u = [n // wk for wk in w]
    objs = []
    for k in range(items):
        kind = k % 4
        if kind == 0:
            objs.append(Linear(rng.randint(-9, 9)))
        elif kind == 1:
            objs.append(Polynomial(IntPolynomial([0, rng.randint(-20, 0), 1])))
        elif kind == 2:
            objs.append(Convex(tuple(j * j - 3 * j for j in range(u[k] + 1))))
        else:
            objs.append(Concave(tuple(-j * j + 5 * j for j in range(u[k] + 1))))
    inst = KnapsackInstance(w, n, u, objs, "min")
    stats = {}
    return (lambda: knapsack_solve(inst, stats=stats)), stats, ("conv_length",)


def _lattice_case(rng, n):
    # n is the target determinant; an upper triangular 3x3 basis with det n
    d = [1, 1, n]
    A = [[d[0], rng.randint(-5, 5), rng.randint(-5, 5)],
         [0, d[1], rng.randint(-5, 5)],
         [0, 0, d[2]]]
    q = [Fraction(rng.randint(-50, 50), 7) for _ in range(3)]
    stats = {}

    def run():
        svp_solve(A, stats=stats)
        cvp_solve(A, q, stats=stats)

    return run, stats, ("matrix_entries",)


def make_case(suite: str, n: int, seed: int, trial: int, window: float = 0.5):
    """``(run, stats, counter_keys)`` for one deterministic instance."""
    rng = random.Random(f"{seed}:{suite}:{n}:{trial}")
    if suite.startswith("conv-"):
        return _conv_case(suite, rng, n, window)
    if suite == "knapsack":
        return _knapsack_case(rng, n)
    if suite == "lattice":
        return _lattice_case(rng, n)
    raise ValueError(f"unknown suite {suite!r}")


def run_bench(cfg: BenchConfig):
    """Yield one ``BenchRow`` per (size, trial)."""
    if cfg.suite not in SUITES:
        raise ValueError(f"unknown suite {cfg.suite!r}")
    for n in cfg.sizes:
        for trial in range(cfg.trials):
            run, stats, keys = make_case(cfg.suite, n, cfg.seed, trial, cfg.window)
            t0 = time.perf_counter_ns()
            run()
            dt = time.perf_counter_ns() - t0
            yield BenchRow(cfg.suite, n, trial, dt, sum(stats.get(k, 0) for k in keys))


def loglog_slope(points) -> float:
    """Least-squares slope of ``log t`` against ``log n``."""
    xs = [math.log(n) for n, _ in points]
    ys = [math.log(t) for _, t in points]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


def best_times(rows) -> list:
    """``(n, min wall_ns over trials)`` sorted by ``n``."""
    best = {}
    for r in rows:
        best[r.n] = min(best.get(r.n, r.wall_ns), r.wall_ns)
    return sorted(best.items())
