"""Bounded knapsack with separable objectives by residue-class convolution.

Solves ``min sum f_k(x_k)`` subject to ``w . x = W`` and ``0 <= x <= u``
(or ``max``, by negation). Layer ``k`` of the table holds, for every
capacity ``w0``, the best value using items ``1..k``. Within a residue
class ``r`` modulo ``w_k`` the layer update is a truncated full
(min,+)-convolution of the previous layer's class with ``f_k(0..u_k)``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .convolution import (
    PiecewiseLinearFn,
    full_concave,
    full_linear,
    full_piecewise,
    full_polynomial,
    minconv_convex,
)
from .errors import ObjectiveClassError, TooLarge
from .sign_partition import IntPolynomial, is_concave_seq, is_convex_seq
from .values import INF, check_ext, common_denominator, unscale

MIN = "min"
MAX = "max"


@dataclass(frozen=True)
class Linear:
    c: Fraction

    def __call__(self, x):
        return self.c * x


@dataclass(frozen=True)
class PiecewiseLinear:
    fn: PiecewiseLinearFn

    def __call__(self, x):
        return self.fn(x)


@dataclass(frozen=True)
class Polynomial:
    poly: IntPolynomial

    def __call__(self, x):
        return self.poly(x)


@dataclass(frozen=True)
class Convex:
    """Convex objective given by a table over ``[0, len)`` or a callable."""

    source: Union[tuple, Callable]

    def __call__(self, x):
        return _lookup(self.source, x)


@dataclass(frozen=True)
class Concave:
    source: Union[tuple, Callable]

    def __call__(self, x):
        return _lookup(self.source, x)


ObjectiveSpec = Union[Linear, PiecewiseLinear, Polynomial, Convex, Concave]


def _lookup(source, x):
    if callable(source):
        return source(x)
    if not 0 <= x < len(source):
        raise ObjectiveClassError(f"objective table has no entry for {x}")
    return source[x]


def negate(obj: ObjectiveSpec) -> ObjectiveSpec:
    """``-f`` in the matching class; convex and concave swap."""
    if isinstance(obj, Linear):
        return Linear(-obj.c)
    if isinstance(obj, PiecewiseLinear):
        return PiecewiseLinear(obj.fn.negated())
    if isinstance(obj, Polynomial):
        return Polynomial(-obj.poly)
    src = obj.source
    neg = (lambda x: -src(x)) if callable(src) else tuple(-v for v in src)
    return Concave(neg) if isinstance(obj, Convex) else Convex(neg)


def _scale(obj: ObjectiveSpec, s: int, length: int) -> ObjectiveSpec:
    """``s * f`` restricted to ``[0, length)``, tables materialized."""
    if isinstance(obj, Linear):
        return Linear(obj.c * s)
    if isinstance(obj, PiecewiseLinear):
        fn = obj.fn.truncated(length)
        return PiecewiseLinear(PiecewiseLinearFn(fn.breaks, tuple(a * s for a in fn.alpha),
                                                 tuple(b * s for b in fn.beta)))
    if isinstance(obj, Polynomial):
        return Polynomial(obj.poly.scale(s))
    table = tuple(_integral(obj(x) * s) for x in range(length))
    return type(obj)(table)


def _integral(v):
    v = Fraction(v)
    if v.denominator != 1:
        raise ObjectiveClassError(f"scaled objective value {v} is not an integer")
    return v.numerator


def _denominators(obj: ObjectiveSpec, length: int) -> list:
    if isinstance(obj, Linear):
        return [Fraction(obj.c)]
    if isinstance(obj, PiecewiseLinear):
        return list(obj.fn.alpha) + list(obj.fn.beta)
    if isinstance(obj, Polynomial):
        return []
    return [Fraction(obj(x)) for x in range(length)]


@dataclass
class KnapsackInstance:
    w: list
    W: int
    u: list
    objectives: list
    sense: str = MIN

    def __post_init__(self):
        n = len(self.w)
        if n < 1 or len(self.u) != n or len(self.objectives) != n:
            raise ValueError("w, u and objectives must have the same non-zero length")
        if any(int(x) != x or x < 1 for x in self.w):
            raise ValueError("weights must be positive integers")
        if any(int(x) != x or x < 0 for x in self.u):
            raise ValueError("bounds must be non-negative integers")
        if int(self.W) != self.W or self.W < 0:
            raise ValueError("capacity must be a non-negative integer")
        if self.sense not in (MIN, MAX):
            raise ValueError(f"sense must be {MIN!r} or {MAX!r}")

    @property
    def n(self) -> int:
        return len(self.w)

    def bounds(self) -> list:
        """Bounds clipped to ``W // w_k``."""
        return [min(uk, self.W // wk) for uk, wk in zip(self.u, self.w)]

    def value(self, x: Sequence) -> Fraction:
        return sum((f(xk) for f, xk in zip(self.objectives, x)), Fraction(0))

    def is_feasible(self, x: Sequence) -> bool:
        return (len(x) == self.n and all(0 <= xk <= uk for xk, uk in zip(x, self.u))
                and sum(wk * xk for wk, xk in zip(self.w, x)) == self.W)


@dataclass
class KnapsackSolution:
    value: object
    x: Optional[list]
    feasible: bool
    stats: dict = field(default_factory=dict)


@dataclass
class _Prepared:
    """Min-sense integer objectives with clipped bounds and the value scale."""

    w: list
    W: int
    u: list
    objectives: list
    scale: int
    sign: int


def _prepare(inst: KnapsackInstance) -> _Prepared:
    u = inst.bounds()
    sign = 1 if inst.sense == MIN else -1
    objs = [o if sign == 1 else negate(o) for o in inst.objectives]
    scale = common_denominator([d for o, uk in zip(objs, u) for d in _denominators(o, uk + 1)])
    objs = [_scale(o, scale, uk + 1) for o, uk in zip(objs, u)]
    for o, uk in zip(objs, u):
        for x in range(uk + 1):
            check_ext(_integral(o(x)))
        _validate_class(o, uk + 1)
    return _Prepared(list(inst.w), inst.W, u, objs, scale, sign)


def _validate_class(obj: ObjectiveSpec, m: int) -> list:
    """Tabulate a convex or concave objective on ``[0, m)`` and check its shape."""
    if not isinstance(obj, (Convex, Concave)):
        return []
    b = [obj(j) for j in range(m)]
    if isinstance(obj, Convex) and not is_convex_seq(b):
        raise ObjectiveClassError("objective declared convex is not convex")
    if isinstance(obj, Concave) and not is_concave_seq(b):
        raise ObjectiveClassError("objective declared concave is not concave")
    return b


def _item_product(a: list, obj: ObjectiveSpec, m: int, stats: Optional[dict]) -> list:
    """``(a * b)[0, len(a))`` with ``b_j = f(j)``, ``j < m``, by class."""
    length = len(a)
    m = min(m, length)
    if isinstance(obj, Linear):
        c = full_linear(a, obj.c, 0, m, stats)
    elif isinstance(obj, PiecewiseLinear):
        c = full_piecewise(a, obj.fn.truncated(m), stats)
    elif isinstance(obj, Polynomial):
        c = full_polynomial(a, obj.poly, m, stats)
    else:
        b = _validate_class(obj, m)
        if isinstance(obj, Convex):
            c = minconv_convex(a, b, stats)
        else:
            c = full_concave(a, b, stats)
    if stats is not None:
        stats["convolutions"] = stats.get("convolutions", 0) + 1
        stats["conv_length"] = stats.get("conv_length", 0) + length + m - 1
    return [int(v) if v != INF else INF for v in c[:length]]


def dp_layer(prev: list, w: int, u: int, obj: ObjectiveSpec, stats: Optional[dict] = None) -> list:
    """Layer update ``DP(k, w0) = min_j DP(k-1, w0 - j*w) + f(j)``, ``0 <= j <= u``."""
    cap = len(prev)
    out = [INF] * cap
    if u == 0:
        f0 = _integral(obj(0))
        return [INF if v == INF else v + f0 for v in prev]
    for r in range(min(w, cap)):
        a = prev[r::w]
        if all(v == INF for v in a):
            continue
        out[r::w] = _item_product(a, obj, u + 1, stats)
    return out


def _base_layer(cap: int, w: int, u: int, obj: ObjectiveSpec) -> list:
    layer = [INF] * cap
    for j in range(min(u, (cap - 1) // w) + 1):
        layer[j * w] = _integral(obj(j))
    return layer


def dp_table(prep: _Prepared, stats: Optional[dict] = None) -> list:
    cap = prep.W + 1
    layers = [_base_layer(cap, prep.w[0], prep.u[0], prep.objectives[0])]
    for k in range(1, len(prep.w)):
        layers.append(dp_layer(layers[-1], prep.w[k], prep.u[k], prep.objectives[k], stats))
    return layers


def _reconstruct(prep: _Prepared, layers: list, w0: int) -> list:
    """Walk back through the table taking the smallest multiplicity at each step."""
    x = [0] * len(prep.w)
    for k in range(len(prep.w) - 1, 0, -1):
        target = layers[k][w0]
        prev = layers[k - 1]
        obj, wk = prep.objectives[k], prep.w[k]
        for j in range(min(prep.u[k], w0 // wk) + 1):
            p = prev[w0 - j * wk]
            if p != INF and p + _integral(obj(j)) == target:
                x[k] = j
                w0 -= j * wk
                break
        else:
            raise AssertionError("table is inconsistent")
    x[0] = w0 // prep.w[0]
    return x


def knapsack_solve(inst: KnapsackInstance, at_most: bool = False,
                   stats: Optional[dict] = None) -> KnapsackSolution:
    """Optimal solution by the residue-class table.

    With ``at_most`` the constraint becomes ``w . x <= W``.
    """
    stats = {} if stats is None else stats
    prep = _prepare(inst)
    layers = dp_table(prep, stats)
    last = layers[-1]
    if at_most:
        w0 = min(range(len(last)), key=lambda i: (last[i], i))
    else:
        w0 = prep.W
    best = last[w0]
    if best == INF:
        return KnapsackSolution(INF, None, False, stats)
    x = _reconstruct(prep, layers, w0)
    return KnapsackSolution(unscale(prep.sign * best, prep.scale), x, True, stats)


def knapsack_bruteforce(inst: KnapsackInstance, at_most: bool = False,
                        limit: int = 10 ** 7) -> KnapsackSolution:
    """Exhaustive enumeration over the bound box; ties go to the lexicographically first."""
    u = inst.bounds()
    if math.prod(uk + 1 for uk in u) > limit:
        raise TooLarge(f"search space exceeds {limit}")
    sign = 1 if inst.sense == MIN else -1
    best, best_x = None, None
    for x in itertools.product(*(range(uk + 1) for uk in u)):
        weight = sum(wk * xk for wk, xk in zip(inst.w, x))
        if weight > inst.W or (not at_most and weight != inst.W):
            continue
        v = sign * inst.value(x)
        if best is None or v < best:
            best, best_x = v, list(x)
    if best is None:
        return KnapsackSolution(INF, None, False)
    return KnapsackSolution(unscale(sign * best, 1), best_x, True)


def layer_naive(prev: list, w: int, u: int, obj: ObjectiveSpec) -> list:
    """Direct double loop over capacities and multiplicities."""
    out = [INF] * len(prev)
    for w0 in range(len(prev)):
        for j in range(min(u, w0 // w) + 1):
            p = prev[w0 - j * w]
            if p != INF:
                v = p + obj(j)
                if v < out[w0]:
                    out[w0] = v
    return out


__all__ = [
    "Linear", "PiecewiseLinear", "Polynomial", "Convex", "Concave", "ObjectiveSpec",
    "KnapsackInstance", "KnapsackSolution", "knapsack_solve", "knapsack_bruteforce",
    "dp_layer", "dp_table", "layer_naive", "negate", "MIN", "MAX",
]
